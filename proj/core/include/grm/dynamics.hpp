#pragma once
// Per-agent walking/stopping state machine.

#include <stdexcept>
#include <vector>

#include "grm/perception.hpp"
#include "grm/state.hpp"

namespace grm {

class InitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Maximum number of rejected placements before init_agents gives up.
inline constexpr int kMaxPlacementRejections = 10000;

/**
 * Uniform positions (rejection-sampled so that all pairwise centre distances
 * exceed collision_distance), speeds on [v_min, v_max], headings on [0, 2pi).
 * Agent i draws only from streams[i].
 */
std::vector<AgentState> init_agents(const SimParams& params, std::vector<RngStream>& streams);

/// Next value of z. Consumes one uniform from `rng` only when the agent is stopped.
bool control_step(const AgentState& state, const PerceptSummary& summary,
                  const SimParams& params, RngStream& rng);

/// sigma(t+1) = lambda * sigma(t) + delta * [agent stopped this step]
double update_sigma(double sigma, bool stopped_now, const SimParams& params);

struct Reorientation {
    double heading = 0.0;
    double sigma = 0.0;
};

/// Gaussian heading draw with the pre-stop sigma, then the sigma update for a stop step.
Reorientation reorient_on_stop(const AgentState& state, RngStream& rng, const SimParams& params);

/// Position after one step at the current z.
Vec2 advance(const AgentState& state, const SimParams& params);

}  // namespace grm
