#pragma once
/**
 * @file engine.hpp
 * @brief Synchronous world stepping and full-trial execution.
 *
 * One step:
 *   1. freeze the time-t snapshot;
 *   2. every agent perceives the snapshot and runs its control rule;
 *   3. agents that stopped this step reorient;
 *   4. all agents advance at their new z;
 *   5. sigma decays for everyone else;
 *   6. collisions are detected and debounced.
 * Agents are processed in id order; each consumes only its own random stream.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "grm/analysis.hpp"
#include "grm/events.hpp"
#include "grm/perception.hpp"
#include "grm/state.hpp"

namespace grm {

struct WorldState {
    long time_step = 0;
    std::vector<AgentState> agents;  ///< agents[i].id == i
    SimParams params;
};

struct StepEvents {
    std::vector<StopRecord> stops;
    std::vector<CollisionRecord> collisions;
};

/// Unordered pairs whose min-image centre distance is below collision_distance.
std::vector<AgentPair> detect_collisions(const std::vector<AgentState>& agents,
                                         const SimParams& params);

class Simulation {
public:
    /// Random initial placement from the trial seed.
    Simulation(const SimParams& params, std::uint64_t seed);

    /// Explicit initial state (fixtures). Agents must carry ids 0..n-1 in order.
    Simulation(const SimParams& params, std::vector<AgentState> agents,
               std::vector<RngStream> streams);

    StepEvents step();
    void run(long steps);

    void enable_trajectory_log() { log_.emplace(); }

    const WorldState& world() const { return world_; }
    const std::vector<StopRecord>& stops() const { return stops_; }
    const std::vector<CollisionRecord>& collisions() const { return collisions_; }
    /// Closed encounters so far; finish() closes none, open ones are dropped.
    const std::vector<EncounterRecord>& encounters() const { return encounters_; }
    const std::optional<TrajectoryLog>& trajectory() const { return log_; }
    const PerceptSummary& last_summary(AgentId id) const { return summaries_.at(id); }

    /// Moves accumulated logs into a classified TrialResult.
    TrialResult finish(std::uint64_t seed) &&;

private:
    void check_ids() const;
    void track_encounters(const StepEvents& events);

    WorldState world_;
    std::vector<RngStream> streams_;
    std::set<AgentPair> in_contact_;
    std::map<AgentPair, EncounterRecord> open_encounters_;
    std::vector<StopRecord> stops_;
    std::vector<CollisionRecord> collisions_;
    std::vector<EncounterRecord> encounters_;
    std::vector<PerceptSummary> summaries_;
    std::vector<PointPercept> scratch_;
    std::optional<TrajectoryLog> log_;
    bool encounters_started_ = false;
};

struct RunOptions {
    bool log_trajectories = false;
};

/// Runs params.horizon_steps steps; bitwise deterministic in (params, seed).
TrialResult run_trial(const SimParams& params, std::uint64_t seed, RunOptions options = {});

}  // namespace grm
