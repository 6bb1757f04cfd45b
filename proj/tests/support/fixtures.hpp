#pragma once
// Deterministic scenario builders shared by unit and acceptance tests.

#include <cstdint>
#include <optional>
#include <vector>

#include "grm/analysis.hpp"
#include "grm/engine.hpp"

namespace grm::testing {

struct AgentSpec {
    Vec2 pos;
    double heading = 0.0;
    double speed = 10.0;
    bool moving = true;
};

/// Agents get ids in the order given; streams derive from `seed`.
Simulation make_simulation(const SimParams& params, const std::vector<AgentSpec>& specs,
                           std::uint64_t seed = 7);

/// Baseline for hand-built scenes: GRM only, no restarts.
SimParams fixture_params(double cva_deg, double t_grm, double t_loom = 32.0);

struct FixtureOutcome {
    std::optional<StopRecord> first_stop;  ///< first stop of the observer (agent 0)
    std::optional<StopClass> first_class;
    std::vector<StopClass> all_classes;    ///< every stop in the run
    bool observer_collided = false;
    long steps_run = 0;
};

/// Runs until the observer (agent 0) stops or `max_steps` elapse.
FixtureOutcome run_until_observer_stops(Simulation& sim, long max_steps);

// False-alarm scenes. Agent 0 is the observer expected to stop, agent 1 the cause.

/// A faster agent overtakes a slower one 3 mm to its left.
Simulation fixture_overtake();
/// The cause crosses the junction well before the observer gets there.
Simulation fixture_junction_crossed_early();
/// A faster observer and a slower agent drifting away from each other.
Simulation fixture_moving_away();
/// Perpendicular crossing, observer arrives second (d < 0) and would collide.
Simulation fixture_perpendicular_collision_course();

struct WallRun {
    bool stopped = false;
    bool collided = false;
    double min_distance_before_stop = 0.0;
    long stop_step = -1;
};

/// One agent walks towards a ring of stationary agents spaced 2 mm apart.
WallRun run_wall_approach(std::uint64_t seed, double cva_deg, double t_grm);

}  // namespace grm::testing
