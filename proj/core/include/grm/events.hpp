#pragma once
// Event records emitted by the engine and consumed by analysis.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "grm/geometry.hpp"
#include "grm/state.hpp"

namespace grm {

enum class StopChannel { grm, loom, both };

/// Position and velocity of one agent at the instant a stop was decided.
struct FrozenKinematics {
    AgentId id = 0;
    Vec2 pos;
    Vec2 vel;
};

struct StopRecord {
    long t = 0;
    AgentId agent = 0;
    std::vector<AgentId> cause_agents;  ///< sorted, non-empty
    StopChannel channel = StopChannel::grm;
    std::vector<FrozenKinematics> frozen;  ///< every agent, in id order

    const FrozenKinematics* frozen_of(AgentId id) const {
        auto it = std::find_if(frozen.begin(), frozen.end(),
                               [id](const FrozenKinematics& f) { return f.id == id; });
        return it == frozen.end() ? nullptr : &*it;
    }
};

using AgentPair = std::pair<AgentId, AgentId>;  ///< first < second

inline AgentPair make_pair_ordered(AgentId a, AgentId b) {
    return a < b ? AgentPair{a, b} : AgentPair{b, a};
}

struct CollisionRecord {
    long t = 0;
    AgentPair pair;
};

/// A pair's passage through perception range (centre distance < R/2).
struct EncounterRecord {
    AgentPair pair;
    long t_start = 0;
    long t_end = 0;
    bool stopped = false;   ///< a stop of one member was attributed to the other
    bool collided = false;
};

struct AgentSnapshot {
    Vec2 pos;
    double heading = 0.0;
    bool moving = true;
};

/// Agent states at the start of every step, indexed [step][agent id].
struct TrajectoryLog {
    std::vector<std::vector<AgentSnapshot>> steps;
};

}  // namespace grm
