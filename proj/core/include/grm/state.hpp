#pragma once
// Simulation parameters, per-agent state and deterministic random streams.

#include <cstdint>
#include <random>
#include <vector>

#include "grm/geometry.hpp"

namespace grm {

using AgentId = std::uint32_t;

/// Fly-model constants. Angles are radians; degrees only appear in config files.
struct SimParams {
    double dt = 0.005;               ///< s
    double R = 50.0;                 ///< arena edge, mm (torus)
    int N = 10;                      ///< number of agents
    double l = 2.0;                  ///< body length, mm
    double d_eye = 0.55;             ///< inter-eye distance, mm
    double v_min = 10.0;             ///< mm/s
    double v_max = 30.0;             ///< mm/s
    double P01 = 0.008;              ///< stop-to-walk probability per step
    double T_loom = 0.0;             ///< looming stop threshold, rad/s
    double T_grm = 0.0;              ///< GRM stop threshold, rad/s
    double cva = deg_to_rad(30.0);
    double theta_i = deg_to_rad(120.0);
    double delta_sigma = deg_to_rad(30.0);
    double lambda_sigma = 0.992;
    int n_points = 14;
    long horizon_steps = 10000;
    double collision_distance = 1.2;     ///< mm, center to center
    double extrapolation_horizon = 2.0;  ///< s, straight-line collision prediction
    int fn_per_collision = 2;            ///< FN tally per collision (1 or 2)

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

struct AgentState {
    AgentId id = 0;
    Vec2 pos;              ///< wrapped into [0, R)^2
    double heading = 0.0;  ///< radians, counter-clockwise from +x
    double speed = 0.0;    ///< preferred walking speed, constant for life
    bool moving = true;    ///< z(t)
    bool moving_prev = true;  ///< z(t-1)
    double sigma = 0.0;    ///< reorientation standard deviation, rad

    Vec2 direction() const { return unit_from_heading(heading); }
    /// Current velocity: zero while stopped.
    Vec2 velocity() const { return moving ? direction() * speed : Vec2{}; }
};

/// SplitMix64 finalizer; the 64-bit mixing function used for all seed derivation.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// seed = mix64(mix64(mix64(base) ^ a) ^ b)
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(mix64(base) ^ a) ^ b);
}

/**
 * Seeded random stream. The engine is std::mt19937_64, whose output sequence
 * is fixed by the standard; the conversions to uniform and normal variates
 * are done here rather than through the library distributions, whose
 * algorithms are implementation-defined.
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() {
        double u;
        do { u = uniform(); } while (u == 0.0);
        return u;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; consumes two uniforms per call.
    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// One independent stream per agent, derived from the trial seed.
std::vector<RngStream> make_agent_streams(std::uint64_t trial_seed, int n_agents);

}  // namespace grm
