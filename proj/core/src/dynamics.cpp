#include "grm/dynamics.hpp"

#include <string>

namespace grm {

void SimParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("SimParams: ") + what);
    };
    require(dt > 0.0, "dt must be positive");
    require(R > 0.0, "R must be positive");
    require(N >= 1, "N must be at least 1");
    require(l > 0.0, "l must be positive");
    require(d_eye >= 0.0, "d_eye must be non-negative");
    require(v_min > 0.0 && v_min <= v_max, "need 0 < v_min <= v_max");
    require(P01 >= 0.0 && P01 <= 1.0, "P01 must lie in [0, 1]");
    require(T_loom >= 0.0 && T_grm >= 0.0, "thresholds must be non-negative");
    require(cva >= 0.0 && cva <= kPi / 2, "CVA must lie in [0, 90] degrees");
    require(theta_i > 0.0 && theta_i <= kPi, "theta_i must lie in (0, 180] degrees");
    require(delta_sigma >= 0.0, "delta_sigma must be non-negative");
    require(lambda_sigma >= 0.0 && lambda_sigma <= 1.0, "lambda_sigma must lie in [0, 1]");
    require(n_points == 14, "n_points must be 14");
    require(horizon_steps >= 0, "horizon_steps must be non-negative");
    require(collision_distance > 0.0, "collision_distance must be positive");
    require(extrapolation_horizon > 0.0, "extrapolation_horizon must be positive");
    require(fn_per_collision == 1 || fn_per_collision == 2, "fn_per_collision must be 1 or 2");
}

std::vector<RngStream> make_agent_streams(std::uint64_t trial_seed, int n_agents) {
    std::vector<RngStream> streams;
    streams.reserve(static_cast<std::size_t>(n_agents));
    for (int i = 0; i < n_agents; ++i) {
        streams.emplace_back(derive_seed(trial_seed, 0x5EED'A6E7ull, static_cast<std::uint64_t>(i)));
    }
    return streams;
}

std::vector<AgentState> init_agents(const SimParams& params, std::vector<RngStream>& streams) {
    params.validate();
    if (streams.size() < static_cast<std::size_t>(params.N)) {
        throw std::invalid_argument("init_agents: fewer random streams than agents");
    }
    std::vector<AgentState> agents;
    agents.reserve(static_cast<std::size_t>(params.N));
    int rejections = 0;
    for (int i = 0; i < params.N; ++i) {
        RngStream& rng = streams[static_cast<std::size_t>(i)];
        AgentState a;
        a.id = static_cast<AgentId>(i);
        a.speed = rng.uniform(params.v_min, params.v_max);
        a.heading = rng.uniform(0.0, kTwoPi);
        for (;;) {
            a.pos = wrap_torus({rng.uniform(0.0, params.R), rng.uniform(0.0, params.R)}, params.R);
            bool clear = true;
            for (const auto& b : agents) {
                if (min_image_delta(a.pos, b.pos, params.R).norm() <= params.collision_distance) {
                    clear = false;
                    break;
                }
            }
            if (clear) break;
            if (++rejections >= kMaxPlacementRejections) {
                throw InitError("init_agents: could not place " + std::to_string(params.N) +
                                " agents without overlap after " +
                                std::to_string(kMaxPlacementRejections) + " rejections");
            }
        }
        a.moving = true;
        a.moving_prev = true;
        a.sigma = 0.0;
        agents.push_back(a);
    }
    return agents;
}

bool control_step(const AgentState& state, const PerceptSummary& summary,
                  const SimParams& params, RngStream& rng) {
    if (state.moving) {
        return !(summary.max_grm > params.T_grm || summary.omega_loom > params.T_loom);
    }
    const double u = rng.uniform_open();
    return summary.max_grm < params.T_grm && summary.omega_loom < params.T_loom && u < params.P01;
}

double update_sigma(double sigma, bool stopped_now, const SimParams& params) {
    return params.lambda_sigma * sigma + (stopped_now ? params.delta_sigma : 0.0);
}

Reorientation reorient_on_stop(const AgentState& state, RngStream& rng, const SimParams& params) {
    const double z = rng.normal();
    return {wrap_angle_positive(state.heading + state.sigma * z),
            update_sigma(state.sigma, true, params)};
}

Vec2 advance(const AgentState& state, const SimParams& params) {
    if (!state.moving) return state.pos;
    return wrap_torus(state.pos + state.direction() * (state.speed * params.dt), params.R);
}

}  // namespace grm
