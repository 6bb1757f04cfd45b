#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grm::testing {

Simulation make_simulation(const SimParams& base, const std::vector<AgentSpec>& specs,
                           std::uint64_t seed) {
    SimParams params = base;
    params.N = static_cast<int>(specs.size());
    std::vector<AgentState> agents;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        AgentState a;
        a.id = static_cast<AgentId>(i);
        a.pos = specs[i].pos;
        a.heading = specs[i].heading;
        a.speed = specs[i].speed;
        a.moving = specs[i].moving;
        a.moving_prev = specs[i].moving;
        agents.push_back(a);
    }
    return Simulation(params, std::move(agents), make_agent_streams(seed, params.N));
}

SimParams fixture_params(double cva_deg, double t_grm, double t_loom) {
    SimParams p;
    p.cva = deg_to_rad(cva_deg);
    p.T_grm = t_grm;
    p.T_loom = t_loom;
    p.P01 = 0.0;
    return p;
}

FixtureOutcome run_until_observer_stops(Simulation& sim, long max_steps) {
    FixtureOutcome out;
    for (long k = 0; k < max_steps && !out.first_stop; ++k) {
        const StepEvents ev = sim.step();
        ++out.steps_run;
        for (const auto& c : ev.collisions) {
            if (c.pair.first == 0 || c.pair.second == 0) out.observer_collided = true;
        }
        for (const auto& s : ev.stops) {
            if (s.agent == 0 && !out.first_stop) {
                out.first_stop = s;
                out.first_class = classify_stop(s, sim.world().params);
            }
        }
    }
    for (const auto& s : sim.stops()) out.all_classes.push_back(classify_stop(s, sim.world().params));
    return out;
}

Simulation fixture_overtake() {
    return make_simulation(fixture_params(30.0, 2.0), {
        {{25.0, 25.0}, kPi / 2, 10.0},
        {{22.0, 23.0}, kPi / 2, 30.0},
    });
}

Simulation fixture_junction_crossed_early() {
    return make_simulation(fixture_params(30.0, 0.5), {
        {{25.0, 10.0}, kPi / 2, 10.0},
        {{23.0, 25.0}, 0.0, 20.0},
    });
}

Simulation fixture_moving_away() {
    const double phi = deg_to_rad(75.0);
    const Vec2 observer{25.0, 25.0};
    // Cause sits 3 mm away at azimuth 75 deg (left), walking straight left.
    const Vec2 cause = observer + Vec2{std::cos(kPi / 2 + phi), std::sin(kPi / 2 + phi)} * 3.0;
    return make_simulation(fixture_params(80.0, 2.0), {
        {observer, kPi / 2, 30.0},
        {cause, kPi, 10.0},
    });
}

Simulation fixture_perpendicular_collision_course() {
    // Both at 10 mm/s; the cause reaches the junction at t = 1.0 s and the
    // observer at t = 1.05 s, so d = -0.5 mm and the closest approach is ~0.35 mm.
    return make_simulation(fixture_params(30.0, 0.1), {
        {{25.0, 25.0 - 10.5}, kPi / 2, 10.0},
        {{15.0, 25.0}, 0.0, 10.0},
    });
}

WallRun run_wall_approach(std::uint64_t seed, double cva_deg, double t_grm) {
    RngStream rng(derive_seed(seed, 0xA11, 0));
    const double alpha = rng.uniform(deg_to_rad(5.0), deg_to_rad(85.0));
    const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double v = rng.uniform(10.0, 30.0);
    const double gap = rng.uniform(8.0, 20.0);
    const double x0 = rng.uniform(0.0, 50.0);
    constexpr double kWallY = 40.0;

    std::vector<AgentSpec> specs;
    specs.push_back({{x0, kWallY - gap}, kPi / 2 - side * alpha, v, true});
    for (int k = 0; k < 25; ++k) specs.push_back({{1.0 + 2.0 * k, kWallY}, 0.0, 10.0, false});

    Simulation sim = make_simulation(fixture_params(cva_deg, t_grm), specs, seed);
    const SimParams& p = sim.world().params;
    WallRun out;
    out.min_distance_before_stop = std::numeric_limits<double>::infinity();
    auto nearest = [&] {
        const auto& agents = sim.world().agents;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < agents.size(); ++i) {
            best = std::min(best, min_image_delta(agents[0].pos, agents[i].pos, p.R).norm());
        }
        return best;
    };
    out.min_distance_before_stop = nearest();
    for (long k = 0; k < 40000; ++k) {
        const StepEvents ev = sim.step();
        for (const auto& c : ev.collisions) {
            if (c.pair.first == 0) out.collided = true;
        }
        out.min_distance_before_stop = std::min(out.min_distance_before_stop, nearest());
        if (!sim.world().agents[0].moving) {
            out.stopped = true;
            out.stop_step = k;
            break;
        }
        if (out.collided) break;
    }
    return out;
}

}  // namespace grm::testing
