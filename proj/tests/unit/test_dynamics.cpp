#include <gtest/gtest.h>

#include <cmath>

#include "grm/dynamics.hpp"
#include "grm/perception.hpp"

using namespace grm;

namespace {

AgentState walker(double heading = 0.0, double speed = 20.0, bool moving = true) {
    AgentState a;
    a.pos = {25, 25};
    a.heading = heading;
    a.speed = speed;
    a.moving = moving;
    return a;
}

PerceptSummary summary(double grm, double loom) {
    PerceptSummary s;
    s.max_grm = grm;
    s.omega_loom = loom;
    return s;
}

}  // namespace

TEST(Params, DefaultsAreValid) {
    SimParams p;
    EXPECT_NO_THROW(p.validate());
    EXPECT_DOUBLE_EQ(p.dt, 0.005);
    EXPECT_DOUBLE_EQ(p.R, 50.0);
    EXPECT_EQ(p.N, 10);
    EXPECT_DOUBLE_EQ(p.P01, 0.008);
    EXPECT_DOUBLE_EQ(p.lambda_sigma, 0.992);
    EXPECT_NEAR(rad_to_deg(p.cva), 30.0, 1e-12);
    EXPECT_NEAR(rad_to_deg(p.theta_i), 120.0, 1e-12);
    EXPECT_NEAR(rad_to_deg(p.delta_sigma), 30.0, 1e-12);
}

TEST(Params, RejectsInvalid) {
    SimParams p;
    p.v_min = 40;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.P01 = 1.5;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.n_points = 12;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.T_grm = -1;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Rng, SeedsReproduceSequences) {
    RngStream a(42), b(42), c(43);
    bool differs = false;
    for (int k = 0; k < 100; ++k) {
        const double x = a.uniform();
        ASSERT_EQ(x, b.uniform());
        ASSERT_GE(x, 0.0);
        ASSERT_LT(x, 1.0);
        differs |= x != c.uniform();
    }
    EXPECT_TRUE(differs);
}

TEST(Rng, NormalMomentsAreStandard) {
    RngStream r(9);
    double s = 0, s2 = 0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
        const double z = r.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Rng, DerivedSeedsAreDistinct) {
    EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 0, 1));
    EXPECT_NE(derive_seed(1, 0, 1), derive_seed(1, 1, 0));
    EXPECT_NE(derive_seed(1, 0, 0), derive_seed(2, 0, 0));
    EXPECT_EQ(derive_seed(7, 3, 4), derive_seed(7, 3, 4));
}

TEST(Init, TableDefaultsPlaceTenSeparatedMovingAgents) {
    SimParams p;
    auto streams = make_agent_streams(5, p.N);
    const auto agents = init_agents(p, streams);
    ASSERT_EQ(agents.size(), 10u);
    for (std::size_t i = 0; i < agents.size(); ++i) {
        EXPECT_EQ(agents[i].id, i);
        EXPECT_TRUE(agents[i].moving);
        EXPECT_GE(agents[i].speed, p.v_min);
        EXPECT_LE(agents[i].speed, p.v_max);
        EXPECT_EQ(agents[i].sigma, 0.0);
        for (std::size_t j = 0; j < i; ++j) {
            EXPECT_GT(min_image_delta(agents[i].pos, agents[j].pos, p.R).norm(), p.collision_distance);
        }
    }
}

TEST(Init, SingleAgent) {
    SimParams p;
    p.N = 1;
    auto streams = make_agent_streams(5, 1);
    EXPECT_EQ(init_agents(p, streams).size(), 1u);
}

TEST(Init, SameSeedSameState) {
    SimParams p;
    auto s1 = make_agent_streams(77, p.N);
    auto s2 = make_agent_streams(77, p.N);
    const auto a = init_agents(p, s1);
    const auto b = init_agents(p, s2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].pos, b[i].pos);
        EXPECT_EQ(a[i].heading, b[i].heading);
        EXPECT_EQ(a[i].speed, b[i].speed);
    }
}

TEST(Init, AgentDrawsDependOnlyOnOwnStream) {
    // Agent 0 never rejects a position, so its state is the same whatever N is.
    SimParams p;
    auto a = make_agent_streams(77, 10);
    auto b = make_agent_streams(77, 3);
    p.N = 10;
    const auto ten = init_agents(p, a);
    p.N = 3;
    const auto three = init_agents(p, b);
    EXPECT_EQ(ten[0].pos, three[0].pos);
    EXPECT_EQ(ten[0].heading, three[0].heading);
}

TEST(Init, OvercrowdedArenaFails) {
    SimParams p;
    p.R = 5;
    p.N = 200;
    auto streams = make_agent_streams(1, p.N);
    EXPECT_THROW(init_agents(p, streams), InitError);
}

TEST(Control, MovingAgentStopsAboveThreshold) {
    SimParams p;
    p.T_grm = 6;
    p.T_loom = 32;
    RngStream rng(1);
    EXPECT_FALSE(control_step(walker(), summary(7, 0), p, rng));
    EXPECT_TRUE(control_step(walker(), summary(6, 0), p, rng));  // strict inequality
    EXPECT_FALSE(control_step(walker(), summary(0, 33), p, rng));
    EXPECT_TRUE(control_step(walker(), summary(5.9, 31.9), p, rng));
}

TEST(Control, MovingAgentConsumesNoDraws) {
    SimParams p;
    RngStream a(3), b(3);
    control_step(walker(), summary(100, 100), p, a);
    EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(Control, StoppedAgentRestartsOnCoin) {
    SimParams p;
    p.P01 = 0.008;
    p.T_grm = 6;
    p.T_loom = 6;
    int restarts = 0;
    for (std::uint64_t seed = 0; seed < 5000; ++seed) {
        RngStream rng(seed), probe(seed);
        const double u = probe.uniform_open();
        const bool z = control_step(walker(0, 20, false), summary(0, 0), p, rng);
        ASSERT_EQ(z, u < p.P01) << "seed " << seed;
        restarts += z;
    }
    EXPECT_GT(restarts, 10);
    EXPECT_LT(restarts, 80);
}

TEST(Control, StoppedAgentStaysWhileStimulated) {
    SimParams p;
    p.P01 = 1.0;
    p.T_grm = 4;
    p.T_loom = 4;
    RngStream rng(1);
    EXPECT_TRUE(control_step(walker(0, 20, false), summary(3.9, 3.9), p, rng));
    EXPECT_FALSE(control_step(walker(0, 20, false), summary(4.0, 0), p, rng));
    EXPECT_FALSE(control_step(walker(0, 20, false), summary(0, 4.0), p, rng));
    p.P01 = 0.0;
    EXPECT_FALSE(control_step(walker(0, 20, false), summary(0, 0), p, rng));
}

TEST(Control, ZeroThresholdsNeverRestart) {
    // Restarting needs stimuli strictly below both thresholds.
    SimParams p;
    p.P01 = 1.0;
    p.T_grm = 0;
    p.T_loom = 0;
    RngStream rng(1);
    EXPECT_FALSE(control_step(walker(0, 20, false), summary(0, 0), p, rng));
}

TEST(Control, SentinelThresholdNeverTriggersOnModestStimuli) {
    SimParams p;
    p.T_grm = 32;
    p.T_loom = 32;
    RngStream rng(1);
    for (double w = 0; w <= 32; w += 0.5) EXPECT_TRUE(control_step(walker(), summary(w, w), p, rng));
}

TEST(Sigma, FirstStopKeepsHeadingAndSetsDelta) {
    SimParams p;
    AgentState a = walker(1.25);
    RngStream rng(8);
    const auto r = reorient_on_stop(a, rng, p);
    EXPECT_DOUBLE_EQ(r.heading, 1.25);
    EXPECT_DOUBLE_EQ(r.sigma, p.delta_sigma);
}

TEST(Sigma, TwoStopsFollowRecurrence) {
    SimParams p;
    double sigma = 0;
    sigma = update_sigma(sigma, true, p);
    for (int k = 0; k < 10; ++k) sigma = update_sigma(sigma, false, p);
    sigma = update_sigma(sigma, true, p);
    const double oracle = p.delta_sigma * std::pow(p.lambda_sigma, 11) + p.delta_sigma;
    EXPECT_NEAR(sigma, oracle, 1e-12);
    EXPECT_NEAR(rad_to_deg(sigma), 30 * std::pow(0.992, 11) + 30, 1e-9);
}

TEST(Sigma, BoundedAndDecaying) {
    SimParams p;
    RngStream coin(4);
    double sigma = 0;
    const double bound = p.delta_sigma / (1 - p.lambda_sigma);
    for (int k = 0; k < 100000; ++k) {
        const double next = update_sigma(sigma, coin.uniform() < 0.2, p);
        ASSERT_GE(next, 0.0);
        ASSERT_LE(next, bound + 1e-9);
        sigma = next;
    }
    for (int k = 0; k < 100; ++k) {
        const double next = update_sigma(sigma, false, p);
        ASSERT_LT(next, sigma);
        sigma = next;
    }
}

TEST(Sigma, ReorientationDrawUsesPreStopSigma) {
    SimParams p;
    AgentState a = walker(1.0);
    a.sigma = 0.4;
    RngStream rng(12), probe(12);
    const double z = probe.normal();
    const auto r = reorient_on_stop(a, rng, p);
    EXPECT_NEAR(wrap_angle(r.heading - (1.0 + 0.4 * z)), 0.0, 1e-12);
    EXPECT_NEAR(r.sigma, p.lambda_sigma * 0.4 + p.delta_sigma, 1e-15);
}

TEST(Advance, Examples) {
    SimParams p;
    EXPECT_EQ(advance(walker(0.3, 20, false), p), (Vec2{25, 25}));
    const Vec2 step = advance(walker(0.3, 20), p) - Vec2{25, 25};
    EXPECT_NEAR(step.norm(), 0.1, 1e-12);
    AgentState edge = walker(0.0, 20);
    edge.pos = {49.95, 10};
    const Vec2 wrapped = advance(edge, p);
    EXPECT_NEAR(wrapped.x, 0.05, 1e-9);
    EXPECT_DOUBLE_EQ(wrapped.y, 10);
}
