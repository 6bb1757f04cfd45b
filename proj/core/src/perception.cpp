#include "grm/perception.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace grm {

namespace {

constexpr double kTieTolerance = 1e-12;

void sort_unique(std::vector<AgentId>& ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

// Largest magnitude over the percepts and every source reaching it within tolerance.
template <typename Pred>
std::pair<double, std::vector<AgentId>> arg_max(std::span<const PointPercept> percepts,
                                                Pred magnitude_of) {
    double best = 0.0;
    for (const auto& p : percepts) best = std::max(best, magnitude_of(p));
    std::vector<AgentId> ids;
    if (best > 0.0) {
        const double floor = best * (1.0 - kTieTolerance);
        for (const auto& p : percepts) {
            if (magnitude_of(p) >= floor) ids.push_back(p.source);
        }
        sort_unique(ids);
    }
    return {best, std::move(ids)};
}

// Minimum-image displacement specialised for arguments that are already
// within one arena length of each other; falls back to the general form.
inline Vec2 fast_min_image(Vec2 a, Vec2 b, double R) {
    Vec2 d = b - a;
    const double h = 0.5 * R;
    if (d.x >= h) d.x -= R; else if (d.x < -h) d.x += R;
    if (d.y >= h) d.y -= R; else if (d.y < -h) d.y += R;
    if (d.x >= h || d.x < -h || d.y >= h || d.y < -h) return min_image_delta(a, b, R);
    return d;
}

}  // namespace

EyePair eye_fields(double cva, double theta_i, double d_eye) {
    EyePair eyes;
    eyes.left = {EyeSide::left, {-0.5 * d_eye, kEyeForwardOffset}, -cva, theta_i};
    eyes.right = {EyeSide::right, {0.5 * d_eye, kEyeForwardOffset}, -theta_i, cva};
    return eyes;
}

const std::array<Vec2, kBodyPoints>& body_outline() {
    static const std::array<Vec2, kBodyPoints> outline = {{
        {0.0, 1.0},
        {0.25, 0.85}, {-0.25, 0.85},
        {0.4, 0.5}, {-0.4, 0.5},
        {0.45, 0.0}, {-0.45, 0.0},
        {0.4, -0.5}, {-0.4, -0.5},
        {0.25, -0.85}, {-0.25, -0.85},
        {0.0, -1.0},
        {0.0, 0.6}, {0.0, -0.6},
    }};
    return outline;
}

Vec2 body_to_world(const AgentState& agent, Vec2 body_point) {
    const Vec2 fwd = agent.direction();
    const Vec2 right{fwd.y, -fwd.x};
    return agent.pos + right * body_point.x + fwd * body_point.y;
}

std::array<Vec2, kBodyPoints> body_points_world(const AgentState& agent, double l) {
    const double scale = 0.5 * l;
    std::array<Vec2, kBodyPoints> pts;
    const auto& outline = body_outline();
    for (std::size_t j = 0; j < kBodyPoints; ++j) pts[j] = body_to_world(agent, outline[j] * scale);
    return pts;
}

void project_points(const AgentState& observer, std::span<const AgentState> others,
                    const SimParams& params, std::vector<PointPercept>& out,
                    ProjectionDiagnostics* diag) {
    out.clear();
    const EyePair eyes = eye_fields(params.cva, params.theta_i, params.d_eye);
    const double R = params.R;
    const double eye_scale = 0.5 * params.l;
    const EyeConfig* eye_list[2] = {&eyes.left, &eyes.right};
    Vec2 eye_pos[2];
    for (int e = 0; e < 2; ++e) {
        Vec2 off = eye_list[e]->offset;
        off.y *= eye_scale;
        eye_pos[e] = wrap_torus(body_to_world(observer, off), R);
    }
    const Vec2 observer_vel = observer.velocity();
    const double heading = observer.heading;

    for (const AgentState& other : others) {
        if (other.id == observer.id) continue;
        const Vec2 rel_vel = other.velocity() - observer_vel;
        const auto pts = body_points_world(other, params.l);
        for (std::size_t j = 0; j < kBodyPoints; ++j) {
            const Vec2 p = wrap_torus(pts[j], R);
            const Vec2 from_body = fast_min_image(observer.pos, p, R);
            const double body_phi =
                (from_body.x == 0.0 && from_body.y == 0.0) ? 0.0 : azimuth(from_body, heading).value;
            for (int e = 0; e < 2; ++e) {
                const Vec2 rel = fast_min_image(eye_pos[e], p, R);
                if (rel.x == 0.0 && rel.y == 0.0) {
                    if (diag) ++diag->skipped_coincident;
                    continue;
                }
                const double phi = azimuth(rel, heading).value;
                if (!eye_list[e]->sees(phi)) continue;
                out.push_back({other.id, j, eye_list[e]->side, {phi},
                               angular_velocity(rel, rel_vel), {body_phi}});
            }
        }
    }
}

std::vector<PointPercept> project_points(const AgentState& observer,
                                         std::span<const AgentState> others,
                                         const SimParams& params, ProjectionDiagnostics* diag) {
    std::vector<PointPercept> out;
    project_points(observer, others, params, out, diag);
    return out;
}

GrmDetection detect_grm(std::span<const PointPercept> percepts) {
    auto [m, ids] = arg_max(percepts, [](const PointPercept& p) {
        const double w = p.phi_dot.value;
        if (p.eye == EyeSide::right && w > 0.0) return w;
        if (p.eye == EyeSide::left && w < 0.0) return -w;
        return 0.0;
    });
    return {m, std::move(ids)};
}

LoomingDetection looming_strength(std::span<const PointPercept> percepts) {
    auto [left, left_ids] = arg_max(percepts, [](const PointPercept& p) {
        return (p.body_phi.value > 0.0 && p.phi_dot.value > 0.0) ? p.phi_dot.value : 0.0;
    });
    auto [right, right_ids] = arg_max(percepts, [](const PointPercept& p) {
        return (p.body_phi.value < 0.0 && p.phi_dot.value < 0.0) ? -p.phi_dot.value : 0.0;
    });
    LoomingDetection out;
    if (left > 0.0 && right > 0.0) {
        out.omega_loom = std::min(left, right);
        out.causes = std::move(left_ids);
        out.causes.insert(out.causes.end(), right_ids.begin(), right_ids.end());
        sort_unique(out.causes);
    }
    return out;
}

PerceptSummary summarize(std::span<const PointPercept> percepts) {
    GrmDetection g = detect_grm(percepts);
    LoomingDetection l = looming_strength(percepts);
    return {g.max_grm, std::move(g.causes), l.omega_loom, std::move(l.causes)};
}

}  // namespace grm
