#include "grm/geometry.hpp"

#include <string>

namespace grm {

namespace {

// Reduce `value` into [lo, lo + period). Rounding can land exactly on the
// upper bound, so the result is clamped back into the half-open interval.
double wrap_into(double value, double lo, double period) {
    double r = value - period * std::floor((value - lo) / period);
    if (r >= lo + period) r -= period;
    if (r < lo) r += period;
    if (r >= lo + period) r = lo;
    return r;
}

}  // namespace

double wrap_angle(double angle) { return wrap_into(angle, -kPi, kTwoPi); }

double wrap_angle_positive(double angle) { return wrap_into(angle, 0.0, kTwoPi); }

Vec2 wrap_torus(Vec2 p, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("wrap_torus: R must be positive");
    return {wrap_into(p.x, 0.0, R), wrap_into(p.y, 0.0, R)};
}

Vec2 min_image_delta(Vec2 a, Vec2 b, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("min_image_delta: R must be positive");
    const Vec2 d = b - a;
    return {wrap_into(d.x, -R / 2, R), wrap_into(d.y, -R / 2, R)};
}

Azimuth azimuth(Vec2 rel_pos, double heading) {
    if (rel_pos.x == 0.0 && rel_pos.y == 0.0) {
        throw std::invalid_argument("azimuth: relative position is the zero vector");
    }
    return {wrap_angle(std::atan2(rel_pos.y, rel_pos.x) - heading)};
}

AngularVelocity angular_velocity(Vec2 rel_pos, Vec2 rel_vel) {
    const double n2 = rel_pos.norm2();
    if (n2 == 0.0) {
        throw std::invalid_argument("angular_velocity: relative position is the zero vector");
    }
    return {rel_vel.perp().dot(rel_pos) / n2};
}

bool is_regressive(Azimuth phi, AngularVelocity phi_dot) {
    return phi_dot.value * phi.value <= 0.0;
}

bool is_grm(Azimuth phi, AngularVelocity phi_dot, double cva) {
    const double p = phi.value;
    if (phi_dot.value > 0.0) return p >= -kPi && p <= cva;
    if (phi_dot.value < 0.0) return p >= -cva && p <= kPi;
    return false;
}

// ---- intersection scenario -------------------------------------------------

void IntersectionScenario::validate() const {
    if (!(v1 > 0.0) || !(v2 > 0.0)) {
        throw std::invalid_argument("IntersectionScenario: speeds must be positive");
    }
    if (std::sin(psi) == 0.0) {
        throw std::invalid_argument("IntersectionScenario: trajectories are parallel");
    }
}

Vec2 scenario_position_f1(const IntersectionScenario& s) { return {0.0, s.d + s.epsilon}; }

Vec2 scenario_position_f2(const IntersectionScenario& s) {
    const double k = s.epsilon * s.v2 / s.v1;
    return {-k * std::sin(s.psi), k * std::cos(s.psi)};
}

Vec2 scenario_velocity_f1(const IntersectionScenario& s) { return {0.0, s.v1}; }

Vec2 scenario_velocity_f2(const IntersectionScenario& s) {
    return {-s.v2 * std::sin(s.psi), s.v2 * std::cos(s.psi)};
}

ObserverFrame frame_of_f1(const IntersectionScenario& s) {
    return {scenario_position_f2(s) - scenario_position_f1(s),
            scenario_velocity_f2(s) - scenario_velocity_f1(s), kPi / 2};
}

ObserverFrame frame_of_f2(const IntersectionScenario& s) {
    const Vec2 v2 = scenario_velocity_f2(s);
    return {scenario_position_f1(s) - scenario_position_f2(s),
            scenario_velocity_f1(s) - v2, std::atan2(v2.y, v2.x)};
}

Azimuth theory_phi(const IntersectionScenario& s) {
    s.validate();
    const double ratio = s.v2 / s.v1;
    const double x1 = -s.epsilon * ratio * std::sin(s.psi);
    const double x2 = s.epsilon * ratio * std::cos(s.psi) - (s.d + s.epsilon);
    if (x1 == 0.0 && x2 == 0.0) {
        throw DegenerateConfiguration("theory_phi: agents coincide");
    }
    return {wrap_angle(std::atan2(x2, x1) - kPi / 2)};
}

double theory_distance2(const IntersectionScenario& s) {
    const double k = s.v2 * s.epsilon / s.v1;
    const double a = s.d + s.epsilon;
    return k * k + a * a - 2.0 * k * a * std::cos(s.psi);
}

AngularVelocity theory_phi_dot(const IntersectionScenario& s) {
    s.validate();
    const double D2 = theory_distance2(s);
    if (!(D2 > 0.0)) {
        throw DegenerateConfiguration("theory_phi_dot: agents coincide (D^2 = 0)");
    }
    return {-s.d * s.v2 * std::sin(s.psi) / D2};
}

// ---- wall scenario ---------------------------------------------------------

void WallScenario::validate() const {
    if (!(alpha > 0.0 && alpha < kPi / 2)) {
        throw std::invalid_argument("WallScenario: alpha must lie in (0, pi/2), got " +
                                    std::to_string(alpha));
    }
    if (!(v > 0.0)) throw std::invalid_argument("WallScenario: speed must be positive");
}

AngularVelocity wall_angular_velocity(const WallScenario& s) {
    s.validate();
    const double r2 = s.point.norm2();
    if (r2 == 0.0) throw std::invalid_argument("wall_angular_velocity: point at the origin");
    const double x = s.point.x;
    const double y = s.point.y;
    return {-s.v * (x * std::cos(s.alpha) - y * std::sin(s.alpha)) / r2};
}

}  // namespace grm
