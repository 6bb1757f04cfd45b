#pragma once
/**
 * @file geometry.hpp
 * @brief Planar projective geometry for regressive-motion analysis.
 *
 * Azimuths are measured about an observer: 0 is straight ahead along the
 * heading, positive values lie on the observer's left, and every azimuth is
 * reported in [-pi, pi). Angular velocities are positive counter-clockwise.
 *
 * The closed-form scenario functions (theory_phi, theory_phi_dot,
 * wall_angular_velocity) serve as independent oracles for the simulator.
 */

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace grm {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// 2D vector in millimetres (positions) or mm/s (velocities).
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2& operator+=(const Vec2& r) { x += r.x; y += r.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& r) { x -= r.x; y -= r.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    /// z-component of the 3D cross product.
    constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
    constexpr double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }

    /// Clockwise quarter turn: (u, v) -> (v, -u).
    constexpr Vec2 perp() const { return {y, -x}; }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Unit vector pointing along `heading` (radians, counter-clockwise from +x).
inline Vec2 unit_from_heading(double heading) { return {std::cos(heading), std::sin(heading)}; }

struct Azimuth {
    double value{0.0};  ///< radians in [-pi, pi)
};

struct AngularVelocity {
    double value{0.0};  ///< rad/s, counter-clockwise positive
};

/// Map any finite angle into [-pi, pi).
double wrap_angle(double angle);

/// Map any finite angle into [0, 2pi).
double wrap_angle_positive(double angle);

/// Wrap a point onto the torus [0, R)^2.
Vec2 wrap_torus(Vec2 p, double R);

/// Shortest displacement from a to b on the torus; components in [-R/2, R/2).
Vec2 min_image_delta(Vec2 a, Vec2 b, double R);

/// Azimuth of `rel_pos` for an observer facing `heading`. Throws
/// std::invalid_argument for a zero vector.
Azimuth azimuth(Vec2 rel_pos, double heading);

/// Angular velocity <v_perp, x> / |x|^2 of a point at rel_pos moving at rel_vel.
AngularVelocity angular_velocity(Vec2 rel_pos, Vec2 rel_vel);

/// Definition of regressive motion: phi_dot * phi <= 0.
bool is_regressive(Azimuth phi, AngularVelocity phi_dot);

/// Generalized regressive motion with contralateral visual angle `cva`.
bool is_grm(Azimuth phi, AngularVelocity phi_dot, double cva);

/// Thrown when a closed-form scenario has no defined azimuth or rate.
class DegenerateConfiguration : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/**
 * Two agents crossing at the origin. f1 walks along +y, f2 with velocity
 * v2 * (-sin psi, cos psi). `d` is f1's y-coordinate when f2 is at the
 * origin, and `epsilon` how far f1 has advanced beyond that instant.
 */
struct IntersectionScenario {
    double v1{1.0};
    double v2{1.0};
    double psi{kPi / 2};
    double d{0.0};
    double epsilon{0.0};

    void validate() const;
};

/// Relative kinematics of one agent as seen from another.
struct ObserverFrame {
    Vec2 rel_pos;
    Vec2 rel_vel;
    double heading{0.0};
};

/// World positions of both agents at the scenario instant.
Vec2 scenario_position_f1(const IntersectionScenario& s);
Vec2 scenario_position_f2(const IntersectionScenario& s);
Vec2 scenario_velocity_f1(const IntersectionScenario& s);
Vec2 scenario_velocity_f2(const IntersectionScenario& s);

/// f2 as observed from f1, and f1 as observed from f2.
ObserverFrame frame_of_f1(const IntersectionScenario& s);
ObserverFrame frame_of_f2(const IntersectionScenario& s);

/// Closed-form azimuth of f2 on f1's eye.
Azimuth theory_phi(const IntersectionScenario& s);

/// Closed-form angular velocity -d v2 sin(psi) / D^2 of f2 on f1's eye.
AngularVelocity theory_phi_dot(const IntersectionScenario& s);

/// Squared distance between the agents from the closed-form expression.
double theory_distance2(const IntersectionScenario& s);

/**
 * Agent at the origin approaching a wall with velocity (v sin a, v cos a).
 * `point` is a wall point in the same frame.
 */
struct WallScenario {
    double alpha{kPi / 4};
    double v{1.0};
    Vec2 point;

    void validate() const;
};

/// -v (x cos a - y sin a) / (x^2 + y^2)
AngularVelocity wall_angular_velocity(const WallScenario& s);

}  // namespace grm
