#include "grm/verify.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "grm/state.hpp"

namespace grm {

namespace {

constexpr double kFiniteDifferenceStep = 1e-6;
constexpr double kFdRelTol = 1e-5;
// Central differences of atan2 carry ~1e-10 rad/s of rounding noise at this
// step; the absolute floor sits two orders above it.
constexpr double kFdAbsTol = 1e-8;

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string describe(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

void fail(TheoremCheck& c, const VerifyOptions& opts, std::string what) {
    ++c.failures;
    if (c.counterexamples.size() < opts.max_reported_counterexamples) {
        c.counterexamples.push_back(std::move(what));
    }
}

/// Uniform on [lo, hi] excluding |x - centre| < gap, split evenly on both sides.
double two_sided(RngStream& rng, double centre, double gap, double reach) {
    const double mag = rng.uniform(gap, reach);
    return rng.uniform() < 0.5 ? centre - mag : centre + mag;
}

}  // namespace

TheoremCheck check_angular_velocity_fd(std::size_t samples, std::uint64_t seed,
                                           const VerifyOptions& opts) {
    Timer timer;
    TheoremCheck c;
    c.name = "angular_velocity_fd";
    RngStream rng(derive_seed(seed, 2, 0));
    for (std::size_t k = 0; k < samples; ++k) {
        const double r = rng.uniform(0.1, 100.0);
        const double a = rng.uniform(-kPi, kPi);
        const Vec2 x{r * std::cos(a), r * std::sin(a)};
        const Vec2 v{rng.uniform(-60.0, 60.0), rng.uniform(-60.0, 60.0)};
        const double heading = rng.uniform(0.0, kTwoPi);
        const double h = kFiniteDifferenceStep;
        const double fd =
            wrap_angle(azimuth(x + v * h, heading).value - azimuth(x - v * h, heading).value) / (2 * h);
        const double an = opts.angular_velocity(x, v).value;
        ++c.samples;
        if (std::abs(fd - an) > kFdRelTol * std::abs(an) + kFdAbsTol) {
            fail(c, opts, describe("x=(%.6g,%.6g) v=(%.6g,%.6g): analytic %.9g vs finite difference %.9g",
                                   x.x, x.y, v.x, v.y, an, fd));
        }
    }
    c.seconds = timer.seconds();
    return c;
}

TheoremCheck check_crossing(std::size_t samples, std::uint64_t seed, bool f2_frame,
                            const VerifyOptions& opts) {
    Timer timer;
    TheoremCheck c;
    c.name = f2_frame ? "crossing_f2_frame" : "crossing_f1_frame";
    RngStream rng(derive_seed(seed, 1, f2_frame ? 2 : 1));
    for (std::size_t k = 0; k < samples; ++k) {
        IntersectionScenario s;
        s.v1 = rng.uniform(1.0, 30.0);
        s.v2 = rng.uniform(1.0, 30.0);
        do {
            s.psi = rng.uniform(-kPi, kPi);
        } while (std::abs(std::sin(s.psi)) < 0.05);
        s.d = -rng.uniform(0.1, 20.0);  // f1 arrives second
        // f1 frame switches at epsilon = 0, f2 frame at epsilon = -d (f1 at the junction).
        const double pivot = f2_frame ? -s.d : 0.0;
        s.epsilon = two_sided(rng, pivot, 1e-3, 30.0);
        ++c.samples;

        const ObserverFrame f = f2_frame ? frame_of_f2(s) : frame_of_f1(s);
        const Azimuth phi = azimuth(f.rel_pos, f.heading);
        const AngularVelocity phi_dot = opts.angular_velocity(f.rel_pos, f.rel_vel);
        const bool expect_regressive = f2_frame ? s.epsilon > pivot : s.epsilon < pivot;
        bool ok = is_regressive(phi, phi_dot) == expect_regressive;

        if (!f2_frame) {
            // The closed forms must agree with the general angular-velocity formula.
            const Azimuth tphi = theory_phi(s);
            const AngularVelocity tdot = theory_phi_dot(s);
            ok = ok && is_regressive(tphi, tdot) == expect_regressive;
            ok = ok && std::abs(wrap_angle(tphi.value - phi.value)) < 1e-9;
            ok = ok && std::abs(tdot.value - phi_dot.value) <= 1e-9 * std::max(1.0, std::abs(tdot.value));
        }
        if (!ok) {
            fail(c, opts,
                 describe("v1=%.6g v2=%.6g psi=%.6g d=%.6g eps=%.6g: phi=%.6g phi_dot=%.6g, expected %s",
                          s.v1, s.v2, s.psi, s.d, s.epsilon, phi.value, phi_dot.value,
                          expect_regressive ? "regressive" : "progressive"));
        }
    }
    c.seconds = timer.seconds();
    return c;
}

TheoremCheck check_regressive_implies_grm(std::size_t samples, std::uint64_t seed, const VerifyOptions& opts) {
    Timer timer;
    TheoremCheck c;
    c.name = "regressive_implies_grm";
    RngStream rng(derive_seed(seed, 3, 0));
    for (std::size_t k = 0; k < samples; ++k) {
        // Boundary azimuths are drawn on purpose; phi_dot is never exactly 0
        // (a motionless point is neither kind of motion).
        double phi;
        switch (k % 8) {
            case 0: phi = 0.0; break;
            case 1: phi = -kPi; break;
            default: phi = rng.uniform(-kPi, kPi);
        }
        const double phi_dot = two_sided(rng, 0.0, 1e-9, 50.0);
        const double cva = (k % 16 == 3) ? 0.0 : rng.uniform(0.0, kPi / 2);
        ++c.samples;
        if (is_regressive({phi}, {phi_dot}) && !is_grm({phi}, {phi_dot}, cva)) {
            fail(c, opts, describe("phi=%.9g phi_dot=%.9g cva=%.9g: regressive but not GRM", phi, phi_dot, cva));
        }
    }
    c.seconds = timer.seconds();
    return c;
}

std::optional<WallSearchResult> find_wall_grm_point(double alpha, double v, double cva, double threshold,
                                                    double y0, int max_halvings) {
    WallScenario ws{alpha, v, {}};
    ws.validate();
    if (!(cva > 0.0)) return std::nullopt;
    const double heading = kPi / 2 - alpha;
    const double phi = 0.5 * cva;
    const double dir = heading + phi;
    if (!(std::sin(dir) > 0.0)) return std::nullopt;  // ray never meets the wall
    const double cot = std::cos(dir) / std::sin(dir);
    double y = y0;
    for (int k = 0; k <= max_halvings && y > 0.0; ++k, y *= 0.5) {
        ws.point = {y * cot, y};
        const double w = wall_angular_velocity(ws).value;
        if (std::abs(w) > threshold) return WallSearchResult{y, ws.point, phi, w};
    }
    return std::nullopt;
}

TheoremCheck check_wall_approach(std::size_t families, std::uint64_t seed, const VerifyOptions& opts) {
    Timer timer;
    TheoremCheck c;
    c.name = "wall_approach";
    RngStream rng(derive_seed(seed, 4, 0));
    for (std::size_t k = 0; k < families; ++k) {
        const double alpha = rng.uniform(deg_to_rad(5.0), deg_to_rad(85.0));
        const double v = rng.uniform(10.0, 30.0);
        const Vec2 vel{v * std::sin(alpha), v * std::cos(alpha)};
        const double heading = kPi / 2 - alpha;
        for (int cva_deg = 10; cva_deg <= 90; cva_deg += 10) {
            const double cva = deg_to_rad(cva_deg);
            for (double T : kWallThresholds) {
                ++c.samples;
                const auto hit = find_wall_grm_point(alpha, v, cva, T);
                if (!hit) {
                    fail(c, opts, describe("alpha=%.6g v=%.6g cva=%d T=%g: no cone point exceeds T",
                                           alpha, v, cva_deg, T));
                    continue;
                }
                const AngularVelocity via_formula = opts.angular_velocity(hit->point, -vel);
                const Azimuth phi = azimuth(hit->point, heading);
                const bool agrees = std::abs(via_formula.value - hit->phi_dot) <=
                                    1e-9 * std::max(1.0, std::abs(hit->phi_dot));
                if (!(hit->y > 0.0) || !agrees || !is_grm(phi, via_formula, cva) ||
                    !(std::abs(via_formula.value) > T)) {
                    fail(c, opts,
                         describe("alpha=%.6g v=%.6g cva=%d T=%g: y=%.6g phi=%.6g phi_dot=%.6g (formula %.6g)",
                                  alpha, v, cva_deg, T, hit->y, phi.value, hit->phi_dot, via_formula.value));
                }
            }
        }
    }
    c.seconds = timer.seconds();
    return c;
}

bool VerificationReport::all_passed() const {
    for (const auto& c : checks) {
        if (!c.passed()) return false;
    }
    return !checks.empty();
}

const TheoremCheck* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

std::string VerificationReport::to_text() const {
    std::ostringstream s;
    for (const auto& c : checks) {
        s << (c.passed() ? "PASS " : "FAIL ") << c.name << " samples=" << c.samples
          << " counterexamples=" << c.failures << " time=" << describe("%.3fs", c.seconds) << '\n';
        for (const auto& ce : c.counterexamples) s << "    " << ce << '\n';
    }
    s << (all_passed() ? "ALL PASS" : "FAILED") << '\n';
    return s.str();
}

VerificationReport verify_theorems(std::size_t sample_count, std::uint64_t seed, const VerifyOptions& opts) {
    if (sample_count < 1) throw std::invalid_argument("verify_theorems: sample_count must be at least 1");
    VerificationReport r;
    r.checks.push_back(check_angular_velocity_fd(sample_count, seed, opts));
    r.checks.push_back(check_crossing(sample_count, seed, false, opts));
    r.checks.push_back(check_crossing(sample_count, seed, true, opts));
    r.checks.push_back(check_regressive_implies_grm(sample_count * 100, seed, opts));
    r.checks.push_back(check_wall_approach(std::max<std::size_t>(1, sample_count / 10), seed, opts));
    return r;
}

void write_report(const VerificationReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << report.to_text();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace grm
