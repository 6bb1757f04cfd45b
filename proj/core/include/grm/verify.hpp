#pragma once
/**
 * @file verify.hpp
 * @brief Randomised checks of the regressive-motion theorems.
 *
 * Each suite samples configurations from a seeded stream and records any
 * counterexample it finds:
 *  - angular_velocity_fd: analytic angular velocity against a central
 *    difference of the azimuth (dt = 1e-6 s).
 *  - crossing_f1_frame / crossing_f2_frame: on crossing trajectories the
 *    later agent sees regressive motion exactly until the earlier one clears
 *    the junction; the earlier agent sees it exactly after the later one
 *    reaches the junction.
 *  - regressive_implies_grm: regressive motion implies GRM for any CVA.
 *  - wall_approach: approaching a wall, some point inside the CVA cone
 *    exceeds any finite GRM threshold before contact.
 *
 * The angular-velocity routine is injectable so that a mutated sign
 * convention can be shown to break the suites.
 */

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grm/geometry.hpp"

namespace grm {

using AngularVelocityFn = std::function<AngularVelocity(Vec2, Vec2)>;

struct VerifyOptions {
    AngularVelocityFn angular_velocity = grm::angular_velocity;
    std::size_t max_reported_counterexamples = 10;
};

struct TheoremCheck {
    std::string name;
    std::size_t samples = 0;
    std::size_t failures = 0;
    std::vector<std::string> counterexamples;  ///< at most max_reported_counterexamples
    double seconds = 0.0;

    bool passed() const { return failures == 0 && samples > 0; }
};

struct VerificationReport {
    std::vector<TheoremCheck> checks;

    bool all_passed() const;
    const TheoremCheck* find(const std::string& name) const;
    std::string to_text() const;
};

TheoremCheck check_angular_velocity_fd(std::size_t samples, std::uint64_t seed,
                                           const VerifyOptions& opts = {});
TheoremCheck check_crossing(std::size_t samples, std::uint64_t seed, bool f2_frame,
                            const VerifyOptions& opts = {});
TheoremCheck check_regressive_implies_grm(std::size_t samples, std::uint64_t seed, const VerifyOptions& opts = {});
TheoremCheck check_wall_approach(std::size_t families, std::uint64_t seed, const VerifyOptions& opts = {});

/// Thresholds searched by the wall suite, rad/s.
inline const std::vector<double> kWallThresholds = {0.1, 1, 2, 4, 6, 8, 10, 12, 14, 32};

/**
 * Geometric search of the wall suite: starting at wall distance `y0`, halves
 * the distance until a wall point at azimuth CVA/2 (left of heading) moves
 * faster than `threshold`. Returns the wall distance reached, or nullopt
 * when CVA = 0 or the search exhausts `max_halvings`.
 */
struct WallSearchResult {
    double y = 0.0;
    Vec2 point;
    double phi = 0.0;
    double phi_dot = 0.0;
};
std::optional<WallSearchResult> find_wall_grm_point(double alpha, double v, double cva, double threshold,
                                                    double y0 = 100.0, int max_halvings = 200);

/// Runs every suite; wall families = max(1, samples / 10).
VerificationReport verify_theorems(std::size_t sample_count, std::uint64_t seed,
                                   const VerifyOptions& opts = {});

void write_report(const VerificationReport& report, const std::filesystem::path& path);

}  // namespace grm
