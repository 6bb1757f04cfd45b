#pragma once
/**
 * @file perception.hpp
 * @brief Two-eyed retinal model.
 *
 * Every other agent contributes the 14 points of its body outline. Each point
 * is projected onto both eyes; a projection is kept when its azimuth (about
 * the eye centre, relative to the observer's heading) lies inside that eye's
 * field. The right eye covers [-theta_i, +CVA], the left eye [-CVA, +theta_i].
 *
 * From the kept projections the observer derives two scalar stimuli:
 *  - GRM magnitude: the largest |phi_dot| among counter-clockwise motion on
 *    the right eye or clockwise motion on the left eye.
 *  - looming strength: min(|largest CCW rate in the left hemifield|,
 *    |largest CW rate in the right hemifield|), hemifields split by the
 *    point's azimuth about the body centre.
 */

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "grm/geometry.hpp"
#include "grm/state.hpp"

namespace grm {

enum class EyeSide { left, right };

struct EyeConfig {
    EyeSide side = EyeSide::left;
    Vec2 offset;  ///< body frame: x to the right, y forward, mm
    double field_lo = 0.0;
    double field_hi = 0.0;

    bool sees(double phi) const { return phi >= field_lo && phi <= field_hi; }
};

struct EyePair {
    EyeConfig left;
    EyeConfig right;
};

/// Forward offset of both eye centres from the body centre, mm (for l = 2 mm).
inline constexpr double kEyeForwardOffset = 0.7;

/// Visual fields for a given CVA and ipsilateral angle; eyes d_eye apart.
EyePair eye_fields(double cva, double theta_i, double d_eye = 0.55);

inline constexpr std::size_t kBodyPoints = 14;

/// Body outline of a 2 mm agent in the body frame (x right, y forward).
const std::array<Vec2, kBodyPoints>& body_outline();

/// Body frame to world frame (unwrapped).
Vec2 body_to_world(const AgentState& agent, Vec2 body_point);

/// World position of every outline point, scaled to body length `l`.
std::array<Vec2, kBodyPoints> body_points_world(const AgentState& agent, double l);

struct PointPercept {
    AgentId source = 0;
    std::size_t point_index = 0;
    EyeSide eye = EyeSide::left;
    Azimuth phi;           ///< about the eye centre
    AngularVelocity phi_dot;
    Azimuth body_phi;      ///< about the body centre, for hemifield membership
};

struct ProjectionDiagnostics {
    std::size_t skipped_coincident = 0;
};

/// Appends the visible projections of `others` onto `out` (cleared first).
void project_points(const AgentState& observer, std::span<const AgentState> others,
                    const SimParams& params, std::vector<PointPercept>& out,
                    ProjectionDiagnostics* diag = nullptr);

std::vector<PointPercept> project_points(const AgentState& observer,
                                         std::span<const AgentState> others,
                                         const SimParams& params,
                                         ProjectionDiagnostics* diag = nullptr);

struct GrmDetection {
    double max_grm = 0.0;
    std::vector<AgentId> causes;  ///< sorted, unique
};

struct LoomingDetection {
    double omega_loom = 0.0;
    std::vector<AgentId> causes;  ///< sorted, unique
};

GrmDetection detect_grm(std::span<const PointPercept> percepts);
LoomingDetection looming_strength(std::span<const PointPercept> percepts);

struct PerceptSummary {
    double max_grm = 0.0;
    std::vector<AgentId> grm_causes;
    double omega_loom = 0.0;
    std::vector<AgentId> loom_causes;
};

PerceptSummary summarize(std::span<const PointPercept> percepts);

}  // namespace grm
