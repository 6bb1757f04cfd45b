#pragma once
/**
 * @file analysis.hpp
 * @brief Encounter classification and safety/mobility metrics.
 *
 * A stop is a true positive when the stopping agent would have come within
 * collision distance of one of its causes, had both kept the velocities they
 * had when the stop was decided; otherwise it is a false positive. Every
 * collision is a false negative (counted once per involved agent by default).
 *
 *   mobility = TP / (TP + FP)
 *   safety   = TP / (TP + FN)
 *
 * A zero denominator leaves the metric undefined (std::nullopt).
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grm/events.hpp"
#include "grm/state.hpp"

namespace grm {

/// Would two bodies at min-image offset p_rel, moving apart at v_rel, come
/// closer than d_coll within (0, horizon]? Closed form, unwrapped plane.
bool predict_collision(Vec2 p_rel, Vec2 v_rel, double d_coll, double horizon);

enum class StopClass { true_positive, false_positive, excluded };

/// Excluded stops had a cause already inside collision distance and no cause
/// on a collision course.
StopClass classify_stop(const StopRecord& stop, const SimParams& params);

struct EncounterCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;
    std::int64_t excluded = 0;

    bool operator==(const EncounterCounts&) const = default;
};

EncounterCounts count_events(std::span<const StopRecord> stops,
                             std::span<const CollisionRecord> collisions,
                             std::span<const EncounterRecord> encounters,
                             const SimParams& params);

struct Metrics {
    std::optional<double> mobility;
    std::optional<double> safety;

    bool operator==(const Metrics&) const = default;
};

Metrics counts_to_metrics(const EncounterCounts& c);

struct TrialResult {
    SimParams params;
    std::uint64_t seed = 0;
    EncounterCounts counts;
    Metrics metrics;
    std::vector<StopRecord> stops;
    std::vector<StopClass> stop_classes;  ///< parallel to `stops`
    std::vector<CollisionRecord> collisions;
    std::vector<EncounterRecord> encounters;
    std::optional<TrajectoryLog> trajectory;
};

struct MetricStats {
    std::optional<double> mean;
    double stddev = 0.0;      ///< sample standard deviation; 0 with fewer than two values
    std::size_t count = 0;    ///< trials contributing
    std::size_t excluded = 0; ///< trials with the metric undefined
};

struct AggregateMetrics {
    MetricStats mobility;
    MetricStats safety;
};

AggregateMetrics aggregate_metrics(std::span<const Metrics> per_trial);
AggregateMetrics aggregate_trials(std::span<const TrialResult> results);

std::string to_string(StopClass c);

}  // namespace grm
