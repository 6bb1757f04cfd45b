#include "grm/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace grm {

bool predict_collision(Vec2 p_rel, Vec2 v_rel, double d_coll, double horizon) {
    const double vv = v_rel.norm2();
    if (vv == 0.0) return false;
    const double tau_star = -p_rel.dot(v_rel) / vv;
    // Distance grows on (0, horizon] when the minimiser is not ahead of us;
    // the infimum is then |p_rel| >= d_coll, which is never a collision.
    if (tau_star <= 0.0) return p_rel.norm() < d_coll;
    const double tau = std::min(tau_star, horizon);
    return (p_rel + v_rel * tau).norm() < d_coll;
}

StopClass classify_stop(const StopRecord& stop, const SimParams& params) {
    const FrozenKinematics* self = stop.frozen_of(stop.agent);
    if (!self) throw std::invalid_argument("classify_stop: stopping agent missing from frozen state");
    bool cause_inside = false;
    for (AgentId cause : stop.cause_agents) {
        const FrozenKinematics* other = stop.frozen_of(cause);
        if (!other) throw std::invalid_argument("classify_stop: cause missing from frozen state");
        const Vec2 p_rel = min_image_delta(self->pos, other->pos, params.R);
        if (p_rel.norm() < params.collision_distance) {
            cause_inside = true;
            continue;
        }
        if (predict_collision(p_rel, other->vel - self->vel, params.collision_distance,
                              params.extrapolation_horizon)) {
            return StopClass::true_positive;
        }
    }
    return cause_inside ? StopClass::excluded : StopClass::false_positive;
}

EncounterCounts count_events(std::span<const StopRecord> stops,
                             std::span<const CollisionRecord> collisions,
                             std::span<const EncounterRecord> encounters,
                             const SimParams& params) {
    EncounterCounts c;
    for (const auto& s : stops) {
        switch (classify_stop(s, params)) {
            case StopClass::true_positive: ++c.tp; break;
            case StopClass::false_positive: ++c.fp; break;
            case StopClass::excluded: ++c.excluded; break;
        }
    }
    c.fn = static_cast<std::int64_t>(collisions.size()) * params.fn_per_collision;
    for (const auto& e : encounters) {
        if (!e.stopped && !e.collided) ++c.tn;
    }
    return c;
}

Metrics counts_to_metrics(const EncounterCounts& c) {
    Metrics m;
    if (c.tp + c.fp > 0) m.mobility = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    if (c.tp + c.fn > 0) m.safety = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    return m;
}

namespace {

// Welford's update: identical inputs give their exact value and zero spread.
template <typename Get>
MetricStats stats_of(std::span<const Metrics> per_trial, Get get) {
    MetricStats s;
    double mean = 0.0;
    double m2 = 0.0;
    for (const auto& m : per_trial) {
        const std::optional<double> v = get(m);
        if (!v) {
            ++s.excluded;
            continue;
        }
        ++s.count;
        const double delta = *v - mean;
        mean += delta / static_cast<double>(s.count);
        m2 += delta * (*v - mean);
    }
    if (s.count == 0) return s;
    s.mean = mean;
    if (s.count > 1) s.stddev = std::sqrt(m2 / static_cast<double>(s.count - 1));
    return s;
}

}  // namespace

AggregateMetrics aggregate_metrics(std::span<const Metrics> per_trial) {
    if (per_trial.empty()) throw std::invalid_argument("aggregate_metrics: no trials");
    return {stats_of(per_trial, [](const Metrics& m) { return m.mobility; }),
            stats_of(per_trial, [](const Metrics& m) { return m.safety; })};
}

AggregateMetrics aggregate_trials(std::span<const TrialResult> results) {
    std::vector<Metrics> m;
    m.reserve(results.size());
    for (const auto& r : results) m.push_back(r.metrics);
    return aggregate_metrics(m);
}

std::string to_string(StopClass c) {
    switch (c) {
        case StopClass::true_positive: return "TP";
        case StopClass::false_positive: return "FP";
        case StopClass::excluded: return "excluded";
    }
    return "?";
}

}  // namespace grm
