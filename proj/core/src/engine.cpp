#include "grm/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "grm/dynamics.hpp"

namespace grm {

std::vector<AgentPair> detect_collisions(const std::vector<AgentState>& agents,
                                         const SimParams& params) {
    std::vector<AgentPair> pairs;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        for (std::size_t j = i + 1; j < agents.size(); ++j) {
            const double dist = min_image_delta(agents[i].pos, agents[j].pos, params.R).norm();
            if (dist < params.collision_distance) {
                pairs.push_back(make_pair_ordered(agents[i].id, agents[j].id));
            }
        }
    }
    return pairs;
}

Simulation::Simulation(const SimParams& params, std::uint64_t seed) {
    params.validate();
    world_.params = params;
    streams_ = make_agent_streams(seed, params.N);
    world_.agents = init_agents(params, streams_);
    check_ids();
}

Simulation::Simulation(const SimParams& params, std::vector<AgentState> agents,
                       std::vector<RngStream> streams)
    : streams_(std::move(streams)) {
    params.validate();
    world_.params = params;
    world_.agents = std::move(agents);
    if (streams_.size() != world_.agents.size()) {
        throw std::invalid_argument("Simulation: need exactly one random stream per agent");
    }
    for (auto& a : world_.agents) a.pos = wrap_torus(a.pos, params.R);
    check_ids();
}

void Simulation::check_ids() const {
    for (std::size_t i = 0; i < world_.agents.size(); ++i) {
        if (world_.agents[i].id != static_cast<AgentId>(i)) {
            throw std::invalid_argument("Simulation: agent ids must be 0..n-1 in order");
        }
    }
}

StepEvents Simulation::step() {
    const SimParams& params = world_.params;
    const std::vector<AgentState> snapshot = world_.agents;
    const std::size_t n = snapshot.size();
    const long t = world_.time_step;

    if (!encounters_started_) {
        track_encounters({});
        encounters_started_ = true;
    }
    if (log_) {
        std::vector<AgentSnapshot> frame;
        frame.reserve(n);
        for (const auto& a : snapshot) frame.push_back({a.pos, a.heading, a.moving});
        log_->steps.push_back(std::move(frame));
    }

    summaries_.resize(n);
    std::vector<char> next_moving(n);
    for (std::size_t i = 0; i < n; ++i) {
        project_points(snapshot[i], snapshot, params, scratch_);
        summaries_[i] = summarize(scratch_);
        next_moving[i] = control_step(snapshot[i], summaries_[i], params, streams_[i]);
    }

    StepEvents events;
    for (std::size_t i = 0; i < n; ++i) {
        AgentState& agent = world_.agents[i];
        const bool stopped_now = agent.moving && !next_moving[i];
        if (stopped_now) {
            const PerceptSummary& s = summaries_[i];
            const bool by_grm = s.max_grm > params.T_grm;
            const bool by_loom = s.omega_loom > params.T_loom;
            StopRecord rec;
            rec.t = t;
            rec.agent = agent.id;
            rec.channel = by_grm && by_loom ? StopChannel::both
                                            : (by_grm ? StopChannel::grm : StopChannel::loom);
            if (by_grm) rec.cause_agents = s.grm_causes;
            if (by_loom) {
                rec.cause_agents.insert(rec.cause_agents.end(), s.loom_causes.begin(),
                                        s.loom_causes.end());
            }
            std::sort(rec.cause_agents.begin(), rec.cause_agents.end());
            rec.cause_agents.erase(std::unique(rec.cause_agents.begin(), rec.cause_agents.end()),
                                   rec.cause_agents.end());
            rec.frozen.reserve(n);
            for (const auto& a : snapshot) rec.frozen.push_back({a.id, a.pos, a.velocity()});
            events.stops.push_back(std::move(rec));

            const Reorientation r = reorient_on_stop(agent, streams_[i], params);
            agent.heading = r.heading;
            agent.sigma = r.sigma;
        } else {
            agent.sigma = update_sigma(agent.sigma, false, params);
        }
        agent.moving_prev = agent.moving;
        agent.moving = next_moving[i];
        agent.pos = advance(agent, params);
    }

    world_.time_step = t + 1;

    std::set<AgentPair> contact;
    for (const AgentPair& p : detect_collisions(world_.agents, params)) {
        contact.insert(p);
        if (!in_contact_.contains(p)) events.collisions.push_back({world_.time_step, p});
    }
    in_contact_ = std::move(contact);

    track_encounters(events);
    stops_.insert(stops_.end(), events.stops.begin(), events.stops.end());
    collisions_.insert(collisions_.end(), events.collisions.begin(), events.collisions.end());
    return events;
}

void Simulation::track_encounters(const StepEvents& events) {
    // Stops were decided on the previous configuration, so attribute them
    // before the range bookkeeping moves on to the new one.
    for (const auto& s : events.stops) {
        for (AgentId c : s.cause_agents) {
            auto it = open_encounters_.find(make_pair_ordered(s.agent, c));
            if (it != open_encounters_.end()) it->second.stopped = true;
        }
    }
    const auto& agents = world_.agents;
    const double range = 0.5 * world_.params.R;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        for (std::size_t j = i + 1; j < agents.size(); ++j) {
            const AgentPair key = make_pair_ordered(agents[i].id, agents[j].id);
            const bool near =
                min_image_delta(agents[i].pos, agents[j].pos, world_.params.R).norm() < range;
            auto it = open_encounters_.find(key);
            if (near && it == open_encounters_.end()) {
                open_encounters_.emplace(key, EncounterRecord{key, world_.time_step, 0, false, false});
            } else if (!near && it != open_encounters_.end()) {
                it->second.t_end = world_.time_step;
                encounters_.push_back(it->second);
                open_encounters_.erase(it);
            }
        }
    }
    for (const auto& c : events.collisions) {
        auto it = open_encounters_.find(c.pair);
        if (it != open_encounters_.end()) it->second.collided = true;
    }
}

void Simulation::run(long steps) {
    for (long k = 0; k < steps; ++k) step();
}

TrialResult Simulation::finish(std::uint64_t seed) && {
    TrialResult r;
    r.params = world_.params;
    r.seed = seed;
    r.stops = std::move(stops_);
    r.collisions = std::move(collisions_);
    r.encounters = std::move(encounters_);
    r.stop_classes.reserve(r.stops.size());
    for (const auto& s : r.stops) r.stop_classes.push_back(classify_stop(s, r.params));
    r.counts = count_events(r.stops, r.collisions, r.encounters, r.params);
    r.metrics = counts_to_metrics(r.counts);
    r.trajectory = std::move(log_);
    return r;
}

TrialResult run_trial(const SimParams& params, std::uint64_t seed, RunOptions options) {
    Simulation sim(params, seed);
    if (options.log_trajectories) sim.enable_trajectory_log();
    sim.run(params.horizon_steps);
    return std::move(sim).finish(seed);
}

}  // namespace grm
