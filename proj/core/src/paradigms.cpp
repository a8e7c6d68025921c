#include "sfl/paradigms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

namespace sfl {

const char* paradigm_name(Paradigm p) {
    switch (p) {
        case Paradigm::SflPP: return "sfl_pp";
        case Paradigm::VanillaSflPS: return "vanilla_sfl_ps";
        case Paradigm::CpsflNoAT: return "cpsfl_wo_at";
        case Paradigm::CpsflNoPS: return "cpsfl_wo_ps";
        case Paradigm::Cpsfl: return "cpsfl";
        case Paradigm::PipeSfl: return "pipesfl";
        case Paradigm::PipeSflNoAT: return "pipesfl_wo_at";
        case Paradigm::PipeSflNoPS: return "pipesfl_wo_ps";
    }
    return "?";
}

std::optional<Paradigm> paradigm_from_name(const std::string& name) {
    for (Paradigm p : kAllParadigms)
        if (name == paradigm_name(p)) return p;
    return std::nullopt;
}

bool paradigm_needs_rho(Paradigm p) {
    switch (p) {
        case Paradigm::SflPP:
        case Paradigm::PipeSfl:
        case Paradigm::PipeSflNoAT:
        case Paradigm::PipeSflNoPS: return true;
        default: return false;
    }
}

namespace {

bool sequential_gt(Paradigm p) {
    switch (p) {
        case Paradigm::VanillaSflPS:
        case Paradigm::CpsflNoAT:
        case Paradigm::CpsflNoPS:
        case Paradigm::Cpsfl: return true;
        default: return false;
    }
}

bool sequential_compute(Paradigm p) {
    switch (p) {
        case Paradigm::PipeSfl:
        case Paradigm::PipeSflNoAT:
        case Paradigm::PipeSflNoPS: return true;
        default: return false;
    }
}

bool synchronous_release(Paradigm p) {
    return p == Paradigm::VanillaSflPS || p == Paradigm::CpsflNoAT ||
           p == Paradigm::PipeSflNoAT;
}

bool fcfs_discipline(Paradigm p) {
    return p == Paradigm::VanillaSflPS || p == Paradigm::CpsflNoPS ||
           p == Paradigm::PipeSflNoPS;
}

}  // namespace

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::SmDone: return "sm_done";
        case EventKind::CfDone: return "cf_done";
        case EventKind::CaDone: return "ca_done";
        case EventKind::ServerDone: return "server_done";
        case EventKind::SgDone: return "sg_done";
        case EventKind::CbDone: return "cb_done";
        case EventKind::CmDone: return "cm_done";
    }
    return "?";
}

double RoundOutcome::max_energy() const {
    double m = 0.0;
    for (double e : energy_j) m = std::max(m, e);
    return m;
}

// ---------------------------------------------------------------------------
// channel-backed cost model

ChannelCostModel::ChannelCostModel(const Scenario& s, const RoundPlan& plan,
                                   const std::vector<Trajectory>& trajectories)
    : scenario_(&s), plan_(plan), trajectories_(&trajectories) {
    split_ = &s.split(plan.split_u);
    if (int(trajectories.size()) != s.num_clients())
        throw std::invalid_argument("cost model: trajectory count != K");
}

double ChannelCostModel::sm(int k, double t_start) const {
    const auto& srv = scenario_->server;
    const auto& traj = (*trajectories_)[size_t(k)];
    return transmit_duration(
        split_->gamma_m,
        [&](int64_t slot) {
            return downlink_rate_full(srv.downlink_bw_hz, srv.total_power_w,
                                      traj.gain(slot), srv.noise_psd);
        },
        t_start, scenario_->config.slot_seconds);
}

double ChannelCostModel::cf(int k) const {
    return client_fp_latency(scenario_->config.batch_size, *split_,
                             scenario_->clients[size_t(k)]);
}

double ChannelCostModel::ca(int k, double t_start) const {
    const auto& srv = scenario_->server;
    const auto& cl = scenario_->clients[size_t(k)];
    const auto& traj = (*trajectories_)[size_t(k)];
    const double bw = plan_.beta[size_t(k)] * srv.uplink_bw_hz;
    return transmit_duration(
        double(scenario_->config.batch_size) * split_->gamma_a,
        [&](int64_t slot) {
            return uplink_rate(bw, cl.transmit_power_w, traj.gain(slot), srv.noise_psd);
        },
        t_start, scenario_->config.slot_seconds);
}

double ChannelCostModel::server_frac(int k) const {
    return server_compute_latency(scenario_->config.batch_size, *split_, scenario_->server,
                                  plan_.alpha[size_t(k)]);
}

double ChannelCostModel::server_full() const {
    return server_compute_latency(scenario_->config.batch_size, *split_, scenario_->server,
                                  1.0);
}

double ChannelCostModel::sg_full(int k, double t_start) const {
    const auto& srv = scenario_->server;
    const auto& traj = (*trajectories_)[size_t(k)];
    return transmit_duration(
        double(scenario_->config.batch_size) * split_->gamma_g,
        [&](int64_t slot) {
            return downlink_rate_full(srv.downlink_bw_hz, srv.total_power_w,
                                      traj.gain(slot), srv.noise_psd);
        },
        t_start, scenario_->config.slot_seconds);
}

double ChannelCostModel::sg_frac(int k, double t_start) const {
    if (!plan_.rho) throw ConfigError("plan: rho required for fractional downlink GT");
    const auto& srv = scenario_->server;
    const auto& traj = (*trajectories_)[size_t(k)];
    const double beta = plan_.beta[size_t(k)];
    const double rho = (*plan_.rho)[size_t(k)];
    return transmit_duration(
        double(scenario_->config.batch_size) * split_->gamma_g,
        [&](int64_t slot) {
            return downlink_rate_fraction(beta, rho, srv.downlink_bw_hz, srv.total_power_w,
                                          traj.gain(slot), srv.noise_psd);
        },
        t_start, scenario_->config.slot_seconds);
}

double ChannelCostModel::cb(int k) const {
    return client_bp_latency(scenario_->config.batch_size, *split_,
                             scenario_->clients[size_t(k)]);
}

double ChannelCostModel::cm(int k, double t_start) const {
    const auto& srv = scenario_->server;
    const auto& cl = scenario_->clients[size_t(k)];
    const auto& traj = (*trajectories_)[size_t(k)];
    const double bw = plan_.beta[size_t(k)] * srv.uplink_bw_hz;
    return transmit_duration(
        split_->gamma_m,
        [&](int64_t slot) {
            return uplink_rate(bw, cl.transmit_power_w, traj.gain(slot), srv.noise_psd);
        },
        t_start, scenario_->config.slot_seconds);
}

double ChannelCostModel::sg_frac_estimate(int k, double t) const {
    if (!plan_.rho) throw ConfigError("plan: rho required for fractional downlink GT");
    const auto& srv = scenario_->server;
    const auto& traj = (*trajectories_)[size_t(k)];
    const int64_t slot = slot_of(t, scenario_->config.slot_seconds);
    const double rate =
        downlink_rate_fraction(plan_.beta[size_t(k)], (*plan_.rho)[size_t(k)],
                               srv.downlink_bw_hz, srv.total_power_w, traj.gain(slot),
                               srv.noise_psd);
    return double(scenario_->config.batch_size) * split_->gamma_g / rate;
}

double ChannelCostModel::compute_energy_j(int k, double duration) const {
    return compute_energy(scenario_->clients[size_t(k)], duration);
}

double ChannelCostModel::transmit_energy_j(int k, double duration) const {
    return transmit_energy(scenario_->clients[size_t(k)], duration);
}

// ---------------------------------------------------------------------------
// the discrete-event loop

namespace {

struct EvRec {
    double time;
    EventKind kind;
    int client;
    int iteration;
};

struct EvLater {
    bool operator()(const EvRec& a, const EvRec& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.kind != b.kind) return int(a.kind) > int(b.kind);
        if (a.client != b.client) return a.client > b.client;
        return a.iteration > b.iteration;
    }
};

struct QueueEntry {
    int client = 0;
    int iteration = 0;
    double priority = 0;      // higher value served first
    double enqueue_time = 0;  // FCFS key
    int static_rank = 0;
};

enum class Discipline { Priority, Fcfs, Static };

bool serve_before(const QueueEntry& a, const QueueEntry& b, Discipline d) {
    switch (d) {
        case Discipline::Priority:
            if (a.priority != b.priority) return a.priority > b.priority;
            return a.client < b.client;
        case Discipline::Fcfs:
            if (a.enqueue_time != b.enqueue_time) return a.enqueue_time < b.enqueue_time;
            return a.client < b.client;
        case Discipline::Static:
            if (a.static_rank != b.static_rank) return a.static_rank < b.static_rank;
            return a.client < b.client;
    }
    return a.client < b.client;
}

class RoundSim {
public:
    RoundSim(Paradigm p, const StepCostModel& cost, int iterations, double t_start,
             const SimOverrides& overrides)
        : p_(p), cost_(cost), K_(cost.num_clients()), I_(iterations), t0_(t_start),
          overrides_(overrides) {
        if (K_ < 1) throw std::invalid_argument("simulate_round: no clients");
        if (I_ < 1) throw std::invalid_argument("simulate_round: iterations must be >= 1");
        if (overrides_.static_priority &&
            int(overrides_.static_priority->size()) != K_)
            throw std::invalid_argument("simulate_round: static priority length != K");
        if (overrides_.forced_batch_order &&
            int(overrides_.forced_batch_order->size()) != I_)
            throw std::invalid_argument("simulate_round: forced order needs I batches");

        out_.t_start = t_start;
        last_time_ = t_start;
        out_.steps.resize(K_, I_);
        out_.ledger.resize(K_, I_);
        if (overrides_.static_priority) {
            static_rank_.assign(size_t(K_), 0);
            for (int pos = 0; pos < K_; ++pos)
                static_rank_[size_t((*overrides_.static_priority)[size_t(pos)])] = pos;
        }
        arrivals_.assign(size_t(I_) + 1, 0);
        batch_pending_.assign(size_t(I_) + 1, {});
    }

    RoundOutcome run() {
        // the round opens with the TP broadcast to every client
        for (int k = 0; k < K_; ++k)
            start_step(EventKind::SmDone, k, 0, t0_, cost_.sm(k, t0_));

        while (!heap_.empty()) {
            const double t = heap_.top().time;
            while (!heap_.empty() && heap_.top().time == t) {
                EvRec ev = heap_.top();
                heap_.pop();
                handle(ev);
            }
            dispatch(t);
        }

        out_.t_end = last_time_;
        out_.tau_round = last_time_ - t0_;
        out_.energy_j = out_.ledger.totals();
        return std::move(out_);
    }

private:
    void start_step(EventKind kind, int k, int iter, double start, double duration) {
        if (duration < 0 || !std::isfinite(duration))
            throw std::runtime_error("simulate_round: invalid step duration");
        start_time_[key(kind, k, iter)] = start;
        heap_.push({start + duration, kind, k, iter});
    }

    static int64_t key(EventKind kind, int k, int iter) {
        return (int64_t(kind) << 40) | (int64_t(k) << 20) | int64_t(iter);
    }

    void record(const EvRec& ev) {
        const double start = start_time_.at(key(ev.kind, ev.client, ev.iteration));
        const double dur = ev.time - start;
        out_.events.push_back({ev.time, ev.kind, ev.client, ev.iteration});
        out_.windows.push_back({ev.kind, ev.client, ev.iteration, start, ev.time});
        last_time_ = std::max(last_time_, ev.time);

        auto& st = out_.steps;
        switch (ev.kind) {
            case EventKind::SmDone: st.tau_sm[size_t(ev.client)] = dur; break;
            case EventKind::CfDone: st.at(st.tau_cf, ev.client, ev.iteration) = dur; break;
            case EventKind::CaDone: st.at(st.tau_ca, ev.client, ev.iteration) = dur; break;
            case EventKind::ServerDone: st.at(st.tau_s, ev.client, ev.iteration) = dur; break;
            case EventKind::SgDone: st.at(st.tau_sg, ev.client, ev.iteration) = dur; break;
            case EventKind::CbDone: st.at(st.tau_cb, ev.client, ev.iteration) = dur; break;
            case EventKind::CmDone: st.tau_cm[size_t(ev.client)] = dur; break;
        }
    }

    void handle(const EvRec& ev) {
        record(ev);
        const int k = ev.client;
        const int i = ev.iteration;
        const double t = ev.time;
        auto& st = out_.steps;

        switch (ev.kind) {
            case EventKind::SmDone:
                start_step(EventKind::CfDone, k, 1, t, cost_.cf(k));
                break;

            case EventKind::CfDone:
                out_.ledger.clients[size_t(k)].e_f[size_t(i - 1)] =
                    cost_.compute_energy_j(k, st.cf(k, i));
                start_step(EventKind::CaDone, k, i, t, cost_.ca(k, t));
                break;

            case EventKind::CaDone: {
                out_.ledger.clients[size_t(k)].e_a[size_t(i - 1)] =
                    cost_.transmit_energy_j(k, st.ca(k, i));
                if (sequential_compute(p_)) {
                    QueueEntry e;
                    e.client = k;
                    e.iteration = i;
                    e.enqueue_time = t;
                    e.priority = lag_pipesfl(st.cf(k, i), st.ca(k, i),
                                             cost_.sg_frac_estimate(k, t), cost_.cb(k));
                    if (static_rank_.size()) e.static_rank = static_rank_[size_t(k)];
                    enqueue(compute_queue_, e, i);
                } else {
                    start_step(EventKind::ServerDone, k, i, t, cost_.server_frac(k));
                }
                break;
            }

            case EventKind::ServerDone: {
                if (sequential_compute(p_)) {
                    if (key(ev.kind, k, i) == active_compute_key_) active_compute_key_ = -1;
                    // dedicated fractional downlink, starts immediately
                    start_step(EventKind::SgDone, k, i, t, cost_.sg_frac(k, t));
                } else if (p_ == Paradigm::SflPP) {
                    start_step(EventKind::SgDone, k, i, t, cost_.sg_frac(k, t));
                } else {
                    QueueEntry e;
                    e.client = k;
                    e.iteration = i;
                    e.enqueue_time = t;
                    e.priority = lag_cpsfl(k, i, st, cost_.sigma());
                    if (static_rank_.size()) e.static_rank = static_rank_[size_t(k)];
                    enqueue(gt_queue_, e, i);
                }
                break;
            }

            case EventKind::SgDone:
                if (sequential_gt(p_) && key(ev.kind, k, i) == active_gt_key_)
                    active_gt_key_ = -1;
                start_step(EventKind::CbDone, k, i, t, cost_.cb(k));
                break;

            case EventKind::CbDone:
                out_.ledger.clients[size_t(k)].e_b[size_t(i - 1)] =
                    cost_.compute_energy_j(k, st.cb(k, i));
                if (i < I_) {
                    start_step(EventKind::CfDone, k, i + 1, t, cost_.cf(k));
                } else {
                    start_step(EventKind::CmDone, k, i, t, cost_.cm(k, t));
                }
                break;

            case EventKind::CmDone:
                out_.ledger.clients[size_t(k)].e_m =
                    cost_.transmit_energy_j(k, st.tau_cm[size_t(k)]);
                break;
        }
    }

    // queue admission; synchronous variants hold a batch back until the whole
    // iteration has arrived
    void enqueue(std::vector<QueueEntry>& queue, const QueueEntry& e, int iteration) {
        if (synchronous_release(p_)) {
            batch_pending_[size_t(iteration)].push_back(e);
            if (++arrivals_[size_t(iteration)] == K_) {
                auto& batch = batch_pending_[size_t(iteration)];
                if (overrides_.forced_batch_order && sequential_gt(p_)) {
                    const auto& order =
                        (*overrides_.forced_batch_order)[size_t(iteration - 1)];
                    if (int(order.size()) != K_)
                        throw std::invalid_argument("forced order length != K");
                    for (auto& entry : batch) {
                        const auto it = std::find(order.begin(), order.end(), entry.client);
                        if (it == order.end())
                            throw std::invalid_argument("forced order misses a client");
                        entry.static_rank = int(it - order.begin());
                    }
                    batch_forced_[size_t(iteration)] = true;
                }
                for (const auto& entry : batch) queue.push_back(entry);
                batch.clear();
            }
        } else {
            queue.push_back(e);
        }
    }

    Discipline effective_discipline(int iteration) const {
        if (overrides_.static_priority) return Discipline::Static;
        if (synchronous_release(p_) && iteration > 0 && batch_forced_.count(size_t(iteration)))
            return Discipline::Static;
        return fcfs_discipline(p_) ? Discipline::Fcfs : Discipline::Priority;
    }

    void pop_best(std::vector<QueueEntry>& queue, QueueEntry& best_out) {
        size_t best = 0;
        const Discipline d = effective_discipline(queue.front().iteration);
        for (size_t j = 1; j < queue.size(); ++j)
            if (serve_before(queue[j], queue[best], d)) best = j;
        best_out = queue[best];
        queue.erase(queue.begin() + long(best));
    }

    void dispatch(double t) {
        if (sequential_gt(p_)) {
            while (active_gt_key_ < 0 && !gt_queue_.empty()) {
                QueueEntry e;
                pop_best(gt_queue_, e);
                const double dur = cost_.sg_full(e.client, t);
                start_step(EventKind::SgDone, e.client, e.iteration, t, dur);
                // a zero-duration GT releases the link within this tick
                if (dur > 0.0) active_gt_key_ = key(EventKind::SgDone, e.client, e.iteration);
            }
        }
        if (sequential_compute(p_)) {
            while (active_compute_key_ < 0 && !compute_queue_.empty()) {
                QueueEntry e;
                pop_best(compute_queue_, e);
                const double dur = cost_.server_full();
                start_step(EventKind::ServerDone, e.client, e.iteration, t, dur);
                if (dur > 0.0)
                    active_compute_key_ = key(EventKind::ServerDone, e.client, e.iteration);
            }
        }
    }

    Paradigm p_;
    const StepCostModel& cost_;
    int K_, I_;
    double t0_;
    SimOverrides overrides_;

    std::priority_queue<EvRec, std::vector<EvRec>, EvLater> heap_;
    std::map<int64_t, double> start_time_;
    std::vector<int> static_rank_;

    int64_t active_gt_key_ = -1;
    int64_t active_compute_key_ = -1;
    std::vector<QueueEntry> gt_queue_;
    std::vector<QueueEntry> compute_queue_;
    std::vector<int> arrivals_;
    std::vector<std::vector<QueueEntry>> batch_pending_;
    std::map<size_t, bool> batch_forced_;

    double last_time_ = 0.0;
    RoundOutcome out_;
};

}  // namespace

RoundOutcome simulate_round(Paradigm p, const StepCostModel& cost, int iterations,
                            double t_start, const SimOverrides& overrides) {
    RoundSim sim(p, cost, iterations, t_start, overrides);
    return sim.run();
}

RoundOutcome simulate_round(Paradigm p, const Scenario& s, const RoundPlan& plan,
                            const std::vector<Trajectory>& trajectories, double t_start) {
    validate_plan(plan, s, paradigm_needs_rho(p));
    ChannelCostModel cost(s, plan, trajectories);
    return simulate_round(p, cost, s.config.local_iterations, t_start);
}

std::vector<RoundOutcome> run_training(Paradigm p,
                                       const std::function<RoundPlan(int)>& plan_source,
                                       const Scenario& s,
                                       const std::vector<Trajectory>& trajectories,
                                       int rounds, double t_start) {
    std::vector<RoundOutcome> out;
    out.reserve(size_t(rounds));
    double t = t_start;
    for (int n = 0; n < rounds; ++n) {
        RoundPlan plan = plan_source(n);
        plan.round = n;
        out.push_back(simulate_round(p, s, plan, trajectories, t));
        t = out.back().t_end;
    }
    return out;
}

}  // namespace sfl
