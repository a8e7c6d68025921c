#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sfl/analytics.hpp"
#include "sfl/instance.hpp"
#include "sfl/latency.hpp"

namespace sfl {

// Training paradigms, distinguished by how the server shares its compute
// (parallel fractions vs one task at a time) and the downlink (one GT at a
// time at full resources vs dedicated fractions), and by the GT / compute
// scheduling discipline.
enum class Paradigm {
    SflPP,         // everything parallel, fractional downlink
    VanillaSflPS,  // sequential GT, synchronous release, FCFS order
    CpsflNoAT,     // sequential GT, synchronous release, lag priority
    CpsflNoPS,     // sequential GT, asynchronous, FCFS order
    Cpsfl,         // sequential GT, asynchronous, lag priority
    PipeSfl,       // sequential compute, asynchronous, lag' priority
    PipeSflNoAT,   // sequential compute, synchronous release, lag' priority
    PipeSflNoPS,   // sequential compute, asynchronous, FCFS order
};

constexpr Paradigm kAllParadigms[] = {
    Paradigm::SflPP,      Paradigm::VanillaSflPS, Paradigm::CpsflNoAT,
    Paradigm::CpsflNoPS,  Paradigm::Cpsfl,        Paradigm::PipeSfl,
    Paradigm::PipeSflNoAT, Paradigm::PipeSflNoPS,
};

const char* paradigm_name(Paradigm p);
std::optional<Paradigm> paradigm_from_name(const std::string& name);
// true for paradigms whose downlink GT uses per-client (beta, rho) fractions
bool paradigm_needs_rho(Paradigm p);

enum class EventKind { SmDone, CfDone, CaDone, ServerDone, SgDone, CbDone, CmDone };
const char* event_kind_name(EventKind k);

struct Event {
    double time = 0;
    EventKind kind{};
    int client = 0;
    int iteration = 0;
};

struct StepWindow {
    EventKind kind{};
    int client = 0;
    int iteration = 0;
    double start = 0;
    double end = 0;
};

struct RoundOutcome {
    double t_start = 0;
    double t_end = 0;
    double tau_round = 0;
    std::vector<double> energy_j;  // e_k for the round
    std::vector<Event> events;
    std::vector<StepWindow> windows;
    StepLatencies steps;
    EnergyLedger ledger;

    double max_energy() const;
    double objective(double lambda) const { return tau_round + lambda * max_energy(); }
};

// Where step durations come from. The channel-backed model slot-walks the
// configured trajectories; the instance-backed model replays fixed durations
// so event logs can be compared against the closed forms exactly.
class StepCostModel {
public:
    virtual ~StepCostModel() = default;
    virtual int num_clients() const = 0;
    virtual double sigma() const = 0;

    virtual double sm(int k, double t_start) const = 0;
    virtual double cf(int k) const = 0;
    virtual double ca(int k, double t_start) const = 0;
    virtual double server_frac(int k) const = 0;  // dedicated alpha_k share
    virtual double server_full() const = 0;       // whole server frequency
    virtual double sg_full(int k, double t_start) const = 0;
    virtual double sg_frac(int k, double t_start) const = 0;
    virtual double cb(int k) const = 0;
    virtual double cm(int k, double t_start) const = 0;
    // estimate of sg_frac used for the compute priority, evaluated from the
    // channel in the slot containing t (no look-ahead)
    virtual double sg_frac_estimate(int k, double t) const = 0;

    virtual double compute_energy_j(int k, double duration) const = 0;
    virtual double transmit_energy_j(int k, double duration) const = 0;
};

class ChannelCostModel final : public StepCostModel {
public:
    ChannelCostModel(const Scenario& s, const RoundPlan& plan,
                     const std::vector<Trajectory>& trajectories);

    int num_clients() const override { return scenario_->num_clients(); }
    double sigma() const override { return scenario_->config.sigma; }
    double sm(int k, double t_start) const override;
    double cf(int k) const override;
    double ca(int k, double t_start) const override;
    double server_frac(int k) const override;
    double server_full() const override;
    double sg_full(int k, double t_start) const override;
    double sg_frac(int k, double t_start) const override;
    double cb(int k) const override;
    double cm(int k, double t_start) const override;
    double sg_frac_estimate(int k, double t) const override;
    double compute_energy_j(int k, double duration) const override;
    double transmit_energy_j(int k, double duration) const override;

private:
    const Scenario* scenario_;
    RoundPlan plan_;
    const std::vector<Trajectory>* trajectories_;
    const SplitProfile* split_;
};

class InstanceCostModel final : public StepCostModel {
public:
    explicit InstanceCostModel(const LatencyInstance& inst) : inst_(inst) {}

    int num_clients() const override { return inst_.num_clients; }
    double sigma() const override { return inst_.sigma; }
    double sm(int k, double) const override { return inst_.tau_sm[size_t(k)]; }
    double cf(int k) const override { return inst_.tau_cf[size_t(k)]; }
    double ca(int k, double) const override { return inst_.tau_ca[size_t(k)]; }
    double server_frac(int k) const override { return inst_.tau_s[size_t(k)]; }
    double server_full() const override { return inst_.tau_s_full; }
    double sg_full(int k, double) const override { return inst_.tau_sg[size_t(k)]; }
    double sg_frac(int k, double) const override { return inst_.tau_sg_frac[size_t(k)]; }
    double cb(int k) const override { return inst_.tau_cb[size_t(k)]; }
    double cm(int k, double) const override { return inst_.tau_cm[size_t(k)]; }
    double sg_frac_estimate(int k, double) const override {
        return inst_.tau_sg_frac[size_t(k)];
    }
    double compute_energy_j(int, double) const override { return 0.0; }
    double transmit_energy_j(int, double) const override { return 0.0; }

private:
    LatencyInstance inst_;
};

// Scheduling overrides used by the exhaustive oracles.
struct SimOverrides {
    // fixed total order applied whenever the shared queue is consulted;
    // position 0 has the highest priority
    std::optional<std::vector<int>> static_priority;
    // forced GT order per iteration for synchronous sequential-GT paradigms
    std::optional<std::vector<std::vector<int>>> forced_batch_order;
};

// Runs one training round of the given paradigm, starting its broadcast at
// t_start, and returns the full event log, realized step durations, and the
// per-client energy. Deterministic; ties are broken by client index.
RoundOutcome simulate_round(Paradigm p, const StepCostModel& cost, int iterations,
                            double t_start, const SimOverrides& overrides = {});

// Convenience entry for channel-backed rounds.
RoundOutcome simulate_round(Paradigm p, const Scenario& s, const RoundPlan& plan,
                            const std::vector<Trajectory>& trajectories, double t_start);

// Runs `rounds` back-to-back rounds (round n+1 broadcasts as soon as the
// last TP upload of round n lands) against the shared trajectory timeline.
std::vector<RoundOutcome> run_training(Paradigm p,
                                       const std::function<RoundPlan(int)>& plan_source,
                                       const Scenario& s,
                                       const std::vector<Trajectory>& trajectories,
                                       int rounds, double t_start = 0.0);

}  // namespace sfl
