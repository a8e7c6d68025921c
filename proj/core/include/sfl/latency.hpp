#pragma once

#include <optional>
#include <vector>

#include "sfl/airspace.hpp"
#include "sfl/scenario.hpp"

namespace sfl {

// Per-round decision: split point plus the resource-fraction vectors. rho is
// only present for paradigms with fractional (parallel) downlink GT.
struct RoundPlan {
    int round = 0;
    int split_u = 0;
    std::vector<double> alpha;  // server-frequency fractions, sum 1
    std::vector<double> beta;   // uplink-bandwidth fractions, sum 1
    std::optional<std::vector<double>> rho;  // downlink-power fractions

    static RoundPlan uniform(int round, int split_u, int num_clients, bool with_rho);
};

// Throws ConfigError naming the offending entry if the plan violates the
// simplex or bound constraints for the given scenario.
void validate_plan(const RoundPlan& plan, const Scenario& s, bool needs_rho);

// ---- compute-step latencies (exact closed forms) -------------------------

// B * Psi_CF(u) / (kappa_k f_k)
double client_fp_latency(int batch, const SplitProfile& sp, const ClientProfile& cl);
// B * Psi_CB(u) / (kappa_k f_k)
double client_bp_latency(int batch, const SplitProfile& sp, const ClientProfile& cl);
// B * (Psi_SF + Psi_SB) / (kappa_S alpha_k f_S); alpha_k = 1 gives the
// full-frequency latency used by sequential-compute paradigms
double server_compute_latency(int batch, const SplitProfile& sp, const ServerProfile& srv,
                              double alpha_k);

// ---- per-step energies ----------------------------------------------------

// omega_k f_k^3 * tau  (forward or backward pass)
double compute_energy(const ClientProfile& cl, double duration_s);
// p_k * tau  (any client-side transmission)
double transmit_energy(const ClientProfile& cl, double duration_s);

// ---- realized per-round records -------------------------------------------

// Realized step durations for one round; iteration index is 1-based in the
// accessors, storage is 0-based.
struct StepLatencies {
    int num_clients = 0;
    int iterations = 0;
    std::vector<double> tau_sm;  // per client
    std::vector<double> tau_cm;  // per client
    std::vector<double> tau_cf, tau_ca, tau_s, tau_sg, tau_cb;  // K*I, client-major

    void resize(int clients, int iters);
    double& at(std::vector<double>& v, int k, int i) { return v[size_t(k) * iterations + (i - 1)]; }
    double get(const std::vector<double>& v, int k, int i) const {
        return v[size_t(k) * iterations + (i - 1)];
    }
    double cf(int k, int i) const { return get(tau_cf, k, i); }
    double ca(int k, int i) const { return get(tau_ca, k, i); }
    double s(int k, int i) const { return get(tau_s, k, i); }
    double sg(int k, int i) const { return get(tau_sg, k, i); }
    double cb(int k, int i) const { return get(tau_cb, k, i); }
};

// Per-client energy bookkeeping with the component identity
// e_k = sum_i (e_f + e_a + e_b) + e_m.
struct EnergyLedger {
    struct ClientEnergy {
        std::vector<double> e_f, e_a, e_b;  // per iteration
        double e_m = 0;
        double total() const;
    };
    std::vector<ClientEnergy> clients;

    void resize(int num_clients, int iterations);
    std::vector<double> totals() const;
};

// Lag of client k at iteration i:
//   tau_CB(i-1) + tau_CF(i) + tau_CA(i) + tau_S(i)
// with the i=1 backward-pass term bootstrapped as sigma * tau_CF(1).
double lag_cpsfl(int k, int i, const StepLatencies& steps, double sigma);

// PipeSFL lag: tau_CF + tau_CA + tau_SG' + tau_CB, where tau_SG' is the
// caller's estimate of the fractional downlink GT latency (the transmission
// has not happened when the priority is assigned) and tau_CB the known
// client BP latency.
double lag_pipesfl(double tau_cf, double tau_ca, double sg_estimate, double tau_cb);

}  // namespace sfl
