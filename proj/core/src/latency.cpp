#include "sfl/latency.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace sfl {

RoundPlan RoundPlan::uniform(int round, int split_u, int num_clients, bool with_rho) {
    RoundPlan p;
    p.round = round;
    p.split_u = split_u;
    p.alpha.assign(size_t(num_clients), 1.0 / double(num_clients));
    p.beta = p.alpha;
    if (with_rho) p.rho = p.alpha;
    return p;
}

namespace {

void check_simplex(const std::vector<double>& v, double lo, const char* name, int k_expected) {
    if (int(v.size()) != k_expected)
        throw ConfigError(std::string("plan: ") + name + " has wrong length");
    double sum = 0.0;
    for (size_t k = 0; k < v.size(); ++k) {
        if (!(v[k] >= lo - 1e-12) || !(v[k] <= 1.0 + 1e-12)) {
            std::ostringstream os;
            os.precision(17);
            os << "plan: " << name << "[" << k << "] = " << v[k]
               << " outside [" << lo << ", 1]";
            throw ConfigError(os.str());
        }
        sum += v[k];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << "plan: sum(" << name << ") = " << sum << " != 1";
        throw ConfigError(os.str());
    }
}

}  // namespace

void validate_plan(const RoundPlan& plan, const Scenario& s, bool needs_rho) {
    bool in_set = false;
    for (int u : s.config.split_set) in_set |= (u == plan.split_u);
    if (!in_set)
        throw ConfigError("plan: split point " + std::to_string(plan.split_u) +
                          " not in the allowed split set");
    check_simplex(plan.alpha, s.server.alpha_min, "alpha", s.num_clients());
    check_simplex(plan.beta, s.server.beta_min, "beta", s.num_clients());
    if (needs_rho) {
        if (!plan.rho)
            throw ConfigError("plan: rho required for fractional-downlink paradigms");
        check_simplex(*plan.rho, s.server.rho_min, "rho", s.num_clients());
    }
}

double client_fp_latency(int batch, const SplitProfile& sp, const ClientProfile& cl) {
    return double(batch) * sp.psi_cf / (cl.intensity * cl.freq_hz);
}

double client_bp_latency(int batch, const SplitProfile& sp, const ClientProfile& cl) {
    return double(batch) * sp.psi_cb / (cl.intensity * cl.freq_hz);
}

double server_compute_latency(int batch, const SplitProfile& sp, const ServerProfile& srv,
                              double alpha_k) {
    if (!(alpha_k > 0.0))
        throw std::domain_error("server_compute_latency: alpha_k must be > 0");
    return double(batch) * (sp.psi_sf + sp.psi_sb) / (srv.intensity * alpha_k * srv.freq_hz);
}

double compute_energy(const ClientProfile& cl, double duration_s) {
    return cl.energy_coeff * cl.freq_hz * cl.freq_hz * cl.freq_hz * duration_s;
}

double transmit_energy(const ClientProfile& cl, double duration_s) {
    return cl.transmit_power_w * duration_s;
}

void StepLatencies::resize(int clients, int iters) {
    num_clients = clients;
    iterations = iters;
    tau_sm.assign(size_t(clients), 0.0);
    tau_cm.assign(size_t(clients), 0.0);
    const size_t n = size_t(clients) * size_t(iters);
    tau_cf.assign(n, 0.0);
    tau_ca.assign(n, 0.0);
    tau_s.assign(n, 0.0);
    tau_sg.assign(n, 0.0);
    tau_cb.assign(n, 0.0);
}

double EnergyLedger::ClientEnergy::total() const {
    double t = e_m;
    for (double v : e_f) t += v;
    for (double v : e_a) t += v;
    for (double v : e_b) t += v;
    return t;
}

void EnergyLedger::resize(int num_clients, int iterations) {
    clients.assign(size_t(num_clients), {});
    for (auto& c : clients) {
        c.e_f.assign(size_t(iterations), 0.0);
        c.e_a.assign(size_t(iterations), 0.0);
        c.e_b.assign(size_t(iterations), 0.0);
        c.e_m = 0.0;
    }
}

std::vector<double> EnergyLedger::totals() const {
    std::vector<double> out;
    out.reserve(clients.size());
    for (const auto& c : clients) out.push_back(c.total());
    return out;
}

double lag_cpsfl(int k, int i, const StepLatencies& steps, double sigma) {
    if (i < 1 || i > steps.iterations)
        throw std::out_of_range("lag_cpsfl: iteration index out of range");
    const double prev_cb = (i == 1) ? sigma * steps.cf(k, 1) : steps.cb(k, i - 1);
    return prev_cb + steps.cf(k, i) + steps.ca(k, i) + steps.s(k, i);
}

double lag_pipesfl(double tau_cf, double tau_ca, double sg_estimate, double tau_cb) {
    return tau_cf + tau_ca + sg_estimate + tau_cb;
}

}  // namespace sfl
