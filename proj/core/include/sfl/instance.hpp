#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

namespace sfl {

// Constant-channel snapshot of one round: a single realized duration per
// client and step kind. Drives both the closed-form latency expressions and
// the instance-backed simulator, so formulas and event logs can be compared
// on identical inputs. tau_sg holds the sequential-GT (full downlink)
// latencies, tau_sg_frac the fractional-downlink ones, tau_s the
// dedicated-fraction server latencies and tau_s_full the full-frequency one.
struct LatencyInstance {
    int num_clients = 0;
    int iterations = 1;
    double sigma = 2.0;  // BP/FP ratio, used for the first-iteration lag bootstrap

    std::vector<double> tau_sm;       // per client, usually zero in analysis
    std::vector<double> tau_cf, tau_ca, tau_s, tau_sg, tau_cb, tau_cm;
    std::vector<double> tau_sg_frac;  // parallel-GT latency per client
    double tau_s_full = 0.0;          // sequential-compute latency (shared)

    void resize(int clients) {
        num_clients = clients;
        tau_sm.assign(size_t(clients), 0.0);
        tau_cf.assign(size_t(clients), 0.0);
        tau_ca.assign(size_t(clients), 0.0);
        tau_s.assign(size_t(clients), 0.0);
        tau_sg.assign(size_t(clients), 0.0);
        tau_cb.assign(size_t(clients), 0.0);
        tau_cm.assign(size_t(clients), 0.0);
        tau_sg_frac.assign(size_t(clients), 0.0);
    }

    double lag(int k) const { return tau_cb[k] + tau_cf[k] + tau_ca[k] + tau_s[k]; }
    double lag_prime(int k) const {
        return tau_cf[k] + tau_ca[k] + tau_sg_frac[k] + tau_cb[k];
    }

    // client indices ordered by ascending lag, ties by index
    std::vector<int> order_by_lag() const {
        std::vector<int> idx(size_t(num_clients));
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return lag(a) < lag(b); });
        return idx;
    }

    std::vector<int> order_by_lag_prime() const {
        std::vector<int> idx(size_t(num_clients));
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return lag_prime(a) < lag_prime(b); });
        return idx;
    }
};

// Permuted copy with clients relabelled in ascending-lag order.
LatencyInstance sorted_by_lag(const LatencyInstance& inst);

}  // namespace sfl
