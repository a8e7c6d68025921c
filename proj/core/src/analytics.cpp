#include "sfl/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace sfl {

LatencyInstance sorted_by_lag(const LatencyInstance& inst) {
    std::vector<int> idx = inst.order_by_lag();
    LatencyInstance out = inst;
    auto permute = [&](std::vector<double>& dst, const std::vector<double>& src) {
        for (int j = 0; j < inst.num_clients; ++j) dst[size_t(j)] = src[size_t(idx[size_t(j)])];
    };
    permute(out.tau_sm, inst.tau_sm);
    permute(out.tau_cf, inst.tau_cf);
    permute(out.tau_ca, inst.tau_ca);
    permute(out.tau_s, inst.tau_s);
    permute(out.tau_sg, inst.tau_sg);
    permute(out.tau_cb, inst.tau_cb);
    permute(out.tau_cm, inst.tau_cm);
    permute(out.tau_sg_frac, inst.tau_sg_frac);
    return out;
}

double t_iter(const LatencyInstance& inst, const std::vector<int>& order) {
    if (int(order.size()) != inst.num_clients)
        throw std::invalid_argument("t_iter: order length mismatch");
    double cum = 0.0, worst = 0.0;
    for (int k : order) {
        cum += inst.tau_sg[size_t(k)];
        worst = std::max(worst, cum + inst.lag(k));
    }
    return worst;
}

namespace {

std::vector<int> descending_lag_order(const LatencyInstance& inst) {
    std::vector<int> order = inst.order_by_lag();
    std::reverse(order.begin(), order.end());
    return order;
}

double max_over(const LatencyInstance& inst, const std::function<double(int)>& f) {
    double m = -1e300;
    for (int k = 0; k < inst.num_clients; ++k) m = std::max(m, f(k));
    return m;
}

double sum_sg(const LatencyInstance& inst) {
    double s = 0.0;
    for (double v : inst.tau_sg) s += v;
    return s;
}

}  // namespace

double tau_max(const LatencyInstance& inst) {
    const int I = inst.iterations;
    double v = max_over(inst, [&](int k) { return inst.tau_sm[size_t(k)]; });
    v += max_over(inst, [&](int k) {
        return inst.tau_cf[size_t(k)] + inst.tau_ca[size_t(k)] + inst.tau_s[size_t(k)];
    });
    const double max_lag = max_over(inst, [&](int k) { return inst.lag(k); });
    v += double(I - 1) * (sum_sg(inst) + max_lag);
    v += sum_sg(inst);
    v += max_over(inst, [&](int k) { return inst.tau_cb[size_t(k)] + inst.tau_cm[size_t(k)]; });
    return v;
}

double tau2(const LatencyInstance& inst, bool include_cm) {
    const std::vector<int> order = descending_lag_order(inst);
    double v = max_over(inst, [&](int k) {
        return inst.tau_cf[size_t(k)] + inst.tau_ca[size_t(k)] + inst.tau_s[size_t(k)];
    });
    v += double(inst.iterations - 1) * t_iter(inst, order);
    double cum = 0.0, tail = 0.0;
    for (int k : order) {
        cum += inst.tau_sg[size_t(k)];
        double t = cum + inst.tau_cb[size_t(k)];
        if (include_cm) t += inst.tau_cm[size_t(k)];
        tail = std::max(tail, t);
    }
    return v + tail;
}

double tau2_hat(const LatencyInstance& inst) {
    return double(inst.iterations) * t_iter(inst, descending_lag_order(inst));
}

CpsflBounds cpsfl_bounds(const LatencyInstance& inst) {
    const int first = inst.order_by_lag().front();  // smallest lag
    CpsflBounds b;
    b.lower = inst.tau_cf[size_t(first)] + inst.tau_ca[size_t(first)] +
              inst.tau_s[size_t(first)] + double(inst.iterations) * sum_sg(inst) +
              inst.tau_cb[size_t(first)];
    b.upper = tau2(inst);
    return b;
}

double tau_pp(const LatencyInstance& inst, bool include_cm) {
    double per_iter = max_over(inst, [&](int k) {
        return inst.tau_cf[size_t(k)] + inst.tau_ca[size_t(k)] + inst.tau_s[size_t(k)] +
               inst.tau_sg_frac[size_t(k)] + inst.tau_cb[size_t(k)];
    });
    double v = double(inst.iterations) * per_iter;
    if (include_cm)
        v += max_over(inst, [&](int k) { return inst.tau_cm[size_t(k)]; });
    return v;
}

double tau3(const LatencyInstance& inst, bool include_cm) {
    const std::vector<int> asc = inst.order_by_lag_prime();
    const int K = inst.num_clients;
    double v = max_over(inst, [&](int k) {
        return inst.tau_cf[size_t(k)] + inst.tau_ca[size_t(k)];
    });
    double mid = 0.0, tail = 0.0;
    for (int j = 0; j < K; ++j) {
        const int k = asc[size_t(j)];
        const double computes = double(K - j) * inst.tau_s_full;
        mid = std::max(mid, computes + inst.lag_prime(k));
        double t = computes + inst.tau_sg_frac[size_t(k)] + inst.tau_cb[size_t(k)];
        if (include_cm) t += inst.tau_cm[size_t(k)];
        tail = std::max(tail, t);
    }
    return v + double(inst.iterations - 1) * mid + tail;
}

double tau3_hat(const LatencyInstance& inst) {
    const std::vector<int> asc = inst.order_by_lag_prime();
    const int K = inst.num_clients;
    double mid = 0.0;
    for (int j = 0; j < K; ++j) {
        const int k = asc[size_t(j)];
        mid = std::max(mid, double(K - j) * inst.tau_s_full + inst.lag_prime(k));
    }
    return double(inst.iterations) * mid;
}

namespace {
constexpr double kPredicateSlack = 1e-12;
}

bool case1_predicate(const LatencyInstance& inst) {
    // max_k { sum_{j>=k} tau_SG_j + tau_CA_k } <= max_k { tau_SG'_k + tau_CA_k },
    // left side indexed in ascending-lag order
    const std::vector<int> asc = inst.order_by_lag();
    const int K = inst.num_clients;
    double lhs = 0.0;
    for (int j = 0; j < K; ++j) {
        double cum = 0.0;
        for (int m = j; m < K; ++m) cum += inst.tau_sg[size_t(asc[size_t(m)])];
        lhs = std::max(lhs, cum + inst.tau_ca[size_t(asc[size_t(j)])]);
    }
    const double rhs = max_over(inst, [&](int k) {
        return inst.tau_sg_frac[size_t(k)] + inst.tau_ca[size_t(k)];
    });
    return lhs <= rhs * (1.0 + kPredicateSlack) + kPredicateSlack;
}

bool case2_predicate(const LatencyInstance& inst) {
    // max_k { (K-k+1) tau_S' + tau_CF_k + tau_CB_k } <=
    //   max_k { tau_S_k + tau_CF_k + tau_CB_k },
    // left side indexed in ascending-lag_prime order
    const std::vector<int> asc = inst.order_by_lag_prime();
    const int K = inst.num_clients;
    double lhs = 0.0;
    for (int j = 0; j < K; ++j) {
        const int k = asc[size_t(j)];
        lhs = std::max(lhs, double(K - j) * inst.tau_s_full + inst.tau_cf[size_t(k)] +
                                inst.tau_cb[size_t(k)]);
    }
    const double rhs = max_over(inst, [&](int k) {
        return inst.tau_s[size_t(k)] + inst.tau_cf[size_t(k)] + inst.tau_cb[size_t(k)];
    });
    return lhs <= rhs * (1.0 + kPredicateSlack) + kPredicateSlack;
}

LatencyInstance snapshot_from_steps(const StepLatencies& steps, double sigma) {
    LatencyInstance inst;
    inst.resize(steps.num_clients);
    inst.iterations = steps.iterations;
    inst.sigma = sigma;
    for (int k = 0; k < steps.num_clients; ++k) {
        double cf = 0, ca = 0, s = 0, sg = 0, cb = 0;
        for (int i = 1; i <= steps.iterations; ++i) {
            cf += steps.cf(k, i);
            ca += steps.ca(k, i);
            s += steps.s(k, i);
            sg += steps.sg(k, i);
            cb += steps.cb(k, i);
        }
        const double inv = 1.0 / double(steps.iterations);
        inst.tau_cf[size_t(k)] = cf * inv;
        inst.tau_ca[size_t(k)] = ca * inv;
        inst.tau_s[size_t(k)] = s * inv;
        inst.tau_sg[size_t(k)] = sg * inv;
        inst.tau_cb[size_t(k)] = cb * inv;
    }
    return inst;
}

}  // namespace sfl
