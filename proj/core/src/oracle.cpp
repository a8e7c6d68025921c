#include "sfl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "sfl/analytics.hpp"

namespace sfl {

namespace {

void check_factorial_guard(int k, int limit, const char* what) {
    if (k > limit)
        throw std::invalid_argument(std::string(what) + ": K = " + std::to_string(k) +
                                    " exceeds the exhaustive-search limit of " +
                                    std::to_string(limit));
}

template <typename Eval>
OrderSearchResult search_orders(const LatencyInstance& inst, bool minimize, Eval eval) {
    std::vector<int> perm(size_t(inst.num_clients));
    std::iota(perm.begin(), perm.end(), 0);

    OrderSearchResult res;
    bool first = true;
    do {
        const double v = eval(perm);
        res.table.emplace_back(perm, v);
        const bool better = minimize ? v < res.best_value : v > res.best_value;
        if (first || better) {
            res.best_value = v;
            res.best_order = perm;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return res;
}

}  // namespace

OrderSearchResult best_order_sync(const LatencyInstance& inst) {
    check_factorial_guard(inst.num_clients, 8, "best_order_sync");
    return search_orders(inst, true,
                         [&](const std::vector<int>& o) { return t_iter(inst, o); });
}

OrderSearchResult worst_order_sync(const LatencyInstance& inst) {
    check_factorial_guard(inst.num_clients, 8, "worst_order_sync");
    return search_orders(inst, false,
                         [&](const std::vector<int>& o) { return t_iter(inst, o); });
}

double worst_case_sync_round(const LatencyInstance& inst) {
    check_factorial_guard(inst.num_clients, 8, "worst_case_sync_round");
    const int K = inst.num_clients;

    // worst order for the recurring batches (per-iteration latency)
    const OrderSearchResult mid = worst_order_sync(inst);

    // worst order for the final batch, whose tail is CB + CM instead of lag
    std::vector<int> perm(size_t(K));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> tail_order = perm;
    double tail_worst = -1.0;
    do {
        double cum = 0.0, v = 0.0;
        for (int k : perm) {
            cum += inst.tau_sg[size_t(k)];
            v = std::max(v, cum + inst.tau_cb[size_t(k)] + inst.tau_cm[size_t(k)]);
        }
        if (v > tail_worst) {
            tail_worst = v;
            tail_order = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::vector<int>> batches(size_t(inst.iterations), mid.best_order);
    batches.back() = tail_order;

    SimOverrides ov;
    ov.forced_batch_order = batches;
    InstanceCostModel cost(inst);
    return simulate_round(Paradigm::VanillaSflPS, cost, inst.iterations, 0.0, ov).tau_round;
}

OrderSearchResult best_static_order_async(const LatencyInstance& inst) {
    check_factorial_guard(inst.num_clients, 6, "best_static_order_async");
    const AssumptionReport rep = check_assumptions(inst);
    if (!rep.all_hold())
        throw std::invalid_argument("best_static_order_async: instance violates the "
                                    "analysis assumptions (" + rep.summary() + ")");

    InstanceCostModel cost(inst);
    return search_orders(inst, true, [&](const std::vector<int>& o) {
        SimOverrides ov;
        ov.static_priority = o;
        return simulate_round(Paradigm::Cpsfl, cost, inst.iterations, 0.0, ov).tau_round;
    });
}

std::string AssumptionReport::summary() const {
    std::ostringstream os;
    os.precision(6);
    os << "channel_constant=" << (channel_constant ? "yes" : "no")
       << " cm_share=" << cm_share << (cm_negligible ? " (ok)" : " (violated)")
       << " sg_spread=" << sg_relative_spread << (sg_equal ? " (ok)" : " (violated)");
    return os.str();
}

AssumptionReport check_assumptions(const LatencyInstance& inst, double cm_threshold,
                                   double sg_threshold) {
    AssumptionReport rep;
    rep.channel_constant = true;  // an instance is a constant-channel object

    double sg_min = 1e300, sg_max = 0, sg_sum = 0;
    for (double v : inst.tau_sg) {
        sg_min = std::min(sg_min, v);
        sg_max = std::max(sg_max, v);
        sg_sum += v;
    }
    const double sg_mean = sg_sum / double(inst.num_clients);
    rep.sg_relative_spread = sg_mean > 0 ? (sg_max - sg_min) / sg_mean : 0.0;
    rep.sg_equal = rep.sg_relative_spread <= sg_threshold;

    // compare the TP upload against the approximate round length
    const double round_scale = std::max(tau2(inst), 1e-300);
    double cm_max = 0;
    for (double v : inst.tau_cm) cm_max = std::max(cm_max, v);
    rep.cm_share = cm_max / round_scale;
    rep.cm_negligible = rep.cm_share <= cm_threshold;
    return rep;
}

std::string order_search_report_json(const LatencyInstance& inst,
                                     const OrderSearchResult& result) {
    nlohmann::json j;
    // cheap structural hash so reports can be matched to their instance
    uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](double v) {
        uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        h = (h ^ bits) * 1099511628211ULL;
    };
    for (int k = 0; k < inst.num_clients; ++k) {
        mix(inst.tau_cf[size_t(k)]);
        mix(inst.tau_ca[size_t(k)]);
        mix(inst.tau_s[size_t(k)]);
        mix(inst.tau_sg[size_t(k)]);
        mix(inst.tau_cb[size_t(k)]);
        mix(inst.tau_cm[size_t(k)]);
    }
    std::ostringstream hash_hex;
    hash_hex << std::hex << h;
    j["instance_hash"] = hash_hex.str();
    j["clients"] = inst.num_clients;
    j["iterations"] = inst.iterations;
    j["best_order"] = result.best_order;
    j["best_value_s"] = result.best_value;
    nlohmann::json table = nlohmann::json::array();
    for (const auto& [order, value] : result.table)
        table.push_back({{"order", order}, {"latency_s", value}});
    j["table"] = table;
    return j.dump(2);
}

}  // namespace sfl
