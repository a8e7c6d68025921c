#pragma once

#include <string>
#include <vector>

#include "sfl/instance.hpp"
#include "sfl/paradigms.hpp"

namespace sfl {

// Exhaustive desk-scale references. These enumerate scheduling orders
// outright and are the ground truth the priority-scheduling results are
// certified against.

struct OrderSearchResult {
    std::vector<int> best_order;  // lexicographically smallest argmin
    double best_value = 0;
    std::vector<std::pair<std::vector<int>, double>> table;  // per permutation
};

// Minimizes the synchronous per-iteration latency over all K! GT orders.
// K <= 8 enforced.
OrderSearchResult best_order_sync(const LatencyInstance& inst);

// Maximizes the synchronous per-iteration latency (worst GT order).
OrderSearchResult worst_order_sync(const LatencyInstance& inst);

// Worst-case full round of the synchronous sequential-GT paradigm, allowing
// the GT order to differ per iteration batch; batches decouple at the release
// barrier, so each batch (and the final tail) is maximized independently and
// the result is realized by one simulated round with forced orders.
double worst_case_sync_round(const LatencyInstance& inst);

// Minimizes the asynchronous (intra-round pipelined) per-round latency over
// all static priority permutations by running the sequential-GT simulator
// with each. K <= 6 enforced; the instance must satisfy the constant-channel
// analysis assumptions (negligible TP upload, equal GT latencies) or the
// call throws.
OrderSearchResult best_static_order_async(const LatencyInstance& inst);

struct AssumptionReport {
    bool channel_constant = true;      // by construction for instances
    double cm_share = 0;               // max tau_cm relative to the round length
    bool cm_negligible = true;
    double sg_relative_spread = 0;     // (max - min) / mean of tau_sg
    bool sg_equal = true;

    bool all_hold() const { return channel_constant && cm_negligible && sg_equal; }
    std::string summary() const;
};

// Quantifies how far an instance is from the simplifying assumptions; the
// thresholds are the documented defaults (5% for both shares).
AssumptionReport check_assumptions(const LatencyInstance& inst,
                                   double cm_threshold = 0.05,
                                   double sg_threshold = 0.05);

// JSON report of an order search (instance hash, winner, full latency table).
std::string order_search_report_json(const LatencyInstance& inst,
                                     const OrderSearchResult& result);

}  // namespace sfl
