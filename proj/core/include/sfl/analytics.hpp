#pragma once

#include "sfl/instance.hpp"
#include "sfl/latency.hpp"

namespace sfl {

// Closed-form per-round latency expressions evaluated on constant-channel
// instances. Unless stated otherwise the expressions omit the broadcast step
// and treat the trainable-parameter upload as negligible; set include_cm to
// fold tau_cm back in for sensitivity studies.

// Per-iteration latency of the synchronous sequential-GT round under a given
// transmission order (order[0] transmits first):
//   max over positions j of (sum of tau_sg over positions <= j) + lag.
double t_iter(const LatencyInstance& inst, const std::vector<int>& order);

// Worst-case per-round latency of the sequential-GT paradigm: every
// iteration's GT batch ends with the highest-lag client.
double tau_max(const LatencyInstance& inst);

// Per-round latency with priority scheduling but synchronous GT release.
double tau2(const LatencyInstance& inst, bool include_cm = false);
// I * t_iter under the descending-lag order; lower bound of tau2.
double tau2_hat(const LatencyInstance& inst);

struct CpsflBounds {
    double lower = 0;
    double upper = 0;
};
// lower: downlink busy the whole round except the smallest-lag client's
// lead-in and tail; upper: tau2.
CpsflBounds cpsfl_bounds(const LatencyInstance& inst);

// Fully parallel paradigm: I * max_k of the serial per-iteration chain with
// fractional downlink GT.
double tau_pp(const LatencyInstance& inst, bool include_cm = false);

// Sequential-compute paradigm with compute priority scheduling, synchronous
// release; clients are internally reindexed by ascending lag_prime.
double tau3(const LatencyInstance& inst, bool include_cm = false);
double tau3_hat(const LatencyInstance& inst);

// Sufficient conditions for one family to dominate when compute
// (respectively communication) latencies vanish. The instances are expected
// to have the corresponding latencies zeroed by the caller.
bool case1_predicate(const LatencyInstance& inst);  // sequential GT no worse
bool case2_predicate(const LatencyInstance& inst);  // sequential compute no worse

// Constant-channel snapshot of realized per-step durations: per-client mean
// across iterations, broadcast and TP-upload zeroed so the snapshot matches
// the assumptions of the closed forms above.
LatencyInstance snapshot_from_steps(const StepLatencies& steps, double sigma);

}  // namespace sfl
