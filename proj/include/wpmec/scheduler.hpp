/*
Copyright 2026 The wpmec Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef WPMEC_SCHEDULER_HPP_
#define WPMEC_SCHEDULER_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wpmec/config.hpp"
#include "wpmec/environment.hpp"
#include "wpmec/model.hpp"

namespace wpmec {

// What a decision maker sees at the start of a slot. q and z may be stale
// snapshots (see FeedbackStore); s is always the AP's current backlog.
struct SlotObservation {
  std::vector<double> q;
  std::vector<double> z;
  std::vector<double> s;
  std::vector<double> delta;
  std::vector<double> arrivals;

  std::size_t size() const { return q.size(); }
  // Throws ContractViolation on length mismatch or negative entries.
  void validate() const;
};

// Theoretical constants and per-device hard bounds.
struct BoundReport {
  double b1 = 0.0;  // utility gap constant, complete feedback
  double b2 = 0.0;  // extra gap constant from feedback staleness
  std::vector<double> q_max;
  std::vector<double> z_max;
  std::vector<double> s_max;
  std::vector<std::int64_t> g_max;
};

// Collection sub-problem: min_a Q a - V log(1 + a) over [0, A].
double decide_admission(double q, double arrival, double v);

// Discard sub-problem: min_d (V p - Q - Z) d over [0, A_max]. Never drops
// under the infinite-price proxy.
double decide_discard(double q, double z, double v, double p, double a_max);

// Offloading weight (Q + Z/p - S) * W. Positive exactly for devices that may
// receive airtime.
double offload_weight(double q, double z, double s, double p,
                      double bandwidth_hz);

// Devices with S - Q - Z/p < 0, in increasing index order. Ties are excluded.
std::vector<std::size_t> select_offload_set(const SlotObservation& obs,
                                            double p);

struct TimeAllocation {
  double mu0 = 0.0;
  std::vector<double> mu;
  double lambda = 0.0;  // optimal multiplier of the time budget
  std::vector<std::size_t> active;
  std::size_t outer_iterations = 0;
};

struct AllocationTolerance {
  double kappa = 1e-12;  // Lambert residual
  double sigma = 1e-9;   // relative lambda bracket width
};

// Maximises sum_i w_i mu_i log2(1 + delta_i mu0 / mu_i) subject to
// mu0 + sum_i mu_i <= 1. Devices with w_i <= 0 or delta_i <= 0 get no
// airtime. The multiplier lambda is bisected on the mu0 stationarity
// condition; each device's SNR ratio follows from lambda through Lambert W.
TimeAllocation allocate_weighted(std::span<const double> weights,
                                 std::span<const double> delta,
                                 const AllocationTolerance& tol);

// Time allocation of the offloading sub-problem restricted to `active`.
// Throws ContractViolation when an active device has a non-positive weight or
// delta.
TimeAllocation allocate_time(const SlotObservation& obs,
                             std::span<const std::size_t> active, double p,
                             double bandwidth_hz,
                             const AllocationTolerance& tol);

// sum_i w_i mu_i log2(1 + delta_i mu0 / mu_i), with 0 for mu_i = 0.
double allocation_objective(std::span<const double> weights,
                            std::span<const double> delta, double mu0,
                            std::span<const double> mu);

struct KktResiduals {
  double mu0_stationarity = 0.0;  // |sum_i (w_i/ln2) delta_i/(1+R_i) - lambda|
  double max_device_stationarity = 0.0;  // max_i |Xi(R_i) w_i/ln2 - lambda|
  double budget = 0.0;                   // |mu0 + sum mu - 1|
};

// Residuals of the optimality conditions at a returned allocation; all zero
// for an idle slot.
KktResiduals kkt_residuals(std::span<const double> weights,
                           std::span<const double> delta,
                           const TimeAllocation& alloc);

// Hard bounds and gap constants for cfg, with c_cap standing in for c_max.
BoundReport compute_bounds(const SystemConfig& cfg,
                           std::span<const double> c_cap);
BoundReport compute_bounds(const SystemConfig& cfg);

// Full output of one slot of the proposed policy.
struct SlotPlan {
  SlotDecision decision;
  TimeAllocation allocation;
  std::vector<double> weights;
};

// The AP allocates airtime from `ap_view`; each device decides admission and
// discard from its own `device_view` (true local Q and Z). Arrivals come from
// env.
SlotPlan plan_slot(const SlotObservation& ap_view,
                   const SlotObservation& device_view, const SystemConfig& cfg,
                   const EnvDraw& env);

// Complete-information slot: both views are `obs`.
SlotDecision run_slot(const SlotObservation& obs, const SystemConfig& cfg,
                      const EnvDraw& env);

}  // namespace wpmec

#endif  // WPMEC_SCHEDULER_HPP_
