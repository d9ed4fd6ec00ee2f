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

#ifndef WPMEC_CONFIG_HPP_
#define WPMEC_CONFIG_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wpmec {

// Drop prices at or above this value stand in for p -> infinity: the discard
// rule never fires and the p^2 terms stay finite.
inline constexpr double kInfiniteDropPrice = 1e9;

inline bool is_infinite_price(double p) { return p >= kInfiniteDropPrice; }

// Shape of the bounded i.i.d. arrival and AP-processing processes. Each draw
// lies in [0, max].
//   kUniform   -> Uniform(0, max)
//   kConstant  -> param * max every slot
//   kBernoulli -> max with probability param, else 0
enum class Distribution { kUniform, kConstant, kBernoulli };

// What counts as throughput in RunMetrics: mass delivered to the AP
// (min(c_i, Q_i)) or mass admitted into the device queues.
enum class ThroughputAccounting { kDelivered, kAdmitted };

std::string_view to_string(Distribution d);
Distribution parse_distribution(std::string_view s);
std::string_view to_string(ThroughputAccounting a);
ThroughputAccounting parse_accounting(std::string_view s);

// Every physical, algorithmic and experiment parameter of one cell.
//
// Backlog-like quantities (a_max, r_max, c_max, epsilon, and all queues) are
// expressed in internal units of unit_scale_bits bits; the default 1e6 makes
// them megabits. One slot lasts slot_seconds, so with the default 1 s a
// Mb/s rate equals a Mb/slot budget.
struct SystemConfig {
  std::size_t n_devices = 10;
  double bandwidth_hz = 0.2e6;
  double ap_power_w = 2.0;
  double noise_w = 1e-9;
  double path_loss_exp = 2.0;
  std::vector<double> device_distance_m;
  std::vector<double> harvest_eff;
  std::vector<double> a_max;
  std::vector<double> r_max;
  std::vector<double> c_max;
  double v_param = 400.0;
  double drop_price = 2.0;
  std::vector<double> epsilon;
  std::size_t g_max_slots = 2;
  std::size_t feedback_interval = 5;
  double slot_seconds = 1.0;
  double unit_scale_bits = 1e6;

  Distribution arrival_dist = Distribution::kUniform;
  double arrival_param = 0.5;
  Distribution proc_dist = Distribution::kUniform;
  double proc_param = 0.5;

  // Lambert-W residual accuracy and relative lambda-interval accuracy of the
  // two-level bisection in the time allocation.
  double kappa = 1e-12;
  double sigma = 1e-9;

  double pf_window = 0.1;
  std::size_t warmup_slots = 500;
  ThroughputAccounting throughput_accounting = ThroughputAccounting::kDelivered;

  // Ten devices at 3, 4, ..., 12 m; alpha = 2, W = 0.2 MHz, N0 = 1e-9 W,
  // xi = 0.8, P0 = 2 W, A_max = 1 Mb, r_max = 0.05 Mb, c_max = 2 Mb,
  // epsilon = A_max / 2.
  static SystemConfig defaults(std::size_t n_devices = 10);

  // Resizes every per-device sequence to n_devices using the default
  // per-device values, keeping entries that are already present.
  void fill_device_defaults();

  // Throws ConfigError on the first violated invariant.
  void validate() const;
};

}  // namespace wpmec

#endif  // WPMEC_CONFIG_HPP_
