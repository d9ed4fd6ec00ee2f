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

#ifndef WPMEC_ENVIRONMENT_HPP_
#define WPMEC_ENVIRONMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wpmec/config.hpp"

namespace wpmec {

// Stateless counter-based generator. Every value is a SplitMix64-style hash of
// (seed, purpose, device, slot), so streams are independent per device and per
// purpose and adding devices never perturbs existing streams. Only integer
// arithmetic is involved before the final conversion, which keeps sequences
// identical across platforms.
class CounterRng {
 public:
  enum class Purpose : std::uint32_t { kFading = 1, kArrival = 2, kProcessing = 3 };

  static std::uint64_t mix64(std::uint64_t x);
  static std::uint64_t bits(std::uint64_t seed, Purpose purpose,
                            std::uint64_t device, std::uint64_t slot);
  // Uniform on the open interval (0, 1).
  static double uniform_open(std::uint64_t seed, Purpose purpose,
                             std::uint64_t device, std::uint64_t slot);
  // Exp(1) by inversion.
  static double exponential(std::uint64_t seed, Purpose purpose,
                            std::uint64_t device, std::uint64_t slot);
};

// Random inputs of one slot: channel power gains h_i(t), collectable data
// A_i(t) and AP processing budget r_i(t).
struct EnvDraw {
  std::vector<double> gains;
  std::vector<double> arrivals;
  std::vector<double> proc;
};

// Deterministic in (seed, t, device). gains_i = 1e-3 d_i^-alpha Exp(1).
EnvDraw draw_slot(const SystemConfig& cfg, std::uint64_t seed, std::int64_t t);

// Large-scale part of the channel gain: 1e-3 d^-alpha.
double mean_channel_gain(double distance_m, double path_loss_exp);

// delta_i = xi_i P0 h_i^2 / N0.
double channel_delta(const SystemConfig& cfg, double gain, std::size_t i);

// Energy harvested during the WPT share mu0, in joules.
double harvested_energy(const SystemConfig& cfg, double gain, double mu0,
                        std::size_t i);

// Offloading rate in internal units per slot, capped at c_max_i; 0 when
// mu_i = 0.
double offload_rate(const SystemConfig& cfg, double delta, double mu0,
                    double mu_i, std::size_t i);

// Uncapped rate in bits per second for the given shares.
double shannon_rate_bps(double bandwidth_hz, double delta, double mu0,
                        double mu_i);

}  // namespace wpmec

#endif  // WPMEC_ENVIRONMENT_HPP_
