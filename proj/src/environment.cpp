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

#include "wpmec/environment.hpp"

#include <algorithm>
#include <cmath>

#include "wpmec/errors.hpp"

namespace wpmec {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

double draw_bounded(Distribution dist, double param, double max,
                    std::uint64_t seed, CounterRng::Purpose purpose,
                    std::uint64_t device, std::uint64_t slot) {
  switch (dist) {
    case Distribution::kConstant:
      return param * max;
    case Distribution::kBernoulli:
      return CounterRng::uniform_open(seed, purpose, device, slot) < param
                 ? max
                 : 0.0;
    case Distribution::kUniform:
      break;
  }
  // (0,1) never reaches 1, so the draw stays strictly below max.
  return max * CounterRng::uniform_open(seed, purpose, device, slot);
}

}  // namespace

std::uint64_t CounterRng::mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t seed, Purpose purpose,
                               std::uint64_t device, std::uint64_t slot) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ (static_cast<std::uint64_t>(purpose) * kGolden));
  h = mix64(h ^ device);
  return mix64(h ^ slot);
}

double CounterRng::uniform_open(std::uint64_t seed, Purpose purpose,
                                std::uint64_t device, std::uint64_t slot) {
  const std::uint64_t top = bits(seed, purpose, device, slot) >> 11;
  return (static_cast<double>(top) + 0.5) * 0x1.0p-53;
}

double CounterRng::exponential(std::uint64_t seed, Purpose purpose,
                               std::uint64_t device, std::uint64_t slot) {
  return -std::log(uniform_open(seed, purpose, device, slot));
}

double mean_channel_gain(double distance_m, double path_loss_exp) {
  return 1e-3 * std::pow(distance_m, -path_loss_exp);
}

EnvDraw draw_slot(const SystemConfig& cfg, std::uint64_t seed,
                  std::int64_t t) {
  if (t < 0) throw ContractViolation("draw_slot: slot index must be >= 0");
  const std::size_t n = cfg.n_devices;
  const auto slot = static_cast<std::uint64_t>(t);
  EnvDraw env;
  env.gains.resize(n);
  env.arrivals.resize(n);
  env.proc.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double fading = CounterRng::exponential(
        seed, CounterRng::Purpose::kFading, i, slot);
    env.gains[i] =
        mean_channel_gain(cfg.device_distance_m[i], cfg.path_loss_exp) *
        fading;
    env.arrivals[i] =
        draw_bounded(cfg.arrival_dist, cfg.arrival_param, cfg.a_max[i], seed,
                     CounterRng::Purpose::kArrival, i, slot);
    env.proc[i] = draw_bounded(cfg.proc_dist, cfg.proc_param, cfg.r_max[i],
                               seed, CounterRng::Purpose::kProcessing, i, slot);
  }
  return env;
}

double channel_delta(const SystemConfig& cfg, double gain, std::size_t i) {
  return cfg.harvest_eff[i] * cfg.ap_power_w * gain * gain / cfg.noise_w;
}

double harvested_energy(const SystemConfig& cfg, double gain, double mu0,
                        std::size_t i) {
  if (!(mu0 >= 0.0 && mu0 <= 1.0)) {
    throw ContractViolation("harvested_energy: mu0 must lie in [0, 1]");
  }
  return cfg.harvest_eff[i] * cfg.ap_power_w * gain * mu0 * cfg.slot_seconds;
}

double shannon_rate_bps(double bandwidth_hz, double delta, double mu0,
                        double mu_i) {
  if (!(mu_i > 0.0)) return 0.0;
  return mu_i * bandwidth_hz * std::log2(1.0 + delta * mu0 / mu_i);
}

double offload_rate(const SystemConfig& cfg, double delta, double mu0,
                    double mu_i, std::size_t i) {
  if (!(mu0 >= 0.0) || !(mu_i >= 0.0)) {
    throw ContractViolation("offload_rate: shares must be >= 0");
  }
  if (mu_i == 0.0) return 0.0;
  const double units = shannon_rate_bps(cfg.bandwidth_hz, delta, mu0, mu_i) *
                       cfg.slot_seconds / cfg.unit_scale_bits;
  return std::min(cfg.c_max[i], units);
}

}  // namespace wpmec
