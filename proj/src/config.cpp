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

#include "wpmec/config.hpp"

#include <cmath>
#include <sstream>

#include "wpmec/errors.hpp"

namespace wpmec {
namespace {

void fit(std::vector<double>& seq, std::size_t n, double fallback) {
  if (seq.empty()) {
    seq.assign(n, fallback);
  } else if (seq.size() == 1 && n > 1) {
    seq.assign(n, seq.front());
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void require_sequence(const std::vector<double>& seq, std::size_t n,
                      const char* name, bool (*valid)(double),
                      const char* rule) {
  require(seq.size() == n, std::string(name) + ": expected " +
                               std::to_string(n) + " entries, got " +
                               std::to_string(seq.size()));
  for (std::size_t i = 0; i < n; ++i) {
    if (!valid(seq[i])) {
      std::ostringstream msg;
      msg << name << "[" << i << "] = " << seq[i] << " violates " << rule;
      throw ConfigError(msg.str());
    }
  }
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }
bool unit_efficiency(double x) { return x > 0.0 && x <= 1.0; }

}  // namespace

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::kUniform:
      return "uniform";
    case Distribution::kConstant:
      return "constant";
    case Distribution::kBernoulli:
      return "bernoulli";
  }
  return "uniform";
}

Distribution parse_distribution(std::string_view s) {
  if (s == "uniform") return Distribution::kUniform;
  if (s == "constant") return Distribution::kConstant;
  if (s == "bernoulli") return Distribution::kBernoulli;
  throw ConfigError("unknown distribution '" + std::string(s) +
                    "' (uniform, constant, bernoulli)");
}

std::string_view to_string(ThroughputAccounting a) {
  return a == ThroughputAccounting::kDelivered ? "delivered" : "admitted";
}

ThroughputAccounting parse_accounting(std::string_view s) {
  if (s == "delivered") return ThroughputAccounting::kDelivered;
  if (s == "admitted") return ThroughputAccounting::kAdmitted;
  throw ConfigError("unknown throughput accounting '" + std::string(s) +
                    "' (delivered, admitted)");
}

SystemConfig SystemConfig::defaults(std::size_t n_devices) {
  SystemConfig cfg;
  cfg.n_devices = n_devices;
  cfg.fill_device_defaults();
  return cfg;
}

void SystemConfig::fill_device_defaults() {
  const std::size_t n = n_devices;
  if (device_distance_m.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      device_distance_m.push_back(3.0 + static_cast<double>(i));
    }
  } else if (device_distance_m.size() == 1 && n > 1) {
    device_distance_m.assign(n, device_distance_m.front());
  }
  fit(harvest_eff, n, 0.8);
  fit(a_max, n, 1.0);
  fit(r_max, n, 0.05);
  fit(c_max, n, 2.0);
  if (epsilon.empty() && a_max.size() == n) {
    for (double a : a_max) epsilon.push_back(0.5 * a);
  } else {
    fit(epsilon, n, 0.5);
  }
}

void SystemConfig::validate() const {
  const std::size_t n = n_devices;
  require(n >= 1, "n_devices must be at least 1");
  require(positive(bandwidth_hz), "bandwidth_hz must be positive");
  require(positive(ap_power_w), "ap_power_w must be positive");
  require(positive(noise_w), "noise_w must be positive");
  require(std::isfinite(path_loss_exp) && path_loss_exp >= 0.0,
          "path_loss_exp must be non-negative");
  require_sequence(device_distance_m, n, "device_distance_m", positive, "> 0");
  require_sequence(harvest_eff, n, "harvest_eff", unit_efficiency, "0 < xi <= 1");
  require_sequence(a_max, n, "a_max", non_negative, ">= 0");
  require_sequence(r_max, n, "r_max", positive, "> 0");
  require_sequence(c_max, n, "c_max", positive, "> 0");
  require_sequence(epsilon, n, "epsilon", non_negative, ">= 0");
  // eps must lie in (0, a_max]; a device that never collects data (a_max = 0)
  // carries eps = 0 and a virtual queue that stays empty.
  for (std::size_t i = 0; i < n; ++i) {
    const bool ok = a_max[i] == 0.0 ? epsilon[i] == 0.0
                                    : epsilon[i] > 0.0 && epsilon[i] <= a_max[i];
    if (!ok) {
      std::ostringstream msg;
      msg << "epsilon[" << i << "] = " << epsilon[i] << " must lie in (0, a_max["
          << i << "] = " << a_max[i] << "], or be 0 when a_max is 0";
      throw ConfigError(msg.str());
    }
  }
  require(std::isfinite(v_param) && v_param >= 0.0, "v_param must be >= 0");
  require(drop_price >= 1.0 && !std::isnan(drop_price),
          "drop_price must be >= 1");
  require(feedback_interval >= 1, "feedback_interval must be >= 1");
  require(positive(slot_seconds), "slot_seconds must be positive");
  require(positive(unit_scale_bits), "unit_scale_bits must be positive");
  require(arrival_param >= 0.0 && arrival_param <= 1.0,
          "arrival_param must lie in [0, 1]");
  require(proc_param >= 0.0 && proc_param <= 1.0,
          "proc_param must lie in [0, 1]");
  require(positive(kappa) && positive(sigma), "kappa and sigma must be > 0");
  require(pf_window > 0.0 && pf_window <= 1.0, "pf_window must lie in (0, 1]");
}

}  // namespace wpmec
