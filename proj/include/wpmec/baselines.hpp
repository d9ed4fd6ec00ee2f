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

#ifndef WPMEC_BASELINES_HPP_
#define WPMEC_BASELINES_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "wpmec/config.hpp"
#include "wpmec/environment.hpp"
#include "wpmec/model.hpp"
#include "wpmec/scheduler.hpp"

namespace wpmec {

// Proportional-fair state: exponential moving average of each device's rate.
struct PfState {
  static constexpr double kRateFloor = 1e-9;

  std::vector<double> avg_rate;
  double window = 0.1;  // smoothing factor; 1 keeps only the last slot

  static PfState initial(std::size_t n_devices, double window,
                         double initial_rate = 1.0);
  // R <- (1 - window) R + window * rate, floored at kRateFloor.
  void update(std::span<const double> rates);
};

// Proportional fair: admits every arrival, drops only head-of-line mass whose
// age reached g_max_slots (expired_i, net of what offloading will consume,
// capped at A_max), and splits airtime to maximise sum_i c_i / R_i over all
// devices. Updates `state` with the slot's rates.
SlotDecision pf_decide(const SlotObservation& obs, const SystemConfig& cfg,
                       const EnvDraw& env, std::span<const double> expired,
                       PfState& state);

// Proposed policy with every virtual queue forced to zero, i.e. scheduling
// without age awareness.
SlotPlan hdo_plan(const SlotObservation& ap_view,
                  const SlotObservation& device_view, const SystemConfig& cfg,
                  const EnvDraw& env);
SlotDecision hdo_decide(const SlotObservation& obs, const SystemConfig& cfg,
                        const EnvDraw& env);

}  // namespace wpmec

#endif  // WPMEC_BASELINES_HPP_
