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

#include "wpmec/baselines.hpp"

#include <algorithm>

#include "wpmec/errors.hpp"

namespace wpmec {

PfState PfState::initial(std::size_t n_devices, double window,
                         double initial_rate) {
  if (!(window > 0.0 && window <= 1.0)) {
    throw ContractViolation("PfState: window must lie in (0, 1]");
  }
  PfState st;
  st.window = window;
  st.avg_rate.assign(n_devices, std::max(initial_rate, kRateFloor));
  return st;
}

void PfState::update(std::span<const double> rates) {
  if (rates.size() != avg_rate.size()) {
    throw ContractViolation("PfState::update: length mismatch");
  }
  for (std::size_t i = 0; i < rates.size(); ++i) {
    avg_rate[i] = std::max((1.0 - window) * avg_rate[i] + window * rates[i],
                           kRateFloor);
  }
}

SlotDecision pf_decide(const SlotObservation& obs, const SystemConfig& cfg,
                       const EnvDraw& env, std::span<const double> expired,
                       PfState& state) {
  const std::size_t n = cfg.n_devices;
  if (obs.size() != n || expired.size() != n || state.avg_rate.size() != n ||
      env.arrivals.size() != n) {
    throw ContractViolation("pf_decide: length mismatch");
  }
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = cfg.bandwidth_hz / state.avg_rate[i];
  }
  const TimeAllocation alloc =
      allocate_weighted(weights, obs.delta, {cfg.kappa, cfg.sigma});

  SlotDecision d = SlotDecision::idle(n);
  d.mu0 = alloc.mu0;
  d.mu = alloc.mu;
  for (std::size_t i = 0; i < n; ++i) {
    d.rate[i] = offload_rate(cfg, obs.delta[i], d.mu0, d.mu[i], i);
    d.admit[i] = env.arrivals[i];
    // Offloading consumes the head first, so only what it leaves of the
    // expired mass is discarded.
    d.drop[i] = std::clamp(expired[i] - d.rate[i], 0.0, cfg.a_max[i]);
  }
  state.update(d.rate);
  return d;
}

namespace {

SlotObservation without_virtual_queues(const SlotObservation& obs) {
  SlotObservation out = obs;
  std::fill(out.z.begin(), out.z.end(), 0.0);
  return out;
}

}  // namespace

SlotPlan hdo_plan(const SlotObservation& ap_view,
                  const SlotObservation& device_view, const SystemConfig& cfg,
                  const EnvDraw& env) {
  return plan_slot(without_virtual_queues(ap_view),
                   without_virtual_queues(device_view), cfg, env);
}

SlotDecision hdo_decide(const SlotObservation& obs, const SystemConfig& cfg,
                        const EnvDraw& env) {
  return hdo_plan(obs, obs, cfg, env).decision;
}

}  // namespace wpmec
