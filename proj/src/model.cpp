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

#include "wpmec/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wpmec/errors.hpp"

namespace wpmec {
namespace {

void require_non_negative(double x, const char* name, const char* op) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << op << ": " << name << " must be finite and >= 0, got " << x;
    throw ContractViolation(msg.str());
  }
}

// Slivers below this fraction of the backlog are treated as consumed.
constexpr double kSliver = 1e-12;

}  // namespace

double DeviceState::ledger_mass() const {
  double total = 0.0;
  for (const auto& b : batches) total += b.size;
  return total;
}

ApState ApState::empty(std::size_t n_devices) {
  ApState ap;
  ap.s_backlogs.assign(n_devices, 0.0);
  ap.r_current.assign(n_devices, 0.0);
  return ap;
}

SlotDecision SlotDecision::idle(std::size_t n_devices) {
  SlotDecision d;
  d.mu.assign(n_devices, 0.0);
  d.admit.assign(n_devices, 0.0);
  d.drop.assign(n_devices, 0.0);
  d.rate.assign(n_devices, 0.0);
  return d;
}

DeviceStepOutcome advance_device_queue(DeviceState& state, double rate,
                                       double drop, double admit,
                                       std::int64_t now) {
  require_non_negative(rate, "rate", "step_device_queue");
  require_non_negative(drop, "drop", "step_device_queue");
  require_non_negative(admit, "admit", "step_device_queue");

  const double q = state.q_backlog;
  DeviceStepOutcome out;
  out.offloaded = std::min(rate, q);
  out.dropped = std::min(drop, std::max(q - rate, 0.0));

  const double remaining = std::max(q - rate - drop, 0.0);
  if (remaining == 0.0) {
    state.batches.clear();
  } else {
    double consume = out.offloaded + out.dropped;
    const double sliver = kSliver * std::max(1.0, q);
    while (consume > 0.0 && !state.batches.empty()) {
      DataBatch& head = state.batches.front();
      if (head.size <= consume + sliver) {
        consume -= head.size;
        state.batches.pop_front();
      } else {
        head.size -= consume;
        consume = 0.0;
      }
    }
  }
  state.q_backlog = remaining + admit;
  if (admit > 0.0) state.batches.push_back({admit, now});
  return out;
}

DeviceState step_device_queue(DeviceState state, double rate, double drop,
                              double admit, std::int64_t now) {
  advance_device_queue(state, rate, drop, admit, now);
  return state;
}

double step_ap_queue(double s, double r, double offloaded) {
  require_non_negative(s, "s", "step_ap_queue");
  require_non_negative(r, "r", "step_ap_queue");
  require_non_negative(offloaded, "offloaded", "step_ap_queue");
  return std::max(s - r, 0.0) + offloaded;
}

double step_virtual_queue(double z, double rate, double drop, double eps,
                          double p) {
  require_non_negative(z, "z", "step_virtual_queue");
  require_non_negative(rate, "rate", "step_virtual_queue");
  require_non_negative(drop, "drop", "step_virtual_queue");
  require_non_negative(eps, "eps", "step_virtual_queue");
  if (!(p >= 1.0)) {
    throw ContractViolation("step_virtual_queue: p must be >= 1");
  }
  return std::max(z - rate / p - p * drop + p * eps, 0.0);
}

std::int64_t max_age(const DeviceState& state, std::int64_t now) {
  if (state.batches.empty()) return 0;
  return now - state.batches.front().admitted_slot;
}

double expired_mass(const DeviceState& state, std::int64_t now,
                    std::int64_t age_limit) {
  double mass = 0.0;
  for (const auto& b : state.batches) {
    if (now - b.admitted_slot < age_limit) break;
    mass += b.size;
  }
  return mass;
}

}  // namespace wpmec
