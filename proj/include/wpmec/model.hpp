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

#ifndef WPMEC_MODEL_HPP_
#define WPMEC_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

namespace wpmec {

// Mass admitted into a device queue in one slot. Age is t - admitted_slot.
struct DataBatch {
  double size = 0.0;
  std::int64_t admitted_slot = 0;
};

struct DeviceState {
  double q_backlog = 0.0;
  double z_backlog = 0.0;
  std::deque<DataBatch> batches;  // FIFO, head = oldest
  double channel_gain = 0.0;
  double delta = 0.0;

  // Sum of batch sizes. Equals q_backlog up to rounding.
  double ledger_mass() const;
};

struct ApState {
  std::vector<double> s_backlogs;
  std::vector<double> r_current;

  static ApState empty(std::size_t n_devices);
};

// Control vector of one slot: WPT share, per-device offload shares, admitted
// and discarded mass, and the capped offloading rate.
struct SlotDecision {
  double mu0 = 0.0;
  std::vector<double> mu;
  std::vector<double> admit;
  std::vector<double> drop;
  std::vector<double> rate;

  static SlotDecision idle(std::size_t n_devices);
};

// What one device-queue update actually removed.
struct DeviceStepOutcome {
  double offloaded = 0.0;  // min(rate, Q)
  double dropped = 0.0;    // min(drop, [Q - rate]^+)
};

// In-place queue update: Q' = [Q - rate - drop]^+ + admit. Offloading eats
// head-of-line mass first, discard eats the next mass, and a new batch stamped
// `now` is appended when admit > 0. A partially consumed batch keeps its
// admission slot.
DeviceStepOutcome advance_device_queue(DeviceState& state, double rate,
                                       double drop, double admit,
                                       std::int64_t now);

// Value form of advance_device_queue.
DeviceState step_device_queue(DeviceState state, double rate, double drop,
                              double admit, std::int64_t now);

// S' = [S - r]^+ + offloaded, where offloaded = min(c_i, Q_i) taken before the
// device update.
double step_ap_queue(double s, double r, double offloaded);

// Z' = [Z - rate/p - p*drop + p*eps]^+.
double step_virtual_queue(double z, double rate, double drop, double eps,
                          double p);

// Age of the head-of-line batch at slot `now`; 0 for an empty queue.
std::int64_t max_age(const DeviceState& state, std::int64_t now);

// Mass whose age at slot `now` is at least `age_limit`.
double expired_mass(const DeviceState& state, std::int64_t now,
                    std::int64_t age_limit);

}  // namespace wpmec

#endif  // WPMEC_MODEL_HPP_
