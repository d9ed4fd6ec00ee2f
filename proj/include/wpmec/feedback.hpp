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

#ifndef WPMEC_FEEDBACK_HPP_
#define WPMEC_FEEDBACK_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wpmec/model.hpp"
#include "wpmec/scheduler.hpp"

namespace wpmec {

// The AP's view of device backlogs under partial, outdated feedback.
//
// A snapshot of age k was reported at the end of slot t - k, i.e. it holds the
// backlog the device carried into slot t - k + 1. Age 1 therefore means the
// AP knows the current Q and Z. A device reports whenever it offloads, and is
// forced to report once its snapshot reaches the feedback interval m, so ages
// stay in {1, ..., m}. One message carries both Q and Z, so the two share an
// age.
class FeedbackStore {
 public:
  FeedbackStore() = default;
  // Queues start empty, so the initial all-zero snapshots are exact.
  FeedbackStore(std::size_t n_devices, std::size_t interval);

  std::size_t size() const { return q_snapshot_.size(); }
  std::size_t interval() const { return interval_; }
  const std::vector<double>& q_snapshot() const { return q_snapshot_; }
  const std::vector<double>& z_snapshot() const { return z_snapshot_; }
  const std::vector<std::size_t>& snapshot_age() const { return age_; }

  // AP-side observation: stale Q and Z, current S.
  SlotObservation observe(const ApState& ap, std::span<const double> delta,
                          std::span<const double> arrivals) const;

  // Device i reports its end-of-slot backlogs; the snapshot has age 1 in the
  // next slot.
  void refresh(std::size_t i, double true_q, double true_z);

  // Whether device i must report at the end of the current slot.
  bool refresh_due(std::size_t i) const { return age_[i] >= interval_; }

  // End-of-slot bookkeeping: devices that offloaded (mu_i > 0) or hit the
  // interval report q_next/z_next, every other snapshot ages by one slot.
  void end_slot(std::span<const double> mu, std::span<const double> q_next,
                std::span<const double> z_next);

 private:
  std::size_t interval_ = 1;
  std::vector<double> q_snapshot_;
  std::vector<double> z_snapshot_;
  std::vector<std::size_t> age_;
};

// Staleness limits (c_max + A_max) m and (c_max/p + p A_max) m.
struct StalenessLimits {
  double q = 0.0;
  double z = 0.0;
};
StalenessLimits staleness_limits(double c_max, double a_max, double p,
                                 std::size_t interval);

}  // namespace wpmec

#endif  // WPMEC_FEEDBACK_HPP_
