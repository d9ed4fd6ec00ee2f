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

#include "wpmec/feedback.hpp"

#include "wpmec/errors.hpp"

namespace wpmec {

FeedbackStore::FeedbackStore(std::size_t n_devices, std::size_t interval)
    : interval_(interval),
      q_snapshot_(n_devices, 0.0),
      z_snapshot_(n_devices, 0.0),
      age_(n_devices, 1) {
  if (interval == 0) {
    throw ContractViolation("FeedbackStore: interval must be >= 1");
  }
}

SlotObservation FeedbackStore::observe(const ApState& ap,
                                       std::span<const double> delta,
                                       std::span<const double> arrivals) const {
  const std::size_t n = size();
  if (ap.s_backlogs.size() != n || delta.size() != n ||
      arrivals.size() != n) {
    throw ContractViolation("FeedbackStore::observe: length mismatch");
  }
  SlotObservation obs;
  obs.q = q_snapshot_;
  obs.z = z_snapshot_;
  obs.s = ap.s_backlogs;
  obs.delta.assign(delta.begin(), delta.end());
  obs.arrivals.assign(arrivals.begin(), arrivals.end());
  return obs;
}

void FeedbackStore::refresh(std::size_t i, double true_q, double true_z) {
  if (i >= size()) throw ContractViolation("FeedbackStore::refresh: index");
  q_snapshot_[i] = true_q;
  z_snapshot_[i] = true_z;
  age_[i] = 1;
}

void FeedbackStore::end_slot(std::span<const double> mu,
                             std::span<const double> q_next,
                             std::span<const double> z_next) {
  const std::size_t n = size();
  if (mu.size() != n || q_next.size() != n || z_next.size() != n) {
    throw ContractViolation("FeedbackStore::end_slot: length mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (mu[i] > 0.0 || refresh_due(i)) {
      refresh(i, q_next[i], z_next[i]);
    } else {
      ++age_[i];
    }
  }
}

StalenessLimits staleness_limits(double c_max, double a_max, double p,
                                 std::size_t interval) {
  const double m = static_cast<double>(interval);
  return {(c_max + a_max) * m, (c_max / p + p * a_max) * m};
}

}  // namespace wpmec
