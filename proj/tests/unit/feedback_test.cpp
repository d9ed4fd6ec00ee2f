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

#include <gtest/gtest.h>

#include "wpmec/errors.hpp"
#include "wpmec/feedback.hpp"

namespace wpmec {
namespace {

SlotObservation observe_all(const FeedbackStore& store) {
  const std::size_t n = store.size();
  return store.observe(ApState::empty(n), std::vector<double>(n, 1.0),
                       std::vector<double>(n, 0.0));
}

TEST(Feedback, StartsExactAndFresh) {
  FeedbackStore store(3, 5);
  const SlotObservation o = observe_all(store);
  EXPECT_EQ(o.q, std::vector<double>(3, 0.0));
  EXPECT_EQ(store.snapshot_age(), std::vector<std::size_t>(3, 1));
}

TEST(Feedback, ObserveKeepsApBacklogCurrent) {
  FeedbackStore store(2, 3);
  ApState ap = ApState::empty(2);
  ap.s_backlogs = {4.0, 5.0};
  const auto o = store.observe(ap, std::vector<double>{1, 2}, std::vector<double>{0, 0});
  EXPECT_EQ(o.s, ap.s_backlogs);
  EXPECT_EQ(o.delta, (std::vector<double>{1, 2}));
}

// Three-slot replay with m = 3: device 0 offloads in slot 0 only, device 1
// never offloads and is forced to report when its snapshot reaches age 3.
TEST(Feedback, HandReplayOfThreeSlots) {
  FeedbackStore store(2, 3);
  store.end_slot(std::vector<double>{0.4, 0.0}, std::vector<double>{1.0, 2.0},
                 std::vector<double>{0.1, 0.2});
  EXPECT_EQ(store.q_snapshot(), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(store.snapshot_age(), (std::vector<std::size_t>{1, 2}));

  store.end_slot(std::vector<double>{0.0, 0.0}, std::vector<double>{1.5, 3.0},
                 std::vector<double>{0.3, 0.4});
  EXPECT_EQ(store.q_snapshot(), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(store.snapshot_age(), (std::vector<std::size_t>{2, 3}));
  EXPECT_TRUE(store.refresh_due(1));
  EXPECT_FALSE(store.refresh_due(0));

  store.end_slot(std::vector<double>{0.0, 0.0}, std::vector<double>{2.5, 4.0},
                 std::vector<double>{0.5, 0.6});
  EXPECT_EQ(store.q_snapshot(), (std::vector<double>{1.0, 4.0}));
  EXPECT_EQ(store.z_snapshot(), (std::vector<double>{0.1, 0.6}));
  EXPECT_EQ(store.snapshot_age(), (std::vector<std::size_t>{3, 1}));
}

TEST(Feedback, IntervalOneAlwaysCurrent) {
  FeedbackStore store(2, 1);
  for (int t = 0; t < 10; ++t) {
    const std::vector<double> q{1.0 * t, 2.0 * t}, z{0.5 * t, 0.25 * t};
    store.end_slot(std::vector<double>{0.0, 0.0}, q, z);
    EXPECT_EQ(store.q_snapshot(), q);
    EXPECT_EQ(store.z_snapshot(), z);
    EXPECT_EQ(store.snapshot_age(), (std::vector<std::size_t>{1, 1}));
  }
}

TEST(Feedback, AgesStayWithinInterval) {
  FeedbackStore store(4, 4);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> mu(4, 0.0);
    mu[t % 7 == 0 ? 0 : 3] = 0.1;
    store.end_slot(mu, std::vector<double>(4, t), std::vector<double>(4, t));
    for (auto a : store.snapshot_age()) {
      EXPECT_GE(a, 1u);
      EXPECT_LE(a, 4u);
    }
  }
}

TEST(Feedback, RefreshThenObserveIsExact) {
  FeedbackStore store(1, 10);
  store.refresh(0, 7.5, 2.5);
  const auto o = observe_all(store);
  EXPECT_EQ(o.q[0], 7.5);
  EXPECT_EQ(o.z[0], 2.5);
  EXPECT_THROW(store.refresh(1, 0.0, 0.0), ContractViolation);
  EXPECT_THROW(FeedbackStore(1, 0), ContractViolation);
}

TEST(Feedback, StalenessLimits) {
  const auto lim = staleness_limits(2.0, 1.0, 2.0, 5);
  EXPECT_DOUBLE_EQ(lim.q, 15.0);
  EXPECT_DOUBLE_EQ(lim.z, 15.0);
}

}  // namespace
}  // namespace wpmec
