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

#ifndef WPMEC_VERIFY_HPP_
#define WPMEC_VERIFY_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wpmec {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  // Random problems per oracle check.
  int samples = 20;
  // Slots of the short simulated run used for KKT and bound checks.
  int slots = 500;
};

// Quick oracle and property suite behind `wpmec verify`: Lambert W round
// trip, closed-form optimality of admission and discard, time allocation
// against grid search, KKT residuals and hard bounds on a short run,
// feedback degeneracy and determinism.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

// One "[PASS] name: detail" line per check; returns true when all passed.
bool print_checks(std::ostream& os, const std::vector<CheckResult>& checks);

}  // namespace wpmec

#endif  // WPMEC_VERIFY_HPP_
