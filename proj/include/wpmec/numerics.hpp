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

#ifndef WPMEC_NUMERICS_HPP_
#define WPMEC_NUMERICS_HPP_

#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>

#include "wpmec/errors.hpp"

namespace wpmec {

inline constexpr double kInvE = 0.36787944117144233;  // 1/e

// Principal branch W0 of the Lambert W function: w * exp(w) = x, w >= -1.
// Halley iteration; the start is a branch-point series near -1/e, a Taylor
// series around 0 and the asymptotic log expansion for large x. Arguments
// within 1e-12 of -1/e return -1 exactly. Throws DomainError for x < -1/e.
double lambert_w0(double x);

// W0(-exp(-1 - y)) for y >= 0, evaluated without forming the argument, which
// sits within ~y/e of the branch point when y is small. Returns a value in
// [-1, 0). Underflows to -0.0 for very large y. Newton stops once a step is
// below max(2 eps, rel_tol) relative to the iterate.
double lambert_w0_neg_exp(double y, double rel_tol = 0.0);

// Xi(x) = ln(1 + x) + 1 / (1 + x) - 1, defined for x > -1, increasing on
// x >= 0 with Xi(0) = 0.
double xi(double x);

// The unique x >= 0 with Xi(x) = y, through the Lambert form
// x = -(1 + 1 / W0(-exp(-1 - y))). Returns +inf when the ratio overflows.
double xi_inverse(double y, double rel_tol = 0.0);

struct BisectionSpec {
  double lo = 0.0;
  double hi = 1.0;
  double tol = 1e-12;      // absolute interval width
  double rel_tol = 0.0;    // plus rel_tol * |midpoint|
  std::size_t max_iter = 200;
};

struct BisectionResult {
  double root = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t iterations = 0;
};

// Bisection on a sign change of f over [lo, hi]. Stops once the bracket is
// within tol + rel_tol * |mid|, or when no double lies strictly between the
// ends. Throws BracketingError without a sign change and ConvergenceError when
// max_iter runs out first.
template <typename F>
BisectionResult bisect_bracket(F&& f, const BisectionSpec& spec) {
  if (!(spec.lo < spec.hi) || !(spec.tol >= 0.0) || !(spec.rel_tol >= 0.0) ||
      (spec.tol == 0.0 && spec.rel_tol == 0.0)) {
    throw ContractViolation("bisect: need lo < hi and a positive tolerance");
  }
  double lo = spec.lo;
  double hi = spec.hi;
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, lo, lo, 0};
  if (f_hi == 0.0) return {hi, hi, hi, 0};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    std::ostringstream msg;
    msg << "bisect: no sign change on [" << lo << ", " << hi << "], f(lo)="
        << f_lo << ", f(hi)=" << f_hi;
    throw BracketingError(msg.str());
  }
  for (std::size_t it = 0; it < spec.max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= spec.tol + spec.rel_tol * std::fabs(mid) || mid <= lo ||
        mid >= hi) {
      return {mid, lo, hi, it};
    }
    const double f_mid = f(mid);
    if (f_mid == 0.0) return {mid, mid, mid, it + 1};
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double mid = lo + 0.5 * (hi - lo);
  if (hi - lo <= spec.tol + spec.rel_tol * std::fabs(mid)) {
    return {mid, lo, hi, spec.max_iter};
  }
  std::ostringstream msg;
  msg << "bisect: no convergence after " << spec.max_iter
      << " iterations, bracket [" << lo << ", " << hi << "]";
  throw ConvergenceError(msg.str());
}

template <typename F>
double bisect(F&& f, const BisectionSpec& spec) {
  return bisect_bracket(std::forward<F>(f), spec).root;
}

}  // namespace wpmec

#endif  // WPMEC_NUMERICS_HPP_
