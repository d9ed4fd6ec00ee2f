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

#include "wpmec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wpmec {
namespace {

constexpr double kE = 2.718281828459045;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Series of W0 around the branch point in p = sqrt(2 (e x + 1)).
double branch_series(double p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 +
                          p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
}

double initial_guess(double x) {
  if (x < -0.25) {
    return branch_series(std::sqrt(2.0 * (kE * x + 1.0)));
  }
  if (x < 0.3) {
    return x * (1.0 + x * (-1.0 + x * (1.5 + x * (-8.0 / 3.0 + x * 125.0 / 24.0))));
  }
  if (x < 20.0) {
    const double l = std::log1p(x);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

// -t - log(1 - t) - y, accurate for small t.
double branch_gap(double t, double y) {
  if (t < 1e-3) {
    double term = t * t;
    double sum = 0.0;
    for (int k = 2; k <= 9; ++k) {
      sum += term / k;
      term *= t;
    }
    return sum - y;
  }
  return -t - std::log1p(-t) - y;
}

// Root of u - ln u = 1 + y with u = -W0(-exp(-1 - y)). Near the branch point
// (y <= 1) it is tracked as t = 1 - u, further out as s = ln u.
struct NegExpRoot {
  bool near_branch = true;
  double t = 0.0;
  double s = 0.0;
};

NegExpRoot solve_neg_exp(double y, double rel_tol) {
  const double stop = std::max(2.0 * kEps, rel_tol);
  if (!(y >= 0.0)) {
    std::ostringstream msg;
    msg << "lambert_w0_neg_exp: y must be >= 0, got " << y;
    throw DomainError(msg.str());
  }
  NegExpRoot root;
  if (y == 0.0) return root;
  if (y <= 1.0) {
    const double p = std::sqrt(-2.0 * std::expm1(-y));
    double t = 1.0 + branch_series(p);
    if (!(t > 0.0)) t = p;
    for (int it = 0; it < 60; ++it) {
      const double g = branch_gap(t, y);
      const double step = g * (1.0 - t) / t;
      double next = t - step;
      if (next <= 0.0) next = 0.5 * t;
      if (next >= 1.0) next = 0.5 * (t + 1.0);
      const bool done = std::fabs(next - t) <= stop * next;
      t = next;
      if (done) break;
    }
    root.t = t;
    return root;
  }
  root.near_branch = false;
  double s = -1.0 - y + std::exp(-1.0 - y);
  for (int it = 0; it < 60; ++it) {
    const double es = std::exp(s);
    const double f = es - s - 1.0 - y;
    const double next = s - f / (es - 1.0);
    const bool done = std::fabs(next - s) <= stop * std::fabs(next);
    s = next;
    if (done) break;
  }
  root.s = s;
  return root;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < -kInvE) {
    std::ostringstream msg;
    msg << "lambert_w0: argument " << x << " is below -1/e";
    throw DomainError(msg.str());
  }
  if (x == 0.0) return 0.0;
  if (x + kInvE <= 1e-12) return -1.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(x);
  if (x > 1e200) {
    // w + ln w = ln x avoids overflowing w e^w.
    const double lx = std::log(x);
    for (int it = 0; it < 64; ++it) {
      const double step = (w + std::log(w) - lx) / (1.0 + 1.0 / w);
      w -= step;
      if (std::fabs(step) <= 4.0 * kEps * std::fabs(w)) break;
    }
    return w;
  }

  double resid = std::fabs(w * std::exp(w) - x);
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (f == 0.0 || wp1 <= 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    const double next = w - step;
    const double next_resid = std::fabs(next * std::exp(next) - x);
    // Close to the branch point rounding in f dominates; keep the better
    // iterate rather than wander.
    if (!(next_resid <= resid) || next < -1.0) break;
    w = next;
    resid = next_resid;
    if (std::fabs(step) <= 4.0 * kEps * (1.0 + std::fabs(w))) break;
  }
  return w;
}

double lambert_w0_neg_exp(double y, double rel_tol) {
  const NegExpRoot root = solve_neg_exp(y, rel_tol);
  return root.near_branch ? root.t - 1.0 : -std::exp(root.s);
}

double xi(double x) {
  if (!(x > -1.0)) {
    std::ostringstream msg;
    msg << "xi: argument " << x << " must exceed -1";
    throw DomainError(msg.str());
  }
  if (std::fabs(x) < 1e-3) {
    // sum_{k>=2} (-1)^k (k-1)/k x^k
    double term = x * x;
    double sum = 0.0;
    for (int k = 2; k <= 9; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      sum += sign * (k - 1.0) / k * term;
      term *= x;
    }
    return sum;
  }
  return std::log1p(x) - x / (1.0 + x);
}

double xi_inverse(double y, double rel_tol) {
  const NegExpRoot root = solve_neg_exp(y, rel_tol);
  if (root.near_branch) return root.t / (1.0 - root.t);
  return std::expm1(-root.s);
}

}  // namespace wpmec
