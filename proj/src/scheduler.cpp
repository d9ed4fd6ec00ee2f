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

#include "wpmec/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wpmec/errors.hpp"
#include "wpmec/numerics.hpp"

namespace wpmec {
namespace {

constexpr double kLn2 = 0.6931471805599453;

// Beyond this exponent W0(-exp(-1 - y)) underflows: the device's SNR ratio
// is infinite and its airtime share is zero.
constexpr double kUnderflowExponent = 700.0;

// Lower end of the multiplier bracket.
constexpr double kLambdaFloor = 1e-12;

double offload_margin(double q, double z, double s, double p) {
  return q + z / p - s;
}

// SNR ratio R_i = delta_i mu0 / mu_i implied by the multiplier.
double snr_ratio(double lambda, double weight, double kappa) {
  const double y = lambda * kLn2 / weight;
  if (y + 1.0 > kUnderflowExponent) {
    return std::numeric_limits<double>::infinity();
  }
  return xi_inverse(y, kappa);
}

struct Stationarity {
  std::span<const double> weights;
  std::span<const double> delta;
  std::span<const std::size_t> active;
  double kappa;

  // sum_i (w_i / ln 2) delta_i / (1 + R_i(lambda)) - lambda; decreasing.
  double operator()(double lambda) const {
    double sum = 0.0;
    for (std::size_t i : active) {
      const double r = snr_ratio(lambda, weights[i], kappa);
      sum += weights[i] / kLn2 * delta[i] / (1.0 + r);
    }
    return sum - lambda;
  }

  // 1 + sum_i delta_i / R_i(lambda) = 1 / mu0.
  double inverse_mu0(double lambda) const {
    double sum = 1.0;
    for (std::size_t i : active) {
      const double r = snr_ratio(lambda, weights[i], kappa);
      sum += delta[i] / r;
    }
    return sum;
  }
};

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": length mismatch (" << a << " vs " << b << ")";
    throw ContractViolation(msg.str());
  }
}

}  // namespace

void SlotObservation::validate() const {
  const std::size_t n = q.size();
  require_same_size(n, z.size(), "SlotObservation z");
  require_same_size(n, s.size(), "SlotObservation s");
  require_same_size(n, delta.size(), "SlotObservation delta");
  require_same_size(n, arrivals.size(), "SlotObservation arrivals");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(q[i] >= 0.0 && z[i] >= 0.0 && s[i] >= 0.0 && delta[i] >= 0.0 &&
          arrivals[i] >= 0.0)) {
      std::ostringstream msg;
      msg << "SlotObservation: negative or NaN entry for device " << i;
      throw ContractViolation(msg.str());
    }
  }
}

double decide_admission(double q, double arrival, double v) {
  if (!(q >= 0.0 && arrival >= 0.0 && v >= 0.0)) {
    throw ContractViolation("decide_admission: inputs must be >= 0");
  }
  if (v >= (arrival + 1.0) * q) return arrival;
  return std::clamp(v / q - 1.0, 0.0, arrival);
}

double decide_discard(double q, double z, double v, double p, double a_max) {
  if (!(q >= 0.0 && z >= 0.0 && v >= 0.0 && a_max >= 0.0) || !(p >= 1.0)) {
    throw ContractViolation("decide_discard: inputs must be >= 0, p >= 1");
  }
  if (is_infinite_price(p)) return 0.0;
  return q + z > v * p ? a_max : 0.0;
}

double offload_weight(double q, double z, double s, double p,
                      double bandwidth_hz) {
  return offload_margin(q, z, s, p) * bandwidth_hz;
}

std::vector<std::size_t> select_offload_set(const SlotObservation& obs,
                                            double p) {
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (offload_margin(obs.q[i], obs.z[i], obs.s[i], p) > 0.0) {
      active.push_back(i);
    }
  }
  return active;
}

TimeAllocation allocate_weighted(std::span<const double> weights,
                                 std::span<const double> delta,
                                 const AllocationTolerance& tol) {
  require_same_size(weights.size(), delta.size(), "allocate_weighted");
  const std::size_t n = weights.size();
  TimeAllocation alloc;
  alloc.mu.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] > 0.0 && delta[i] > 0.0 && std::isfinite(weights[i]) &&
        std::isfinite(delta[i])) {
      alloc.active.push_back(i);
    }
  }
  if (alloc.active.empty()) return alloc;

  const Stationarity g{weights, delta, alloc.active, tol.kappa};

  // g is strictly decreasing with g(0+) > 0. Grow the upper end
  // geometrically until the sign flips.
  double lo = kLambdaFloor;
  double hi = 1.0;
  std::size_t evaluations = 0;
  if (g(lo) <= 0.0) {
    // Weights so small that the multiplier sits below the floor.
    hi = lo;
    lo = 0.0;
  } else {
    while (g(hi) > 0.0) {
      lo = hi;
      hi *= 4.0;
      if (++evaluations > 2000 || !std::isfinite(hi)) {
        std::ostringstream msg;
        msg << "allocate_time: could not bracket the multiplier, hi=" << hi;
        throw ConvergenceError(msg.str());
      }
    }
  }

  BisectionSpec spec;
  spec.lo = lo;
  spec.hi = hi;
  spec.tol = std::numeric_limits<double>::min();
  spec.rel_tol = tol.sigma;
  spec.max_iter = 400;
  BisectionResult found;
  try {
    found = bisect_bracket(g, spec);
  } catch (const std::runtime_error& e) {
    std::ostringstream msg;
    msg << "allocate_time: " << e.what() << " (active devices "
        << alloc.active.size() << ")";
    throw ConvergenceError(msg.str());
  }

  // Newton polish inside the final bracket; g'(lambda) = -1/mu0.
  double lambda = found.root;
  double g_lambda = g(lambda);
  for (int it = 0; it < 3 && g_lambda != 0.0; ++it) {
    const double next = lambda + g_lambda / g.inverse_mu0(lambda);
    if (!(next >= found.lo && next <= found.hi)) break;
    const double g_next = g(next);
    if (!(std::fabs(g_next) < std::fabs(g_lambda))) break;
    lambda = next;
    g_lambda = g_next;
  }

  alloc.lambda = lambda;
  alloc.outer_iterations = evaluations + found.iterations;
  double total = 1.0;
  std::vector<double> share(n, 0.0);  // mu_i / mu0 = delta_i / R_i
  for (std::size_t i : alloc.active) {
    const double r = snr_ratio(lambda, weights[i], tol.kappa);
    share[i] = std::isinf(r) ? 0.0 : delta[i] / r;
    total += share[i];
  }
  alloc.mu0 = 1.0 / total;
  for (std::size_t i : alloc.active) alloc.mu[i] = share[i] * alloc.mu0;
  return alloc;
}

TimeAllocation allocate_time(const SlotObservation& obs,
                             std::span<const std::size_t> active, double p,
                             double bandwidth_hz,
                             const AllocationTolerance& tol) {
  const std::size_t n = obs.size();
  std::vector<double> weights(n, 0.0);
  for (std::size_t i : active) {
    if (i >= n) throw ContractViolation("allocate_time: index out of range");
    weights[i] = offload_weight(obs.q[i], obs.z[i], obs.s[i], p, bandwidth_hz);
    if (!(weights[i] > 0.0) || !(obs.delta[i] > 0.0)) {
      std::ostringstream msg;
      msg << "allocate_time: device " << i << " has weight " << weights[i]
          << " and delta " << obs.delta[i] << "; both must be positive";
      throw ContractViolation(msg.str());
    }
  }
  return allocate_weighted(weights, obs.delta, tol);
}

double allocation_objective(std::span<const double> weights,
                            std::span<const double> delta, double mu0,
                            std::span<const double> mu) {
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] > 0.0) {
      total += weights[i] * mu[i] * std::log2(1.0 + delta[i] * mu0 / mu[i]);
    }
  }
  return total;
}

KktResiduals kkt_residuals(std::span<const double> weights,
                           std::span<const double> delta,
                           const TimeAllocation& alloc) {
  KktResiduals res;
  if (alloc.active.empty()) return res;
  double sum_mu = alloc.mu0;
  double stationarity = 0.0;
  for (std::size_t i : alloc.active) {
    sum_mu += alloc.mu[i];
    if (alloc.mu[i] <= 0.0) continue;  // underflow limit, no contribution
    const double r = delta[i] * alloc.mu0 / alloc.mu[i];
    stationarity += weights[i] / kLn2 * delta[i] / (1.0 + r);
    const double device = std::fabs(xi(r) * weights[i] / kLn2 - alloc.lambda);
    res.max_device_stationarity = std::max(res.max_device_stationarity, device);
  }
  res.mu0_stationarity = std::fabs(stationarity - alloc.lambda);
  res.budget = std::fabs(sum_mu - 1.0);
  return res;
}

BoundReport compute_bounds(const SystemConfig& cfg,
                           std::span<const double> c_cap) {
  const std::size_t n = cfg.n_devices;
  require_same_size(n, c_cap.size(), "compute_bounds c_cap");
  const double v = cfg.v_param;
  const double p = cfg.drop_price;
  const double m = static_cast<double>(cfg.feedback_interval);
  BoundReport rep;
  rep.q_max.resize(n);
  rep.z_max.resize(n);
  rep.s_max.resize(n);
  rep.g_max.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = cfg.a_max[i];
    const double eps = cfg.epsilon[i];
    const double c = c_cap[i];
    const double r = cfg.r_max[i];
    rep.q_max[i] = v * (2.0 - std::exp(-p)) + a;
    rep.z_max[i] = p * (v + eps);
    // Z_max / p is written out as V + eps to keep it exact for huge p.
    rep.s_max[i] = rep.q_max[i] + (v + eps) + c;
    // A device without data (a_max = eps = 0) never ages anything.
    rep.g_max[i] = eps > 0.0 ? static_cast<std::int64_t>(std::ceil(
                                   (rep.q_max[i] + (v + eps)) / eps))
                             : 0;
    const double tail = a + c / (p * p) - eps;
    rep.b1 += 0.5 * std::max(eps * eps, tail * tail) +
              0.5 * ((c + a) * (c + a) + a * a + c * c + r * r);
    rep.b2 += m * c * ((1.0 + 1.0 / (p * p)) * c + 2.0 * a);
  }
  return rep;
}

BoundReport compute_bounds(const SystemConfig& cfg) {
  return compute_bounds(cfg, cfg.c_max);
}

SlotPlan plan_slot(const SlotObservation& ap_view,
                   const SlotObservation& device_view, const SystemConfig& cfg,
                   const EnvDraw& env) {
  const std::size_t n = cfg.n_devices;
  require_same_size(n, ap_view.size(), "plan_slot ap_view");
  require_same_size(n, device_view.size(), "plan_slot device_view");
  require_same_size(n, env.arrivals.size(), "plan_slot env");
  const double p = cfg.drop_price;

  SlotPlan plan;
  plan.weights.assign(n, 0.0);
  for (std::size_t i : select_offload_set(ap_view, p)) {
    plan.weights[i] = offload_weight(ap_view.q[i], ap_view.z[i], ap_view.s[i],
                                     p, cfg.bandwidth_hz);
  }
  plan.allocation = allocate_weighted(plan.weights, ap_view.delta,
                                      {cfg.kappa, cfg.sigma});

  SlotDecision& d = plan.decision;
  d = SlotDecision::idle(n);
  d.mu0 = plan.allocation.mu0;
  d.mu = plan.allocation.mu;
  for (std::size_t i = 0; i < n; ++i) {
    d.rate[i] = offload_rate(cfg, ap_view.delta[i], d.mu0, d.mu[i], i);
    d.admit[i] = decide_admission(device_view.q[i], env.arrivals[i],
                                  cfg.v_param);
    d.drop[i] = decide_discard(device_view.q[i], device_view.z[i],
                               cfg.v_param, p, cfg.a_max[i]);
  }
  return plan;
}

SlotDecision run_slot(const SlotObservation& obs, const SystemConfig& cfg,
                      const EnvDraw& env) {
  return plan_slot(obs, obs, cfg, env).decision;
}

}  // namespace wpmec
