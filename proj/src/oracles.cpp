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

#include "wpmec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace wpmec::oracle {
namespace {

std::vector<double> grid_points(double hi, double step) {
  if (!(step > 0.0) || !(hi >= 0.0)) {
    throw std::invalid_argument("grid: need step > 0 and hi >= 0");
  }
  std::vector<double> pts;
  const auto k = static_cast<std::size_t>(std::floor(hi / step));
  for (std::size_t i = 0; i <= k; ++i) pts.push_back(static_cast<double>(i) * step);
  if (pts.back() < hi) pts.push_back(hi);
  return pts;
}

ScalarGridResult argmin(const std::vector<double>& pts,
                        const std::function<double(double)>& f) {
  ScalarGridResult r{pts.front(), f(pts.front())};
  for (double x : pts) {
    const double y = f(x);
    if (y < r.best) r = {x, y};
  }
  return r;
}

std::size_t grid_units(double step) {
  const double k = std::round(1.0 / step);
  if (!(step > 0.0) || std::fabs(k * step - 1.0) > 1e-9) {
    throw std::invalid_argument("allocation grid: 1/step must be an integer");
  }
  return static_cast<std::size_t>(k);
}

// coords[0] is mu0, coords[j + 1] belongs to device idx[j].
struct Problem {
  std::span<const double> weights;
  std::span<const double> delta;
  std::vector<std::size_t> idx;
  double step;

  double value(const std::vector<std::size_t>& units) const {
    const double mu0 = static_cast<double>(units[0]) * step;
    double total = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const double mu = static_cast<double>(units[j + 1]) * step;
      if (mu > 0.0) {
        const std::size_t i = idx[j];
        total += weights[i] * mu * std::log2(1.0 + delta[i] * mu0 / mu);
      }
    }
    return total;
  }
};

void record(const Problem& pb, const std::vector<std::size_t>& units,
            double value, AllocationGridResult& out) {
  ++out.evaluations;
  if (value > out.best) {
    out.best = value;
    out.mu0 = static_cast<double>(units[0]) * pb.step;
    std::fill(out.mu.begin(), out.mu.end(), 0.0);
    for (std::size_t j = 0; j < pb.idx.size(); ++j) {
      out.mu[pb.idx[j]] = static_cast<double>(units[j + 1]) * pb.step;
    }
  }
}

// Splits `rest` units between the last two coordinates.
void split_last_two(const Problem& pb, std::vector<std::size_t>& units,
                    std::size_t rest, bool exhaustive,
                    AllocationGridResult& out) {
  const std::size_t a = units.size() - 2;
  const std::size_t b = units.size() - 1;
  auto eval = [&](std::size_t k) {
    units[a] = k;
    units[b] = rest - k;
    const double v = pb.value(units);
    record(pb, units, v, out);
    return v;
  };
  if (exhaustive) {
    for (std::size_t k = 0; k <= rest; ++k) eval(k);
    return;
  }
  // Concave in k: find the first k with f(k) >= f(k + 1).
  std::size_t lo = 0;
  std::size_t hi = rest;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (eval(mid) < eval(mid + 1)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  eval(lo);
}

void enumerate_face(const Problem& pb, std::vector<std::size_t>& units,
                    std::size_t pos, std::size_t rest, bool exhaustive,
                    AllocationGridResult& out) {
  if (pos == units.size() - 2) {
    split_last_two(pb, units, rest, exhaustive, out);
    return;
  }
  for (std::size_t k = 0; k <= rest; ++k) {
    units[pos] = k;
    enumerate_face(pb, units, pos + 1, rest - k, exhaustive, out);
  }
}

void enumerate_simplex(const Problem& pb, std::vector<std::size_t>& units,
                       std::size_t pos, std::size_t rest,
                       AllocationGridResult& out) {
  if (pos == units.size()) {
    record(pb, units, pb.value(units), out);
    return;
  }
  for (std::size_t k = 0; k <= rest; ++k) {
    units[pos] = k;
    enumerate_simplex(pb, units, pos + 1, rest - k, out);
  }
}

Problem make_problem(std::span<const double> weights,
                     std::span<const double> delta, double step) {
  if (weights.size() != delta.size()) {
    throw std::invalid_argument("allocation grid: length mismatch");
  }
  Problem pb{weights, delta, {}, step};
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0 && delta[i] > 0.0) pb.idx.push_back(i);
  }
  return pb;
}

}  // namespace

double admission_objective(double q, double v, double a) {
  return q * a - v * std::log1p(a);
}

ScalarGridResult admission_grid(double q, double arrival, double v,
                                double step) {
  return argmin(grid_points(arrival, step),
                [&](double a) { return admission_objective(q, v, a); });
}

double discard_objective(double q, double z, double v, double p, double d) {
  return (v * p - q - z) * d;
}

ScalarGridResult discard_grid(double q, double z, double v, double p,
                              double a_max, double step) {
  return argmin(grid_points(a_max, step),
                [&](double d) { return discard_objective(q, z, v, p, d); });
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

AllocationGridResult allocation_grid(std::span<const double> weights,
                                     std::span<const double> delta,
                                     double step, bool exhaustive) {
  const std::size_t k = grid_units(step);
  const Problem pb = make_problem(weights, delta, step);
  AllocationGridResult out;
  out.mu.assign(weights.size(), 0.0);
  out.mu0 = 1.0;
  if (pb.idx.empty()) return out;
  std::vector<std::size_t> units(pb.idx.size() + 1, 0);
  out.best = -1.0;
  enumerate_face(pb, units, 0, k, exhaustive, out);
  return out;
}

AllocationGridResult allocation_grid_simplex(std::span<const double> weights,
                                             std::span<const double> delta,
                                             double step) {
  const std::size_t k = grid_units(step);
  const Problem pb = make_problem(weights, delta, step);
  AllocationGridResult out;
  out.mu.assign(weights.size(), 0.0);
  out.mu0 = 1.0;
  if (pb.idx.empty()) return out;
  std::vector<std::size_t> units(pb.idx.size() + 1, 0);
  out.best = -1.0;
  enumerate_simplex(pb, units, 0, k, out);
  return out;
}

double jain_reference(std::span<const double> values) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : values) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) return 1.0;
  return sum * sum / (static_cast<double>(values.size()) * sum_sq);
}

}  // namespace wpmec::oracle
