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

#ifndef WPMEC_ORACLES_HPP_
#define WPMEC_ORACLES_HPP_

#include <cstddef>
#include <span>
#include <vector>

// Brute-force reference solutions. Nothing in here calls into the scheduler or
// numerics code it is used to check.
namespace wpmec::oracle {

struct ScalarGridResult {
  double argbest = 0.0;
  double best = 0.0;
};

// min over a in {0, step, 2 step, ..., A} (A included) of q a - V ln(1 + a).
ScalarGridResult admission_grid(double q, double arrival, double v,
                                double step);
double admission_objective(double q, double v, double a);

// min over d in the same kind of grid on [0, A_max] of (V p - Q - Z) d.
ScalarGridResult discard_grid(double q, double z, double v, double p,
                              double a_max, double step);
double discard_objective(double q, double z, double v, double p, double d);

// sum_i w_i mu_i log2(1 + delta_i mu0 / mu_i).
double allocation_objective(std::span<const double> weights,
                            std::span<const double> delta, double mu0,
                            std::span<const double> mu);

struct AllocationGridResult {
  double best = 0.0;
  double mu0 = 0.0;
  std::vector<double> mu;
  std::size_t evaluations = 0;
};

// Grid search of the time allocation on the full-budget face
// mu0 + sum mu = 1 at the given step (1/step must be an integer). The
// objective is non-decreasing in every share, so the face holds the simplex
// maximum. With exhaustive = false the last free coordinate is maximised by a
// discrete unimodal search, which returns the same grid optimum for this
// concave objective at a fraction of the cost.
AllocationGridResult allocation_grid(std::span<const double> weights,
                                     std::span<const double> delta,
                                     double step, bool exhaustive = false);

// Same grid over the whole simplex mu0 + sum mu <= 1 (small problems only).
AllocationGridResult allocation_grid_simplex(std::span<const double> weights,
                                             std::span<const double> delta,
                                             double step);

// (sum x)^2 / (N sum x^2) by direct summation.
double jain_reference(std::span<const double> values);

}  // namespace wpmec::oracle

#endif  // WPMEC_ORACLES_HPP_
