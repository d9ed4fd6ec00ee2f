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

#include "wpmec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "wpmec/harness.hpp"
#include "wpmec/numerics.hpp"
#include "wpmec/oracles.hpp"
#include "wpmec/scheduler.hpp"

namespace wpmec {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

CheckResult check_lambert(std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < samples * 50; ++k) {
    // Log-spread over [-1/e, 1e6].
    const double u = unit(rng);
    const double x = u < 0.3 ? -kInvE * unit(rng)
                             : std::pow(10.0, -6.0 + 12.0 * unit(rng));
    const double w = lambert_w0(x);
    const double err = std::fabs(w * std::exp(w) - x) / std::max(std::fabs(x), 1e-300);
    worst = std::max(worst, err);
  }
  return {"lambert_w0 round trip", worst <= 1e-12,
          "max relative residual " + fmt(worst)};
}

CheckResult check_admission(std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double q = 1000.0 * unit(rng);
    const double a = unit(rng);
    const double v = 1000.0 * unit(rng);
    const double closed = decide_admission(q, a, v);
    const auto grid = oracle::admission_grid(q, a, v, 1e-4);
    const double gap = oracle::admission_objective(q, v, closed) - grid.best;
    worst = std::max(worst, gap);
  }
  return {"admission closed form vs grid", worst <= 1e-9,
          "worst objective excess " + fmt(worst)};
}

CheckResult check_discard(std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double q = 1000.0 * unit(rng);
    const double z = 1000.0 * unit(rng);
    const double v = 400.0 * unit(rng);
    const double p = 1.0 + 3.0 * unit(rng);
    const double closed = decide_discard(q, z, v, p, 1.0);
    const auto grid = oracle::discard_grid(q, z, v, p, 1.0, 1e-3);
    const double gap =
        oracle::discard_objective(q, z, v, p, closed) - grid.best;
    worst = std::max(worst, gap);
  }
  return {"discard closed form vs grid", worst <= 1e-9,
          "worst objective excess " + fmt(worst)};
}

CheckResult check_allocation(std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_short = 0.0;
  double worst_kkt = 0.0;
  for (int k = 0; k < samples; ++k) {
    std::vector<double> w = {1.0 + 999.0 * unit(rng), 1.0 + 999.0 * unit(rng)};
    std::vector<double> d = {0.1 + 50.0 * unit(rng), 0.1 + 50.0 * unit(rng)};
    const TimeAllocation a = allocate_weighted(w, d, {1e-12, 1e-9});
    const double ours = allocation_objective(w, d, a.mu0, a.mu);
    const auto grid = oracle::allocation_grid(w, d, 1e-3);
    worst_short = std::max(worst_short, (grid.best - ours) / grid.best);
    const KktResiduals r = kkt_residuals(w, d, a);
    worst_kkt = std::max(worst_kkt, r.mu0_stationarity / (1.0 + a.lambda));
  }
  const bool ok = worst_short <= 1e-9 && worst_kkt <= 1e-6;
  return {"time allocation vs grid", ok,
          "grid beats solver by at most " + fmt(worst_short) +
              " (relative), KKT residual " + fmt(worst_kkt)};
}

CheckResult check_run_kkt_and_bounds(std::uint64_t seed, int slots) {
  SystemConfig cfg = SystemConfig::defaults();
  double worst = 0.0;
  double worst_budget = 0.0;
  RunOptions opt;
  opt.horizon_slots = static_cast<std::size_t>(slots);
  opt.on_slot = [&](const SlotContext& ctx) {
    if (!ctx.allocation || ctx.allocation->active.empty()) return;
    const KktResiduals r = kkt_residuals(*ctx.weights, ctx.ap_view->delta,
                                         *ctx.allocation);
    worst = std::max(worst, r.mu0_stationarity / (1.0 + ctx.allocation->lambda));
    worst_budget = std::max(worst_budget, r.budget);
  };
  try {
    simulate_run(cfg, Policy::kPcf, seed, opt);
    simulate_run(cfg, Policy::kPpf, seed, opt);
  } catch (const std::exception& e) {
    return {"short run KKT and hard bounds", false, e.what()};
  }
  const bool ok = worst <= 1e-6 && worst_budget <= 1e-9;
  return {"short run KKT and hard bounds", ok,
          "max stationarity " + fmt(worst) + ", budget " + fmt(worst_budget) +
              ", no bound violated"};
}

bool same_metrics(const RunMetrics& a, const RunMetrics& b) {
  return a.avg_throughput == b.avg_throughput &&
         a.avg_utility == b.avg_utility && a.jain.value == b.jain.value &&
         a.max_age_per_device == b.max_age_per_device && a.max_q == b.max_q &&
         a.max_z == b.max_z && a.max_s == b.max_s &&
         a.total_dropped == b.total_dropped;
}

CheckResult check_degeneracy(std::uint64_t seed, int slots) {
  SystemConfig cfg = SystemConfig::defaults();
  cfg.feedback_interval = 1;
  RunOptions opt;
  opt.horizon_slots = static_cast<std::size_t>(slots);
  const RunMetrics pcf = simulate_run(cfg, Policy::kPcf, seed, opt);
  const RunMetrics ppf = simulate_run(cfg, Policy::kPpf, seed, opt);
  const bool ok = same_metrics(pcf, ppf);
  return {"PPF with m = 1 equals PCF", ok,
          ok ? "identical metrics" : "metrics differ"};
}

CheckResult check_determinism(std::uint64_t seed, int slots) {
  ExperimentPlan plan;
  plan.policies = {Policy::kPcf, Policy::kPpf, Policy::kPf, Policy::kHdo};
  plan.n_seeds = 2;
  plan.seed_base = seed;
  plan.horizon_slots = static_cast<std::size_t>(std::max(slots / 5, 1));
  const SweepResult one = sweep(plan, 1);
  const SweepResult two = sweep(plan, 2);
  bool ok = one.failures.empty() && two.failures.empty() &&
            one.rows.size() == two.rows.size();
  for (std::size_t k = 0; ok && k < one.rows.size(); ++k) {
    ok = one.rows[k].seed == two.rows[k].seed &&
         one.rows[k].policy == two.rows[k].policy &&
         same_metrics(one.rows[k].metrics, two.rows[k].metrics);
  }
  return {"deterministic replay across thread counts", ok,
          std::to_string(one.rows.size()) + " runs compared"};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<CheckResult> out;
  out.push_back(check_lambert(rng, options.samples));
  out.push_back(check_admission(rng, options.samples));
  out.push_back(check_discard(rng, options.samples));
  out.push_back(check_allocation(rng, options.samples));
  out.push_back(check_run_kkt_and_bounds(options.seed, options.slots));
  out.push_back(check_degeneracy(options.seed, options.slots));
  out.push_back(check_determinism(options.seed, options.slots));
  return out;
}

bool print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail
       << '\n';
    all = all && c.passed;
  }
  return all;
}

}  // namespace wpmec
