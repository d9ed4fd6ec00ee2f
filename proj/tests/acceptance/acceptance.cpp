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

// One line per acceptance criterion. Exit status is non-zero when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wpmec/baselines.hpp"
#include "wpmec/harness.hpp"
#include "wpmec/numerics.hpp"
#include "wpmec/oracles.hpp"
#include "wpmec/scheduler.hpp"

using namespace wpmec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o, double secs) {
  std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << id << " ("
            << name << "): " << o.detail << " [" << fmt(secs, 3) << " s]"
            << std::endl;
  if (!o.passed) ++failures;
}

struct Stats {
  double mean = 0.0;
  double se = 0.0;
};

Stats stats(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                     static_cast<double>(xs.size()));
  }
  return s;
}

// ---------------------------------------------------------------------------

Outcome lambert_round_trip() {
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double x = -1.0 + 6.0 * k / 199.0;
    worst = std::max(worst, std::fabs(lambert_w0(x * std::exp(x)) - x));
  }
  const bool identities = lambert_w0(0.0) == 0.0 && lambert_w0(-kInvE) == -1.0;
  return {worst <= 1e-9 && identities,
          "max |W0(x e^x) - x| = " + fmt(worst) + " on 200 points, W0(0) = 0 and "
          "W0(-1/e) = -1 " + (identities ? "exact" : "NOT exact")};
}

SlotObservation random_observation(std::mt19937_64& rng, std::size_t n,
                                   double p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SlotObservation o;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = 800.0 * u(rng);
    const double z = 800.0 * u(rng);
    // AP backlog below the device margin so the device is active.
    const double s = (q + z / p) * u(rng);
    o.q.push_back(q);
    o.z.push_back(z);
    o.s.push_back(s);
    // Spans the delta range of the default geometry and fading.
    o.delta.push_back(std::exp(std::log(1e-3) + (std::log(200.0) - std::log(1e-3)) * u(rng)));
    o.arrivals.push_back(u(rng));
  }
  return o;
}

Outcome allocation_oracle() {
  std::mt19937_64 rng(2024);
  const double p = 2.0;
  const double bw = 0.2e6;
  double worst = 0.0;
  int checked = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const double step = n < 3 ? 1e-4 : 1e-3;
    for (int k = 0; k < 100; ++k) {
      const SlotObservation o = random_observation(rng, n, p);
      const auto active = select_offload_set(o, p);
      if (active.size() != n) {
        return {false, "generator produced an inactive device"};
      }
      const TimeAllocation a = allocate_time(o, active, p, bw, {1e-12, 1e-9});
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = (o.q[i] + o.z[i] / p - o.s[i]) * bw;
      const double ours = oracle::allocation_objective(w, o.delta, a.mu0, a.mu);
      const auto grid = oracle::allocation_grid(w, o.delta, step);
      worst = std::max(worst, (grid.best - ours) / grid.best);
      ++checked;
    }
  }
  return {worst <= 1e-3,
          std::to_string(checked) + " observations (N = 1, 2, 3); grid exceeds "
          "solver by at most " + fmt(worst) + " relative (negative: solver better)"};
}

Outcome kkt_residuals_on_run() {
  const SystemConfig cfg = SystemConfig::defaults();
  double worst = 0.0;
  double worst_device = 0.0;
  double worst_budget = 0.0;
  std::size_t solved = 0;
  RunOptions opts;
  opts.horizon_slots = 5000;
  opts.on_slot = [&](const SlotContext& ctx) {
    if (!ctx.allocation || ctx.allocation->active.empty()) return;
    ++solved;
    const KktResiduals r =
        kkt_residuals(*ctx.weights, ctx.ap_view->delta, *ctx.allocation);
    const double scale = 1.0 + ctx.allocation->lambda;
    worst = std::max(worst, r.mu0_stationarity / scale);
    worst_device = std::max(worst_device, r.max_device_stationarity / scale);
    worst_budget = std::max(worst_budget, r.budget);
  };
  simulate_run(cfg, Policy::kPcf, 1, opts);
  const bool ok = worst <= 1e-6 && worst_device <= 1e-6 && worst_budget <= 1e-9;
  return {ok, std::to_string(solved) + " solved slots; max residual/(1+lambda): mu0 " +
                  fmt(worst) + ", device " + fmt(worst_device) + "; budget " +
                  fmt(worst_budget)};
}

Outcome closed_forms() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad_a = 0;
  int bad_d = 0;
  for (int k = 0; k < 1000; ++k) {
    const double q = 1000.0 * u(rng) * u(rng);
    const double a = u(rng);
    const double v = 500.0 * u(rng);
    const double best = decide_admission(q, a, v);
    const auto g = oracle::admission_grid(q, a, v, 1e-4);
    if (oracle::admission_objective(q, v, best) > g.best + 1e-12 * (1.0 + std::fabs(g.best))) {
      ++bad_a;
    }
  }
  for (int k = 0; k < 1000; ++k) {
    const double q = 1000.0 * u(rng);
    const double z = 1000.0 * u(rng);
    const double v = 500.0 * u(rng);
    const double p = 1.0 + 4.0 * u(rng);
    const double d = decide_discard(q, z, v, p, 1.0);
    const auto g = oracle::discard_grid(q, z, v, p, 1.0, 1e-4);
    if (oracle::discard_objective(q, z, v, p, d) > g.best + 1e-12 * (1.0 + std::fabs(g.best))) {
      ++bad_d;
    }
  }
  return {bad_a == 0 && bad_d == 0,
          "violations: admission " + std::to_string(bad_a) + "/1000, discard " +
              std::to_string(bad_d) + "/1000"};
}

// ---------------------------------------------------------------------------
// Shared Monte Carlo runs for the bound, trend and zero-drop criteria.

const std::vector<double> kVGrid{100, 200, 300, 400, 500};

struct CellKey {
  Policy policy;
  double v;
  double p;
  bool operator<(const CellKey& o) const {
    return std::tie(policy, v, p) < std::tie(o.policy, o.v, o.p);
  }
};

using Runs = std::map<CellKey, std::vector<RunMetrics>>;

Runs run_cells(const std::vector<Policy>& policies,
               const std::vector<double>& prices, std::uint64_t seed_lo,
               std::uint64_t seed_hi) {
  ExperimentPlan plan;
  plan.policies = policies;
  plan.v_grid = kVGrid;
  plan.p_grid = prices;
  plan.n_seeds = seed_hi - seed_lo;
  plan.seed_base = seed_lo;
  plan.horizon_slots = 5000;
  // Bounds are compared against per-run maxima below so that a violating run
  // still produces metrics for the other criteria.
  RunOptions opts;
  opts.check_bounds = false;
  opts.check_staleness = false;
  const SweepResult res = sweep(plan, std::max(1u, std::thread::hardware_concurrency()), opts);
  if (!res.failures.empty()) {
    throw std::runtime_error("run failed: " + res.failures.front().what);
  }
  Runs out;
  for (const auto& row : res.rows) {
    out[{row.policy, row.v, row.p}].push_back(row.metrics);
  }
  return out;
}

struct Violations {
  std::size_t runs = 0;
  std::size_t bad_runs = 0;
  std::map<std::string, std::size_t> by_kind;
  std::string first;
};

void scan_bounds(const CellKey& key, const std::vector<RunMetrics>& runs,
                 Violations& v) {
  SystemConfig cfg = SystemConfig::defaults();
  cfg.v_param = key.v;
  cfg.drop_price = key.p;
  const BoundReport b = compute_bounds(cfg);
  auto over = [](double x, double bound) {
    return x > bound + 1e-12 * std::max(1.0, bound);
  };
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const RunMetrics& m = runs[k];
    ++v.runs;
    bool bad = false;
    for (std::size_t i = 0; i < cfg.n_devices; ++i) {
      const std::pair<const char*, bool> checks[] = {
          {"Q_max", over(m.max_q[i], b.q_max[i])},
          {"Z_max", over(m.max_z[i], b.z_max[i])},
          {"S_max", over(m.max_s[i], b.s_max[i])},
          {"g_max", m.max_age_per_device[i] > b.g_max[i]}};
      for (const auto& [kind, hit] : checks) {
        if (!hit) continue;
        ++v.by_kind[kind];
        if (!bad && v.first.empty()) {
          v.first = std::string(kind) + " at " + std::string(to_string(key.policy)) +
                    " V=" + format_number(key.v) + " p=" + format_price(key.p) +
                    " run " + std::to_string(k) + " device " + std::to_string(i);
        }
        bad = true;
      }
    }
    if (bad) ++v.bad_runs;
  }
}

Outcome theorem_bounds(const Runs& runs) {
  Violations v;
  Violations finite_p;
  for (const auto& [key, ms] : runs) {
    std::vector<RunMetrics> first20(ms.begin(), ms.begin() + std::min<std::size_t>(20, ms.size()));
    scan_bounds(key, first20, v);
    if (!is_infinite_price(key.p)) scan_bounds(key, first20, finite_p);
  }
  std::string kinds;
  for (const auto& [k, n] : v.by_kind) kinds += " " + k + "=" + std::to_string(n);
  return {v.bad_runs == 0,
          std::to_string(v.bad_runs) + "/" + std::to_string(v.runs) +
              " runs violate a bound (p=2 alone: " + std::to_string(finite_p.bad_runs) +
              "/" + std::to_string(finite_p.runs) + ")" +
              (kinds.empty() ? "" : "; device-level counts:" + kinds + "; first: " + v.first)};
}

Outcome staleness() {
  std::size_t runs = 0;
  std::string failure;
  for (std::size_t m : {2u, 5u, 10u}) {
    ExperimentPlan plan;
    plan.policies = {Policy::kPpf};
    plan.v_grid = {400};
    plan.p_grid = {2.0};
    plan.n_seeds = 20;
    plan.horizon_slots = 5000;
    plan.base.feedback_interval = m;
    RunOptions opts;
    opts.check_bounds = false;
    opts.check_staleness = true;
    const SweepResult res = sweep(plan, std::max(1u, std::thread::hardware_concurrency()), opts);
    runs += res.rows.size() + res.failures.size();
    if (!res.failures.empty() && failure.empty()) failure = res.failures.front().what;
  }
  return {failure.empty(), failure.empty()
                               ? std::to_string(runs) + " PPF runs (m = 2, 5, 10) without a staleness assertion"
                               : "assertion fired: " + failure};
}

Outcome trends(const Runs& runs) {
  std::ostringstream detail;
  bool a_ok = true;
  bool b_ok = true;
  bool c_ok = true;
  std::size_t seeds = 0;

  for (double v : kVGrid) {
    const auto& pcf = runs.at({Policy::kPcf, v, 2.0});
    const auto& ppf = runs.at({Policy::kPpf, v, 2.0});
    seeds = pcf.size();
    std::vector<double> tp_pcf, tp_ppf;
    for (const auto& m : pcf) tp_pcf.push_back(m.avg_throughput);
    for (const auto& m : ppf) tp_ppf.push_back(m.avg_throughput);
    const Stats sa = stats(tp_pcf), sb = stats(tp_ppf);
    if (sa.mean < sb.mean - std::hypot(sa.se, sb.se)) a_ok = false;
  }
  detail << "(a) PCF >= PPF throughput within pooled SE: " << (a_ok ? "yes" : "no");

  for (Policy pol : {Policy::kPcf, Policy::kPpf}) {
    std::vector<double> ages;
    for (double v : kVGrid) {
      std::vector<double> xs;
      for (const auto& m : runs.at({pol, v, 2.0})) xs.push_back(static_cast<double>(m.max_age()));
      ages.push_back(stats(xs).mean);
    }
    for (std::size_t k = 1; k < ages.size(); ++k) {
      if (ages[k] < ages[k - 1]) b_ok = false;
    }
    detail << "; (b) " << to_string(pol) << " mean max age";
    for (double a : ages) detail << ' ' << fmt(a, 5);
  }

  for (Policy pol : {Policy::kPcf, Policy::kPpf}) {
    // Per-seed second differences of utility across the V grid; the paired
    // design removes the common environment noise.
    const std::size_t n = runs.at({pol, kVGrid[0], 2.0}).size();
    std::vector<double> means;
    for (double v : kVGrid) {
      std::vector<double> xs;
      for (const auto& m : runs.at({pol, v, 2.0})) xs.push_back(m.avg_utility);
      means.push_back(stats(xs).mean);
    }
    detail << "; (c) " << to_string(pol) << " utility increments";
    for (std::size_t k = 1; k < means.size(); ++k) detail << ' ' << fmt(means[k] - means[k - 1], 3);
    for (std::size_t k = 0; k + 2 < kVGrid.size(); ++k) {
      std::vector<double> second;
      for (std::size_t s = 0; s < n; ++s) {
        const double u0 = runs.at({pol, kVGrid[k], 2.0})[s].avg_utility;
        const double u1 = runs.at({pol, kVGrid[k + 1], 2.0})[s].avg_utility;
        const double u2 = runs.at({pol, kVGrid[k + 2], 2.0})[s].avg_utility;
        second.push_back(u2 - 2.0 * u1 + u0);
      }
      const Stats st = stats(second);
      if (st.mean > st.se) {
        c_ok = false;
        detail << " [increase at V=" << format_number(kVGrid[k + 1]) << "->"
               << format_number(kVGrid[k + 2]) << ": +" << fmt(st.mean, 3)
               << ", SE " << fmt(st.se, 2) << "]";
      }
    }
  }
  detail << "; " << seeds << " seeds";
  const std::string verdict = std::string(" -> a ") + (a_ok ? "pass" : "FAIL") +
                              ", b " + (b_ok ? "pass" : "FAIL") + ", c " +
                              (c_ok ? "pass" : "FAIL");
  return {a_ok && b_ok && c_ok, detail.str() + verdict};
}

Outcome zero_drop(const Runs& runs) {
  double dropped = 0.0;
  std::size_t n = 0;
  std::size_t over = 0;
  std::int64_t worst_age = 0;
  std::int64_t bound_at_worst = 0;
  for (const auto& [key, ms] : runs) {
    if (!is_infinite_price(key.p)) continue;
    SystemConfig cfg = SystemConfig::defaults();
    cfg.v_param = key.v;
    cfg.drop_price = key.p;
    const BoundReport b = compute_bounds(cfg);
    for (const auto& m : ms) {
      ++n;
      dropped += m.total_dropped;
      bool bad = false;
      for (std::size_t i = 0; i < cfg.n_devices; ++i) {
        if (m.max_age_per_device[i] > worst_age) {
          worst_age = m.max_age_per_device[i];
          bound_at_worst = b.g_max[i];
        }
        if (m.max_age_per_device[i] > b.g_max[i]) bad = true;
      }
      if (bad) ++over;
    }
  }
  return {dropped == 0.0 && over == 0,
          std::to_string(n) + " runs with p = inf: total dropped " + format_number(dropped) +
              ", runs with age above g_max " + std::to_string(over) +
              " (largest age " + std::to_string(worst_age) + ", its bound " +
              std::to_string(bound_at_worst) + ")"};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "wpmec_acceptance";
  fs::create_directories(dir);
  const fs::path plan_path = dir / "plan.cfg";
  {
    std::ofstream f(plan_path);
    f << "policies = PCF, PPF, PF, HDO\n"
         "v_grid = 100, 300\n"
         "p_grid = 2, 3\n"
         "n_seeds = 3\n"
         "horizon_slots = 1500\n";
  }
  auto csv_of = [&](std::size_t parallel) {
    const ExperimentPlan plan = load_plan_file(plan_path.string());
    const SweepResult res = sweep(plan, parallel);
    std::ostringstream os;
    write_results_csv(os, res.rows);
    return os.str() + std::to_string(res.failures.size());
  };
  const std::string a = csv_of(1);
  const std::string b = csv_of(1);
  const std::string c = csv_of(4);
  fs::remove_all(dir);
  const bool ok = a == b && a == c;
  return {ok, std::string("re-run ") + (a == b ? "byte-identical" : "DIFFERS") +
                  ", 4 threads vs serial " + (a == c ? "byte-identical" : "DIFFERS") +
                  " (" + std::to_string(a.size()) + " bytes)"};
}

std::string trace_text(const SystemConfig& cfg, Policy p, std::uint64_t seed) {
  RunOptions o;
  o.horizon_slots = 5000;
  o.record_trace = true;
  const RunMetrics m = simulate_run(cfg, p, seed, o);
  std::ostringstream os;
  write_trace_csv(os, m.trace);
  return os.str();
}

Outcome degeneracy() {
  // m = 1 partial feedback is complete feedback.
  SystemConfig cfg = SystemConfig::defaults();
  cfg.feedback_interval = 1;
  int trace_mismatch = 0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    if (trace_text(cfg, Policy::kPcf, seed) != trace_text(cfg, Policy::kPpf, seed)) {
      ++trace_mismatch;
    }
  }

  // HDO is the proposed slot decision with the virtual queues removed.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SystemConfig base = SystemConfig::defaults();
  int hdo_mismatch = 0;
  for (int k = 0; k < 1000; ++k) {
    SlotObservation o;
    EnvDraw env = draw_slot(base, 99, k);
    for (std::size_t i = 0; i < base.n_devices; ++i) {
      o.q.push_back(u(rng) < 0.2 ? 0.0 : 1000.0 * u(rng));
      o.z.push_back(0.0);
      o.s.push_back(u(rng) < 0.2 ? 0.0 : 600.0 * u(rng));
      o.delta.push_back(channel_delta(base, env.gains[i], i));
      o.arrivals.push_back(env.arrivals[i]);
    }
    const SlotDecision a = hdo_decide(o, base, env);
    const SlotDecision b = run_slot(o, base, env);
    if (a.mu0 != b.mu0 || a.mu != b.mu || a.admit != b.admit || a.drop != b.drop ||
        a.rate != b.rate) {
      ++hdo_mismatch;
    }
  }

  // No arrivals: nothing is admitted, offloaded, dropped or aged.
  SystemConfig empty = SystemConfig::defaults();
  empty.a_max.assign(empty.n_devices, 0.0);
  empty.epsilon.assign(empty.n_devices, 0.0);
  int nonzero = 0;
  for (Policy p : {Policy::kPcf, Policy::kPpf, Policy::kPf, Policy::kHdo}) {
    RunOptions o;
    o.horizon_slots = 5000;
    const RunMetrics m = simulate_run(empty, p, 1, o);
    if (m.avg_throughput != 0.0 || m.avg_utility != 0.0 || m.total_dropped != 0.0 ||
        m.max_q_overall() != 0.0 || m.max_z_overall() != 0.0 ||
        m.max_s_overall() != 0.0 || m.max_age() != 0) {
      ++nonzero;
    }
  }
  const bool ok = trace_mismatch == 0 && hdo_mismatch == 0 && nonzero == 0;
  return {ok, "PPF(m=1) vs PCF trace mismatches " + std::to_string(trace_mismatch) +
                  "/3; HDO vs z=0 slot decision mismatches " + std::to_string(hdo_mismatch) +
                  "/1000; empty-arrival policies with nonzero metrics " +
                  std::to_string(nonzero) + "/4"};
}

}  // namespace

int main() {
  std::cout << "wpmec acceptance suite" << std::endl;
  auto timed = [](int id, const std::string& name, auto&& fn, double limit = 0.0) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (limit > 0.0 && secs > limit) {
      o.passed = false;
      o.detail += "; exceeded the " + fmt(limit, 3) + " s budget";
    }
    report(id, name, o, secs);
  };

  timed(1, "Lambert W round trip", lambert_round_trip, 1.0);
  timed(2, "allocation vs grid oracle", allocation_oracle, 120.0);
  timed(3, "KKT residuals on a 5000-slot run", kkt_residuals_on_run);
  timed(4, "closed-form admission and discard", closed_forms);

  const auto t0 = Clock::now();
  Runs bound_runs;
  std::string run_error;
  try {
    bound_runs = run_cells({Policy::kPcf, Policy::kPpf}, {2.0, kInfiniteDropPrice}, 1, 21);
  } catch (const std::exception& e) {
    run_error = e.what();
  }
  const double bound_secs = seconds_since(t0);
  {
    Outcome o = run_error.empty() ? theorem_bounds(bound_runs)
                                  : Outcome{false, "exception: " + run_error};
    if (bound_secs > 300.0) {
      o.passed = false;
      o.detail += "; exceeded the 300 s budget";
    }
    report(5, "hard backlog and age bounds", o, bound_secs);
  }

  timed(6, "feedback staleness limits", staleness);

  timed(7, "throughput, age and utility trends", [&]() {
    Runs all = bound_runs;
    const Runs more = run_cells({Policy::kPcf, Policy::kPpf}, {2.0}, 21, 101);
    for (const auto& [k, ms] : more) {
      auto& dst = all[k];
      dst.insert(dst.end(), ms.begin(), ms.end());
    }
    return trends(all);
  });

  timed(8, "zero-drop regime", [&]() {
    if (!run_error.empty()) return Outcome{false, "exception: " + run_error};
    return zero_drop(bound_runs);
  });
  timed(9, "determinism", determinism);
  timed(10, "degeneracy suite", degeneracy);

  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
