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

#include "wpmec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "wpmec/baselines.hpp"
#include "wpmec/errors.hpp"
#include "wpmec/feedback.hpp"

namespace wpmec {
namespace {

// Rounding slack on the hard bounds; the bounds themselves are exact.
bool within(double value, double bound) {
  return value <= bound + 1e-12 * std::max(1.0, std::fabs(bound));
}

[[noreturn]] void report_violation(const char* what, Policy policy,
                                   std::uint64_t seed, std::int64_t t,
                                   std::size_t i, double value, double bound,
                                   const SlotObservation& truth,
                                   std::int64_t age, const BoundReport& b) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " bound violated: policy=" << to_string(policy)
      << " seed=" << seed << " slot=" << t << " device=" << i
      << " value=" << value << " bound=" << bound << "\n  slot dump: Q="
      << truth.q[i] << " Z=" << truth.z[i] << " S=" << truth.s[i]
      << " age=" << age << " delta=" << truth.delta[i]
      << " | Q_max=" << b.q_max[i] << " Z_max=" << b.z_max[i]
      << " S_max=" << b.s_max[i] << " g_max=" << b.g_max[i];
  throw BoundViolation(msg.str());
}

}  // namespace

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::kPcf:
      return "PCF";
    case Policy::kPpf:
      return "PPF";
    case Policy::kPf:
      return "PF";
    case Policy::kHdo:
      return "HDO";
  }
  return "PCF";
}

Policy parse_policy(std::string_view s) {
  std::string up(s);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "PCF") return Policy::kPcf;
  if (up == "PPF") return Policy::kPpf;
  if (up == "PF") return Policy::kPf;
  if (up == "HDO") return Policy::kHdo;
  throw ConfigError("unknown policy '" + std::string(s) +
                    "' (PCF, PPF, PF, HDO)");
}

JainIndex jain(std::span<const double> values) {
  if (values.empty()) throw ContractViolation("jain: empty input");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : values) {
    if (!(x >= 0.0)) throw ContractViolation("jain: values must be >= 0");
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) return {1.0, true};
  return {sum * sum / (static_cast<double>(values.size()) * sum_sq), false};
}

std::int64_t RunMetrics::max_age() const {
  std::int64_t m = 0;
  for (auto a : max_age_per_device) m = std::max(m, a);
  return m;
}

namespace {
double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}
}  // namespace

double RunMetrics::max_q_overall() const { return max_of(max_q); }
double RunMetrics::max_z_overall() const { return max_of(max_z); }
double RunMetrics::max_s_overall() const { return max_of(max_s); }

RunMetrics simulate_run(const SystemConfig& cfg, Policy policy,
                        std::uint64_t seed, const RunOptions& options) {
  cfg.validate();
  const std::size_t n = cfg.n_devices;
  const double p = cfg.drop_price;
  const std::size_t horizon = options.horizon_slots;
  const std::size_t warmup =
      horizon > cfg.warmup_slots ? cfg.warmup_slots : 0;

  std::vector<DeviceState> devices(n);
  ApState ap = ApState::empty(n);
  FeedbackStore store(n, cfg.feedback_interval);
  PfState pf = PfState::initial(n, cfg.pf_window);

  const bool uses_feedback = policy != Policy::kPcf;
  const bool check_theorem = options.check_bounds &&
                             (policy == Policy::kPcf || policy == Policy::kPpf);
  const BoundReport bounds = compute_bounds(cfg);
  std::vector<StalenessLimits> staleness(n);
  for (std::size_t i = 0; i < n; ++i) {
    staleness[i] = staleness_limits(cfg.c_max[i], cfg.a_max[i], p,
                                    cfg.feedback_interval);
  }

  RunMetrics m;
  m.max_age_per_device.assign(n, 0);
  m.max_q.assign(n, 0.0);
  m.max_z.assign(n, 0.0);
  m.max_s.assign(n, 0.0);
  m.slots = horizon;
  m.measured_slots = horizon - warmup;
  std::vector<double> per_device(n, 0.0);
  double throughput_sum = 0.0;
  double utility_sum = 0.0;

  SlotObservation truth;
  truth.q.resize(n);
  truth.z.resize(n);
  std::vector<double> expired(n, 0.0);
  std::vector<double> q_next(n);
  std::vector<double> z_next(n);
  std::vector<std::int64_t> ages(n);

  for (std::size_t slot = 0; slot < horizon; ++slot) {
    const auto t = static_cast<std::int64_t>(slot);
    const EnvDraw env = draw_slot(cfg, seed, t);

    truth.s = ap.s_backlogs;
    truth.delta.resize(n);
    truth.arrivals = env.arrivals;
    for (std::size_t i = 0; i < n; ++i) {
      DeviceState& dev = devices[i];
      dev.channel_gain = env.gains[i];
      dev.delta = channel_delta(cfg, env.gains[i], i);
      truth.q[i] = dev.q_backlog;
      truth.z[i] = dev.z_backlog;
      truth.delta[i] = dev.delta;
      ages[i] = max_age(dev, t);

      m.max_q[i] = std::max(m.max_q[i], truth.q[i]);
      m.max_z[i] = std::max(m.max_z[i], truth.z[i]);
      m.max_s[i] = std::max(m.max_s[i], truth.s[i]);
      m.max_age_per_device[i] = std::max(m.max_age_per_device[i], ages[i]);

      if (check_theorem) {
        if (!within(truth.q[i], bounds.q_max[i])) {
          report_violation("Q_max", policy, seed, t, i, truth.q[i],
                           bounds.q_max[i], truth, ages[i], bounds);
        }
        if (!within(truth.z[i], bounds.z_max[i])) {
          report_violation("Z_max", policy, seed, t, i, truth.z[i],
                           bounds.z_max[i], truth, ages[i], bounds);
        }
        if (!within(truth.s[i], bounds.s_max[i])) {
          report_violation("S_max", policy, seed, t, i, truth.s[i],
                           bounds.s_max[i], truth, ages[i], bounds);
        }
        if (ages[i] > bounds.g_max[i]) {
          report_violation("age g_max", policy, seed, t, i,
                           static_cast<double>(ages[i]),
                           static_cast<double>(bounds.g_max[i]), truth,
                           ages[i], bounds);
        }
      }
    }

    const SlotObservation ap_view =
        uses_feedback ? store.observe(ap, truth.delta, truth.arrivals) : truth;
    if (uses_feedback && options.check_staleness) {
      for (std::size_t i = 0; i < n; ++i) {
        const double dq = ap_view.q[i] - truth.q[i];
        const double dz = ap_view.z[i] - truth.z[i];
        if (!within(std::fabs(dq), staleness[i].q) ||
            !within(std::fabs(dz), staleness[i].z)) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "feedback staleness bound violated: policy="
              << to_string(policy) << " seed=" << seed << " slot=" << t
              << " device=" << i << " Qhat-Q=" << dq << " (limit "
              << staleness[i].q << ") Zhat-Z=" << dz << " (limit "
              << staleness[i].z << ") age=" << store.snapshot_age()[i];
          throw BoundViolation(msg.str());
        }
      }
    }

    SlotPlan plan;
    switch (policy) {
      case Policy::kPcf:
      case Policy::kPpf:
        plan = plan_slot(ap_view, truth, cfg, env);
        break;
      case Policy::kHdo:
        plan = hdo_plan(ap_view, truth, cfg, env);
        break;
      case Policy::kPf:
        for (std::size_t i = 0; i < n; ++i) {
          expired[i] = expired_mass(devices[i], t,
                                    static_cast<std::int64_t>(cfg.g_max_slots));
        }
        plan.decision = pf_decide(ap_view, cfg, env, expired, pf);
        break;
    }
    const SlotDecision& d = plan.decision;

    if (options.on_slot) {
      SlotContext ctx;
      ctx.t = t;
      ctx.policy = policy;
      ctx.env = &env;
      ctx.ap_view = &ap_view;
      ctx.true_state = &truth;
      ctx.decision = &d;
      if (policy != Policy::kPf) {
        ctx.allocation = &plan.allocation;
        ctx.weights = &plan.weights;
      }
      options.on_slot(ctx);
    }

    const bool measured = slot >= warmup;
    double slot_throughput = 0.0;
    double slot_utility = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      DeviceState& dev = devices[i];
      const DeviceStepOutcome out =
          advance_device_queue(dev, d.rate[i], d.drop[i], d.admit[i], t);
      ap.s_backlogs[i] = step_ap_queue(ap.s_backlogs[i], env.proc[i],
                                       out.offloaded);
      ap.r_current[i] = env.proc[i];
      dev.z_backlog = step_virtual_queue(dev.z_backlog, d.rate[i], d.drop[i],
                                         cfg.epsilon[i], p);
      q_next[i] = dev.q_backlog;
      z_next[i] = dev.z_backlog;

      const double served =
          cfg.throughput_accounting == ThroughputAccounting::kDelivered
              ? out.offloaded
              : d.admit[i];
      const double penalty = d.drop[i] > 0.0 ? p * d.drop[i] : 0.0;
      slot_utility += std::log1p(d.admit[i]) - penalty;
      slot_throughput += served;
      m.total_dropped += out.dropped;
      if (measured) per_device[i] += served;

      if (options.record_trace) {
        TraceRow row;
        row.slot = t;
        row.device = i;
        row.q = truth.q[i];
        row.z = truth.z[i];
        row.s = truth.s[i];
        row.age = ages[i];
        row.gain = env.gains[i];
        row.arrival = env.arrivals[i];
        row.proc = env.proc[i];
        row.mu0 = d.mu0;
        row.mu = d.mu[i];
        row.rate = d.rate[i];
        row.admit = d.admit[i];
        row.drop = d.drop[i];
        row.offloaded = out.offloaded;
        row.dropped = out.dropped;
        m.trace.push_back(row);
      }
    }
    if (measured) {
      throughput_sum += slot_throughput;
      utility_sum += slot_utility;
    }
    if (uses_feedback) store.end_slot(d.mu, q_next, z_next);
  }

  if (m.measured_slots > 0) {
    const double k = static_cast<double>(m.measured_slots);
    m.avg_throughput = throughput_sum / k;
    m.avg_utility = utility_sum / k;
    for (double& x : per_device) x /= k;
  }
  m.jain = jain(per_device);
  return m;
}

void ExperimentPlan::validate() const {
  if (policies.empty() || v_grid.empty() || p_grid.empty()) {
    throw ConfigError("plan: policies, v_grid and p_grid must be non-empty");
  }
  if (n_seeds < 1) throw ConfigError("plan: n_seeds must be >= 1");
  if (horizon_slots < 1) throw ConfigError("plan: horizon_slots must be >= 1");
  for (double v : v_grid) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("plan: v_grid entries must be finite and >= 0");
    }
  }
  for (double p : p_grid) {
    if (!(p >= 1.0)) throw ConfigError("plan: p_grid entries must be >= 1");
  }
  base.validate();
}

SweepResult sweep(const ExperimentPlan& plan, std::size_t parallel,
                  const RunOptions& run_options) {
  plan.validate();
  struct Cell {
    Policy policy;
    double v;
    double p;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (Policy pol : plan.policies) {
    for (double v : plan.v_grid) {
      for (double p : plan.p_grid) {
        for (std::size_t k = 0; k < plan.n_seeds; ++k) {
          cells.push_back({pol, v, p, plan.seed_base + k});
        }
      }
    }
  }

  RunOptions opts = run_options;
  opts.horizon_slots = plan.horizon_slots;
  std::vector<std::optional<RunMetrics>> results(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t k = next.fetch_add(1); k < cells.size();
         k = next.fetch_add(1)) {
      const Cell& c = cells[k];
      SystemConfig cfg = plan.base;
      cfg.v_param = c.v;
      cfg.drop_price = c.p;
      try {
        results[k] = simulate_run(cfg, c.policy, c.seed, opts);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(parallel, 1, std::max<std::size_t>(cells.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SweepResult out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const Cell& c = cells[k];
    if (results[k]) {
      out.rows.push_back({c.policy, c.v, c.p, c.seed, std::move(*results[k])});
    } else {
      out.failures.push_back({c.policy, c.v, c.p, c.seed, errors[k]});
    }
  }
  return out;
}

}  // namespace wpmec
