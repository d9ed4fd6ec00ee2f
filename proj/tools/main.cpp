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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wpmec/errors.hpp"
#include "wpmec/harness.hpp"
#include "wpmec/verify.hpp"

namespace fs = std::filesystem;
using namespace wpmec;

namespace {

struct Flags {
  std::vector<std::string> policies;
  std::vector<double> v;
  std::vector<std::string> p;
  std::size_t seeds = 0;
  std::uint64_t seed_base = 0;
  std::size_t slots = 0;
  std::string config;
  std::string out;
  bool trace = false;
  std::size_t parallel = 1;
};

void add_cell_flags(CLI::App* cmd, Flags& f, bool lists) {
  if (lists) {
    cmd->add_option("--policy", f.policies, "PCF, PPF, PF, HDO (repeatable)")
        ->delimiter(',');
    cmd->add_option("--v", f.v, "Lyapunov weight V (list)")->delimiter(',');
    cmd->add_option("--p", f.p, "drop price p, or inf (list)")->delimiter(',');
  } else {
    cmd->add_option("--policy", f.policies, "PCF, PPF, PF or HDO")
        ->expected(1);
    cmd->add_option("--v", f.v, "Lyapunov weight V")->expected(1);
    cmd->add_option("--p", f.p, "drop price p, or inf")->expected(1);
  }
  cmd->add_option("--seeds", f.seeds, "number of seeds");
  cmd->add_option("--seed-base", f.seed_base, "first seed");
  cmd->add_option("--slots", f.slots, "horizon in slots");
  cmd->add_option("--config", f.config, "key = value config file");
  cmd->add_option("--out", f.out, "output directory (stdout if omitted)");
  cmd->add_flag("--trace", f.trace, "write per-slot traces");
  cmd->add_option("--parallel", f.parallel, "worker threads")
      ->check(CLI::PositiveNumber);
}

ExperimentPlan build_plan(const Flags& f) {
  ExperimentPlan plan;
  if (!f.config.empty()) plan = load_plan_file(f.config, plan);
  if (!f.policies.empty()) {
    plan.policies.clear();
    for (const auto& s : f.policies) plan.policies.push_back(parse_policy(s));
  }
  if (!f.v.empty()) plan.v_grid = f.v;
  if (!f.p.empty()) {
    plan.p_grid.clear();
    for (const auto& s : f.p) plan.p_grid.push_back(parse_price(s));
  }
  if (f.seeds > 0) plan.n_seeds = f.seeds;
  if (f.seed_base > 0) plan.seed_base = f.seed_base;
  if (f.slots > 0) plan.horizon_slots = f.slots;
  plan.validate();
  return plan;
}

std::string trace_name(const SweepRow& row) {
  std::ostringstream os;
  os << "trace_" << to_string(row.policy) << "_V" << format_number(row.v)
     << "_p" << format_price(row.p) << "_s" << row.seed << ".csv";
  return os.str();
}

int execute(const ExperimentPlan& plan, const Flags& f) {
  RunOptions opts;
  opts.record_trace = f.trace;
  const SweepResult res = sweep(plan, f.parallel, opts);

  if (f.out.empty()) {
    write_results_csv(std::cout, res.rows);
    if (f.trace) {
      for (const auto& row : res.rows) {
        std::cout << "\n# " << trace_name(row) << '\n';
        write_trace_csv(std::cout, row.metrics.trace);
      }
    }
  } else {
    fs::create_directories(f.out);
    std::ofstream csv(fs::path(f.out) / "results.csv", std::ios::binary);
    write_results_csv(csv, res.rows);
    if (f.trace) {
      for (const auto& row : res.rows) {
        std::ofstream tr(fs::path(f.out) / trace_name(row), std::ios::binary);
        write_trace_csv(tr, row.metrics.trace);
      }
    }
  }
  for (const auto& fail : res.failures) {
    std::cerr << "run failed: policy=" << to_string(fail.policy)
              << " V=" << format_number(fail.v) << " p="
              << format_price(fail.p) << " seed=" << fail.seed << "\n  "
              << fail.what << '\n';
  }
  return res.failures.empty() ? 0 : 2;
}

void print_bounds(const SystemConfig& cfg) {
  const BoundReport b = compute_bounds(cfg);
  std::cout << "V = " << format_number(cfg.v_param)
            << ", p = " << format_price(cfg.drop_price)
            << ", m = " << cfg.feedback_interval << '\n'
            << "B1 = " << format_number(b.b1) << '\n'
            << "B2 = " << format_number(b.b2) << '\n'
            << "device,q_max_mb,z_max,s_max_mb,g_max_slots\n";
  for (std::size_t i = 0; i < cfg.n_devices; ++i) {
    std::cout << i << ',' << format_number(b.q_max[i]) << ','
              << format_number(b.z_max[i]) << ',' << format_number(b.s_max[i])
              << ',' << b.g_max[i] << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-aware scheduling simulator for wireless powered MEC"};
  app.require_subcommand(1);

  Flags run_flags;
  auto* run = app.add_subcommand("run", "simulate a single cell");
  add_cell_flags(run, run_flags, false);

  Flags sweep_flags;
  auto* sw = app.add_subcommand("sweep", "simulate the cartesian product of a plan");
  add_cell_flags(sw, sweep_flags, true);

  Flags bounds_flags;
  auto* bounds = app.add_subcommand("bounds", "print hard bounds and gap constants");
  bounds->add_option("--v", bounds_flags.v, "Lyapunov weight V")->expected(1);
  bounds->add_option("--p", bounds_flags.p, "drop price p, or inf")->expected(1);
  bounds->add_option("--config", bounds_flags.config, "key = value config file");

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "oracle and property checks");
  verify->add_option("--seed", vopt.seed, "random seed");
  verify->add_option("--samples", vopt.samples, "random problems per check");
  verify->add_option("--slots", vopt.slots, "slots of the simulated checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const ExperimentPlan plan = build_plan(run_flags);
      if (plan.policies.size() != 1 || plan.v_grid.size() != 1 ||
          plan.p_grid.size() != 1) {
        throw ConfigError("run takes a single policy, V and p; use sweep");
      }
      return execute(plan, run_flags);
    }
    if (sw->parsed()) return execute(build_plan(sweep_flags), sweep_flags);
    if (bounds->parsed()) {
      ExperimentPlan plan = build_plan(bounds_flags);
      SystemConfig cfg = plan.base;
      cfg.v_param = plan.v_grid.front();
      cfg.drop_price = plan.p_grid.front();
      print_bounds(cfg);
      return 0;
    }
    if (verify->parsed()) {
      return print_checks(std::cout, run_verification(vopt)) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
