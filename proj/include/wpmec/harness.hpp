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

#ifndef WPMEC_HARNESS_HPP_
#define WPMEC_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wpmec/config.hpp"
#include "wpmec/environment.hpp"
#include "wpmec/model.hpp"
#include "wpmec/scheduler.hpp"

namespace wpmec {

// PCF / PPF: proposed policy with complete / partial outdated feedback.
// PF: proportional fair. HDO: proposed policy without virtual queues.
enum class Policy { kPcf, kPpf, kPf, kHdo };

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view s);

struct JainIndex {
  double value = 1.0;
  bool undefined = false;  // every input was zero; value is reported as 1
};

// (sum x)^2 / (N sum x^2).
JainIndex jain(std::span<const double> values);

// One (slot, device) row of a per-slot trace. Queue values are taken at the
// start of the slot.
struct TraceRow {
  std::int64_t slot = 0;
  std::size_t device = 0;
  double q = 0.0;
  double z = 0.0;
  double s = 0.0;
  std::int64_t age = 0;
  double gain = 0.0;
  double arrival = 0.0;
  double proc = 0.0;
  double mu0 = 0.0;
  double mu = 0.0;
  double rate = 0.0;
  double admit = 0.0;
  double drop = 0.0;
  double offloaded = 0.0;
  double dropped = 0.0;
};

struct RunMetrics {
  double avg_throughput = 0.0;  // internal units per slot, after warm-up
  double avg_utility = 0.0;     // per slot, after warm-up
  JainIndex jain;               // over per-device average throughput
  std::vector<std::int64_t> max_age_per_device;
  std::vector<double> max_q;
  std::vector<double> max_z;
  std::vector<double> max_s;
  double total_dropped = 0.0;
  std::size_t slots = 0;
  std::size_t measured_slots = 0;
  std::vector<TraceRow> trace;  // filled when RunOptions::record_trace

  std::int64_t max_age() const;
  double max_q_overall() const;
  double max_z_overall() const;
  double max_s_overall() const;
};

// Everything known about a slot once it has been decided, handed to
// RunOptions::on_slot before the queues advance.
struct SlotContext {
  std::int64_t t = 0;
  Policy policy = Policy::kPcf;
  const EnvDraw* env = nullptr;
  const SlotObservation* ap_view = nullptr;
  const SlotObservation* true_state = nullptr;
  const SlotDecision* decision = nullptr;
  // Present for PCF/PPF/HDO; null for PF.
  const TimeAllocation* allocation = nullptr;
  const std::vector<double>* weights = nullptr;
};

struct RunOptions {
  std::size_t horizon_slots = 5000;
  // Hard checks of the backlog and age bounds every slot. Applied to PCF and
  // PPF only; the baselines carry no such guarantee.
  bool check_bounds = true;
  // Per-slot check of the feedback staleness limits (PPF, PF, HDO).
  bool check_staleness = true;
  bool record_trace = false;
  std::function<void(const SlotContext&)> on_slot;
};

// Runs one realisation of the slot loop: observe, allocate airtime, device
// admission/discard, queue updates, feedback. Throws BoundViolation with a
// slot dump when a proven bound fails.
RunMetrics simulate_run(const SystemConfig& cfg, Policy policy,
                        std::uint64_t seed, const RunOptions& options = {});

struct ExperimentPlan {
  std::vector<Policy> policies{Policy::kPcf};
  std::vector<double> v_grid{400.0};
  std::vector<double> p_grid{2.0};
  std::size_t n_seeds = 1;
  std::size_t horizon_slots = 5000;
  std::uint64_t seed_base = 1;
  SystemConfig base = SystemConfig::defaults();

  void validate() const;
};

struct SweepRow {
  Policy policy = Policy::kPcf;
  double v = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  RunMetrics metrics;
};

struct SweepFailure {
  Policy policy = Policy::kPcf;
  double v = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string what;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // plan order: policy, V, p, seed
  std::vector<SweepFailure> failures;
};

// Cartesian product of the plan on `parallel` worker threads. Output order
// never depends on the thread count. A failing cell is reported in
// `failures` and does not stop the others.
SweepResult sweep(const ExperimentPlan& plan, std::size_t parallel = 1,
                  const RunOptions& run_options = {});

// Fixed header of the results table.
inline constexpr std::string_view kResultsHeader =
    "policy,V,p,seed,avg_throughput_mb,avg_utility,jain,max_age_slots,"
    "max_q_mb,max_z,max_s_mb,total_dropped_mb";
inline constexpr std::string_view kTraceHeader =
    "slot,device,q_mb,z,s_mb,age_slots,gain,arrival_mb,proc_mb,mu0,mu,rate_mb,"
    "admit_mb,drop_mb,offloaded_mb,dropped_mb";

// Shortest round-trip decimal form; "inf" for the infinite-price proxy.
std::string format_number(double x);
std::string format_price(double p);

void write_results_header(std::ostream& os);
void write_results_row(std::ostream& os, const SweepRow& row);
void write_results_csv(std::ostream& os, std::span<const SweepRow> rows);
void write_trace_csv(std::ostream& os, std::span<const TraceRow> trace);

// Flat "key = value" text; '#' starts a comment; lists are comma separated;
// per-device keys accept one value (broadcast) or n_devices values. Keys
// mirror SystemConfig and ExperimentPlan field names. Unknown or repeated
// keys are errors.
ExperimentPlan parse_plan(std::string_view text,
                          const ExperimentPlan& defaults = {});
ExperimentPlan load_plan_file(const std::string& path,
                              const ExperimentPlan& defaults = {});

// Accepts "inf"/"infinity" as the infinite-price proxy.
double parse_price(std::string_view s);

}  // namespace wpmec

#endif  // WPMEC_HARNESS_HPP_
