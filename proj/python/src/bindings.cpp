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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "wpmec/config.hpp"
#include "wpmec/errors.hpp"
#include "wpmec/harness.hpp"
#include "wpmec/numerics.hpp"
#include "wpmec/scheduler.hpp"
#include "wpmec/verify.hpp"

namespace py = pybind11;

namespace {

using wpmec::SystemConfig;

// stl.h copies vectors in and out, so list fields are exposed as properties
// that round-trip through Python lists.
template <typename T>
void vec_prop(py::class_<SystemConfig>& c, const char* name,
              std::vector<T> SystemConfig::*field) {
  c.def_property(
      name, [field](const SystemConfig& s) { return s.*field; },
      [field](SystemConfig& s, std::vector<T> v) { s.*field = std::move(v); });
}

std::string results_csv(const std::vector<wpmec::SweepRow>& rows) {
  std::ostringstream os;
  wpmec::write_results_csv(os, rows);
  return os.str();
}

std::string trace_csv(const wpmec::RunMetrics& m) {
  std::ostringstream os;
  wpmec::write_trace_csv(os, m.trace);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wireless-powered MEC scheduling simulator";

  py::register_exception<wpmec::ConfigError>(m, "ConfigError",
                                              PyExc_ValueError);
  py::register_exception<wpmec::BoundViolation>(m, "BoundViolation",
                                                PyExc_RuntimeError);

  m.attr("INFINITE_PRICE") = wpmec::kInfiniteDropPrice;

  py::enum_<wpmec::Distribution>(m, "Distribution")
      .value("UNIFORM", wpmec::Distribution::kUniform)
      .value("CONSTANT", wpmec::Distribution::kConstant)
      .value("BERNOULLI", wpmec::Distribution::kBernoulli);
  py::enum_<wpmec::ThroughputAccounting>(m, "ThroughputAccounting")
      .value("DELIVERED", wpmec::ThroughputAccounting::kDelivered)
      .value("ADMITTED", wpmec::ThroughputAccounting::kAdmitted);
  py::enum_<wpmec::Policy>(m, "Policy")
      .value("PCF", wpmec::Policy::kPcf)
      .value("PPF", wpmec::Policy::kPpf)
      .value("PF", wpmec::Policy::kPf)
      .value("HDO", wpmec::Policy::kHdo);
  m.def("parse_policy",
        [](const std::string& s) { return wpmec::parse_policy(s); });

  py::class_<SystemConfig> cfg(m, "SystemConfig");
  cfg.def(py::init([](std::size_t n) { return SystemConfig::defaults(n); }),
          py::arg("n_devices") = 10)
      .def_readwrite("n_devices", &SystemConfig::n_devices)
      .def_readwrite("bandwidth_hz", &SystemConfig::bandwidth_hz)
      .def_readwrite("ap_power_w", &SystemConfig::ap_power_w)
      .def_readwrite("noise_w", &SystemConfig::noise_w)
      .def_readwrite("path_loss_exp", &SystemConfig::path_loss_exp)
      .def_readwrite("v_param", &SystemConfig::v_param)
      .def_readwrite("drop_price", &SystemConfig::drop_price)
      .def_readwrite("g_max_slots", &SystemConfig::g_max_slots)
      .def_readwrite("feedback_interval", &SystemConfig::feedback_interval)
      .def_readwrite("slot_seconds", &SystemConfig::slot_seconds)
      .def_readwrite("unit_scale_bits", &SystemConfig::unit_scale_bits)
      .def_readwrite("arrival_dist", &SystemConfig::arrival_dist)
      .def_readwrite("arrival_param", &SystemConfig::arrival_param)
      .def_readwrite("proc_dist", &SystemConfig::proc_dist)
      .def_readwrite("proc_param", &SystemConfig::proc_param)
      .def_readwrite("kappa", &SystemConfig::kappa)
      .def_readwrite("sigma", &SystemConfig::sigma)
      .def_readwrite("pf_window", &SystemConfig::pf_window)
      .def_readwrite("warmup_slots", &SystemConfig::warmup_slots)
      .def_readwrite("throughput_accounting",
                     &SystemConfig::throughput_accounting)
      .def("fill_device_defaults", &SystemConfig::fill_device_defaults)
      .def("validate", &SystemConfig::validate);
  vec_prop(cfg, "device_distance_m", &SystemConfig::device_distance_m);
  vec_prop(cfg, "harvest_eff", &SystemConfig::harvest_eff);
  vec_prop(cfg, "a_max", &SystemConfig::a_max);
  vec_prop(cfg, "r_max", &SystemConfig::r_max);
  vec_prop(cfg, "c_max", &SystemConfig::c_max);
  vec_prop(cfg, "epsilon", &SystemConfig::epsilon);

  py::class_<wpmec::JainIndex>(m, "JainIndex")
      .def_readonly("value", &wpmec::JainIndex::value)
      .def_readonly("undefined", &wpmec::JainIndex::undefined);
  m.def("jain", [](const std::vector<double>& v) { return wpmec::jain(v); });

  py::class_<wpmec::TraceRow>(m, "TraceRow")
      .def_readonly("slot", &wpmec::TraceRow::slot)
      .def_readonly("device", &wpmec::TraceRow::device)
      .def_readonly("q", &wpmec::TraceRow::q)
      .def_readonly("z", &wpmec::TraceRow::z)
      .def_readonly("s", &wpmec::TraceRow::s)
      .def_readonly("age", &wpmec::TraceRow::age)
      .def_readonly("gain", &wpmec::TraceRow::gain)
      .def_readonly("arrival", &wpmec::TraceRow::arrival)
      .def_readonly("proc", &wpmec::TraceRow::proc)
      .def_readonly("mu0", &wpmec::TraceRow::mu0)
      .def_readonly("mu", &wpmec::TraceRow::mu)
      .def_readonly("rate", &wpmec::TraceRow::rate)
      .def_readonly("admit", &wpmec::TraceRow::admit)
      .def_readonly("drop", &wpmec::TraceRow::drop)
      .def_readonly("offloaded", &wpmec::TraceRow::offloaded)
      .def_readonly("dropped", &wpmec::TraceRow::dropped);

  py::class_<wpmec::RunMetrics>(m, "RunMetrics")
      .def_readonly("avg_throughput", &wpmec::RunMetrics::avg_throughput)
      .def_readonly("avg_utility", &wpmec::RunMetrics::avg_utility)
      .def_readonly("jain", &wpmec::RunMetrics::jain)
      .def_readonly("max_age_per_device",
                    &wpmec::RunMetrics::max_age_per_device)
      .def_readonly("max_q", &wpmec::RunMetrics::max_q)
      .def_readonly("max_z", &wpmec::RunMetrics::max_z)
      .def_readonly("max_s", &wpmec::RunMetrics::max_s)
      .def_readonly("total_dropped", &wpmec::RunMetrics::total_dropped)
      .def_readonly("slots", &wpmec::RunMetrics::slots)
      .def_readonly("measured_slots", &wpmec::RunMetrics::measured_slots)
      .def_readonly("trace", &wpmec::RunMetrics::trace)
      .def_property_readonly("max_age", &wpmec::RunMetrics::max_age)
      .def("trace_csv", &trace_csv);

  py::class_<wpmec::RunOptions>(m, "RunOptions")
      .def(py::init<>())
      .def_readwrite("horizon_slots", &wpmec::RunOptions::horizon_slots)
      .def_readwrite("check_bounds", &wpmec::RunOptions::check_bounds)
      .def_readwrite("check_staleness", &wpmec::RunOptions::check_staleness)
      .def_readwrite("record_trace", &wpmec::RunOptions::record_trace);

  m.def(
      "simulate_run",
      [](const SystemConfig& c, wpmec::Policy policy, std::uint64_t seed,
         std::size_t horizon, bool check_bounds, bool record_trace) {
        wpmec::RunOptions opt;
        opt.horizon_slots = horizon;
        opt.check_bounds = check_bounds;
        opt.record_trace = record_trace;
        py::gil_scoped_release nogil;
        return wpmec::simulate_run(c, policy, seed, opt);
      },
      py::arg("config"), py::arg("policy"), py::arg("seed") = 1,
      py::arg("horizon_slots") = 5000, py::arg("check_bounds") = true,
      py::arg("record_trace") = false);

  py::class_<wpmec::ExperimentPlan>(m, "ExperimentPlan")
      .def(py::init<>())
      .def_readwrite("policies", &wpmec::ExperimentPlan::policies)
      .def_readwrite("v_grid", &wpmec::ExperimentPlan::v_grid)
      .def_readwrite("p_grid", &wpmec::ExperimentPlan::p_grid)
      .def_readwrite("n_seeds", &wpmec::ExperimentPlan::n_seeds)
      .def_readwrite("horizon_slots", &wpmec::ExperimentPlan::horizon_slots)
      .def_readwrite("seed_base", &wpmec::ExperimentPlan::seed_base)
      .def_readwrite("base", &wpmec::ExperimentPlan::base)
      .def("validate", &wpmec::ExperimentPlan::validate);
  m.def("parse_plan",
        [](const std::string& text) { return wpmec::parse_plan(text); });
  m.def("load_plan_file", [](const std::string& path) {
    return wpmec::load_plan_file(path);
  });

  py::class_<wpmec::SweepRow>(m, "SweepRow")
      .def_readonly("policy", &wpmec::SweepRow::policy)
      .def_readonly("v", &wpmec::SweepRow::v)
      .def_readonly("p", &wpmec::SweepRow::p)
      .def_readonly("seed", &wpmec::SweepRow::seed)
      .def_readonly("metrics", &wpmec::SweepRow::metrics);
  py::class_<wpmec::SweepFailure>(m, "SweepFailure")
      .def_readonly("policy", &wpmec::SweepFailure::policy)
      .def_readonly("v", &wpmec::SweepFailure::v)
      .def_readonly("p", &wpmec::SweepFailure::p)
      .def_readonly("seed", &wpmec::SweepFailure::seed)
      .def_readonly("what", &wpmec::SweepFailure::what);
  py::class_<wpmec::SweepResult>(m, "SweepResult")
      .def_readonly("rows", &wpmec::SweepResult::rows)
      .def_readonly("failures", &wpmec::SweepResult::failures)
      .def("csv", [](const wpmec::SweepResult& r) { return results_csv(r.rows); });

  m.def(
      "sweep",
      [](const wpmec::ExperimentPlan& plan, std::size_t parallel,
         bool check_bounds) {
        wpmec::RunOptions opt;
        opt.check_bounds = check_bounds;
        py::gil_scoped_release nogil;
        return wpmec::sweep(plan, parallel, opt);
      },
      py::arg("plan"), py::arg("parallel") = 1, py::arg("check_bounds") = true);
  m.attr("RESULTS_HEADER") = std::string(wpmec::kResultsHeader);

  // Per-slot decisions and the airtime allocator.
  m.def("decide_admission", &wpmec::decide_admission, py::arg("q"),
        py::arg("arrival"), py::arg("v"));
  m.def("decide_discard", &wpmec::decide_discard, py::arg("q"), py::arg("z"),
        py::arg("v"), py::arg("p"), py::arg("a_max"));
  m.def("offload_weight", &wpmec::offload_weight, py::arg("q"), py::arg("z"),
        py::arg("s"), py::arg("p"), py::arg("bandwidth_hz"));

  py::class_<wpmec::TimeAllocation>(m, "TimeAllocation")
      .def_readonly("mu0", &wpmec::TimeAllocation::mu0)
      .def_readonly("mu", &wpmec::TimeAllocation::mu)
      .def_readonly("lambda_", &wpmec::TimeAllocation::lambda)
      .def_readonly("active", &wpmec::TimeAllocation::active)
      .def_readonly("outer_iterations",
                    &wpmec::TimeAllocation::outer_iterations);
  py::class_<wpmec::KktResiduals>(m, "KktResiduals")
      .def_readonly("mu0_stationarity", &wpmec::KktResiduals::mu0_stationarity)
      .def_readonly("max_device_stationarity",
                    &wpmec::KktResiduals::max_device_stationarity)
      .def_readonly("budget", &wpmec::KktResiduals::budget);

  m.def(
      "allocate_weighted",
      [](const std::vector<double>& w, const std::vector<double>& delta,
         double kappa, double sigma) {
        return wpmec::allocate_weighted(w, delta, {kappa, sigma});
      },
      py::arg("weights"), py::arg("delta"), py::arg("kappa") = 1e-12,
      py::arg("sigma") = 1e-9);
  m.def(
      "kkt_residuals",
      [](const std::vector<double>& w, const std::vector<double>& delta,
         const wpmec::TimeAllocation& a) {
        return wpmec::kkt_residuals(w, delta, a);
      },
      py::arg("weights"), py::arg("delta"), py::arg("allocation"));
  m.def(
      "allocation_objective",
      [](const std::vector<double>& w, const std::vector<double>& delta,
         double mu0, const std::vector<double>& mu) {
        return wpmec::allocation_objective(w, delta, mu0, mu);
      },
      py::arg("weights"), py::arg("delta"), py::arg("mu0"), py::arg("mu"));

  py::class_<wpmec::BoundReport>(m, "BoundReport")
      .def_readonly("b1", &wpmec::BoundReport::b1)
      .def_readonly("b2", &wpmec::BoundReport::b2)
      .def_readonly("q_max", &wpmec::BoundReport::q_max)
      .def_readonly("z_max", &wpmec::BoundReport::z_max)
      .def_readonly("s_max", &wpmec::BoundReport::s_max)
      .def_readonly("g_max", &wpmec::BoundReport::g_max);
  m.def("compute_bounds",
        [](const SystemConfig& c) { return wpmec::compute_bounds(c); });

  m.def("lambert_w0", &wpmec::lambert_w0);
  m.def("xi", &wpmec::xi);
  m.def("xi_inverse", &wpmec::xi_inverse, py::arg("y"), py::arg("rel_tol") = 0.0);

  py::class_<wpmec::CheckResult>(m, "CheckResult")
      .def_readonly("name", &wpmec::CheckResult::name)
      .def_readonly("passed", &wpmec::CheckResult::passed)
      .def_readonly("detail", &wpmec::CheckResult::detail);
  m.def(
      "verify",
      [](std::uint64_t seed, int samples, int slots) {
        py::gil_scoped_release nogil;
        return wpmec::run_verification({seed, samples, slots});
      },
      py::arg("seed") = 7, py::arg("samples") = 20, py::arg("slots") = 500);
}
