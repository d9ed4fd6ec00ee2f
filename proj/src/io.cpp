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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "wpmec/errors.hpp"
#include "wpmec/harness.hpp"

namespace wpmec {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_price(double p) {
  return is_infinite_price(p) ? std::string("inf") : format_number(p);
}

void write_results_header(std::ostream& os) { os << kResultsHeader << '\n'; }

void write_results_row(std::ostream& os, const SweepRow& row) {
  const RunMetrics& m = row.metrics;
  os << to_string(row.policy) << ',' << format_number(row.v) << ','
     << format_price(row.p) << ',' << row.seed << ','
     << format_number(m.avg_throughput) << ',' << format_number(m.avg_utility)
     << ',' << format_number(m.jain.value) << ',' << m.max_age() << ','
     << format_number(m.max_q_overall()) << ','
     << format_number(m.max_z_overall()) << ','
     << format_number(m.max_s_overall()) << ','
     << format_number(m.total_dropped) << '\n';
}

void write_results_csv(std::ostream& os, std::span<const SweepRow> rows) {
  write_results_header(os);
  for (const auto& r : rows) write_results_row(os, r);
}

void write_trace_csv(std::ostream& os, std::span<const TraceRow> trace) {
  os << kTraceHeader << '\n';
  for (const auto& r : trace) {
    os << r.slot << ',' << r.device << ',' << format_number(r.q) << ','
       << format_number(r.z) << ',' << format_number(r.s) << ',' << r.age
       << ',' << format_number(r.gain) << ',' << format_number(r.arrival)
       << ',' << format_number(r.proc) << ',' << format_number(r.mu0) << ','
       << format_number(r.mu) << ',' << format_number(r.rate) << ','
       << format_number(r.admit) << ',' << format_number(r.drop) << ','
       << format_number(r.offloaded) << ',' << format_number(r.dropped)
       << '\n';
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view expected) {
  throw ConfigError("key '" + std::string(key) + "': cannot parse '" +
                    std::string(value) + "' as " + std::string(expected));
}

double to_double(std::string_view key, std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    bad_value(key, s, "a number");
  }
  return x;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view s) {
  std::uint64_t x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    bad_value(key, s, "a non-negative integer");
  }
  return x;
}

std::vector<double> to_doubles(std::string_view key, std::string_view s) {
  std::vector<double> out;
  for (auto item : split_list(s)) out.push_back(to_double(key, item));
  return out;
}

}  // namespace

double parse_price(std::string_view s) {
  const std::string l = lower(trim(s));
  if (l == "inf" || l == "infinity" || l == "+inf") return kInfiniteDropPrice;
  const double p = to_double("price", trim(s));
  return std::isinf(p) ? kInfiniteDropPrice : p;
}

ExperimentPlan parse_plan(std::string_view text,
                          const ExperimentPlan& defaults) {
  ExperimentPlan plan = defaults;
  SystemConfig& c = plan.base;
  const std::size_t n_before = c.n_devices;
  std::set<std::string> seen;

  using Setter = void (*)(ExperimentPlan&, std::string_view, std::string_view);
  static const std::map<std::string, Setter, std::less<>> setters = {
      {"n_devices",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.n_devices = to_unsigned(k, v);
       }},
      {"bandwidth_hz",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.bandwidth_hz = to_double(k, v);
       }},
      {"ap_power_w",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.ap_power_w = to_double(k, v);
       }},
      {"noise_w",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.noise_w = to_double(k, v);
       }},
      {"path_loss_exp",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.path_loss_exp = to_double(k, v);
       }},
      {"device_distance_m",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.device_distance_m = to_doubles(k, v);
       }},
      {"harvest_eff",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.harvest_eff = to_doubles(k, v);
       }},
      {"a_max",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.a_max = to_doubles(k, v);
       }},
      {"r_max",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.r_max = to_doubles(k, v);
       }},
      {"c_max",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.c_max = to_doubles(k, v);
       }},
      {"epsilon",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.epsilon = to_doubles(k, v);
       }},
      {"v_param",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.v_param = to_double(k, v);
       }},
      {"drop_price",
       [](ExperimentPlan& p, std::string_view, std::string_view v) {
         p.base.drop_price = parse_price(v);
       }},
      {"g_max_slots",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.g_max_slots = to_unsigned(k, v);
       }},
      {"feedback_interval",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.feedback_interval = to_unsigned(k, v);
       }},
      {"slot_seconds",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.slot_seconds = to_double(k, v);
       }},
      {"unit_scale_bits",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.unit_scale_bits = to_double(k, v);
       }},
      {"arrival_dist",
       [](ExperimentPlan& p, std::string_view, std::string_view v) {
         p.base.arrival_dist = parse_distribution(v);
       }},
      {"arrival_param",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.arrival_param = to_double(k, v);
       }},
      {"proc_dist",
       [](ExperimentPlan& p, std::string_view, std::string_view v) {
         p.base.proc_dist = parse_distribution(v);
       }},
      {"proc_param",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.proc_param = to_double(k, v);
       }},
      {"kappa",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.kappa = to_double(k, v);
       }},
      {"sigma",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.sigma = to_double(k, v);
       }},
      {"pf_window",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.pf_window = to_double(k, v);
       }},
      {"warmup_slots",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.base.warmup_slots = to_unsigned(k, v);
       }},
      {"throughput_accounting",
       [](ExperimentPlan& p, std::string_view, std::string_view v) {
         p.base.throughput_accounting = parse_accounting(v);
       }},
      {"policies",
       [](ExperimentPlan& p, std::string_view, std::string_view v) {
         p.policies.clear();
         for (auto item : split_list(v)) p.policies.push_back(parse_policy(item));
       }},
      {"v_grid",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.v_grid = to_doubles(k, v);
       }},
      {"p_grid",
       [](ExperimentPlan& p, std::string_view, std::string_view v) {
         p.p_grid.clear();
         for (auto item : split_list(v)) p.p_grid.push_back(parse_price(item));
       }},
      {"n_seeds",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.n_seeds = to_unsigned(k, v);
       }},
      {"horizon_slots",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.horizon_slots = to_unsigned(k, v);
       }},
      {"seed_base",
       [](ExperimentPlan& p, std::string_view k, std::string_view v) {
         p.seed_base = to_unsigned(k, v);
       }},
  };

  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" +
                        std::string(key) + "' given twice");
    }
    try {
      it->second(plan, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  // Per-device sequences that were not given are regenerated when the device
  // count changes; epsilon follows a_max unless set explicitly.
  const bool resized = c.n_devices != n_before;
  auto reset = [&](const char* key, std::vector<double>& seq) {
    if (!seen.count(key) && resized) seq.clear();
  };
  reset("device_distance_m", c.device_distance_m);
  reset("harvest_eff", c.harvest_eff);
  reset("a_max", c.a_max);
  reset("r_max", c.r_max);
  reset("c_max", c.c_max);
  reset("epsilon", c.epsilon);
  if (seen.count("a_max") && !seen.count("epsilon")) {
    c.epsilon.clear();
    if (c.a_max.size() == 1) c.a_max.assign(c.n_devices, c.a_max.front());
  }
  c.fill_device_defaults();

  if (!seen.count("v_grid") && seen.count("v_param")) plan.v_grid = {c.v_param};
  if (!seen.count("p_grid") && seen.count("drop_price")) {
    plan.p_grid = {c.drop_price};
  }
  plan.validate();
  return plan;
}

ExperimentPlan load_plan_file(const std::string& path,
                              const ExperimentPlan& defaults) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_plan(buf.str(), defaults);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace wpmec
