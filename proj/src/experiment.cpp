// Copyright 2025 The advqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "advqe/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/os.h>

#include "json.hpp"

#include "advqe/ansatz.hpp"

namespace advqe {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::set<std::string> kKnownKeys = {
    "pe",       "qubits",         "dt",         "tmax",          "layers",
    "snapshot_times", "restarts", "seed",       "out",           "report_gates",
    "gate_report_layers", "cost_tol", "grad_tol", "max_iterations", "cold_restarts",
    "warm_restarts", "restart_spread", "reuse_curvature"};

[[noreturn]] void parse_fail(const std::string& msg) {
  throw ConfigError(ConfigError::Kind::Parse, msg);
}
[[noreturn]] void invalid(const std::string& msg) {
  throw ConfigError(ConfigError::Kind::Validation, msg);
}

template <typename T>
T get_as(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    parse_fail(fmt::format("config key '{}': {}", key, e.what()));
  }
}

struct Draft {
  double pe = 32.0;
  int qubits = 4;
  double dt = 0.002;
  double tmax = 1.0;
  RunConfig rest;
};

void apply_json(const json& doc, Draft& d) {
  if (!doc.is_object()) parse_fail("config: top level must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!kKnownKeys.contains(key)) parse_fail(fmt::format("config: unknown key '{}'", key));

  auto& r = d.rest;
  auto& v = r.march.vqe;
  if (doc.contains("pe")) d.pe = get_as<double>(doc, "pe");
  if (doc.contains("qubits")) d.qubits = get_as<int>(doc, "qubits");
  if (doc.contains("dt")) d.dt = get_as<double>(doc, "dt");
  if (doc.contains("tmax")) d.tmax = get_as<double>(doc, "tmax");
  if (doc.contains("layers")) r.layers_sweep = get_as<std::vector<int>>(doc, "layers");
  if (doc.contains("snapshot_times"))
    r.snapshot_times = get_as<std::vector<double>>(doc, "snapshot_times");
  if (doc.contains("restarts")) r.march.cold_restarts = get_as<int>(doc, "restarts");
  if (doc.contains("seed")) v.seed = get_as<std::uint64_t>(doc, "seed");
  if (doc.contains("out")) r.out_dir = get_as<std::string>(doc, "out");
  if (doc.contains("report_gates")) r.report_gates = get_as<bool>(doc, "report_gates");
  if (doc.contains("gate_report_layers"))
    r.gate_report_layers = get_as<int>(doc, "gate_report_layers");
  if (doc.contains("cost_tol")) v.cost_tol = get_as<double>(doc, "cost_tol");
  if (doc.contains("grad_tol")) v.grad_tol = get_as<double>(doc, "grad_tol");
  if (doc.contains("max_iterations")) v.max_iterations = get_as<int>(doc, "max_iterations");
  if (doc.contains("cold_restarts")) r.march.cold_restarts = get_as<int>(doc, "cold_restarts");
  if (doc.contains("warm_restarts")) r.march.warm_restarts = get_as<int>(doc, "warm_restarts");
  if (doc.contains("restart_spread")) v.restart_spread = get_as<double>(doc, "restart_spread");
  if (doc.contains("reuse_curvature")) v.reuse_curvature = get_as<bool>(doc, "reuse_curvature");
}

void apply_overrides(const ConfigOverrides& o, Draft& d) {
  if (o.pe) d.pe = *o.pe;
  if (o.qubits) d.qubits = *o.qubits;
  if (o.dt) d.dt = *o.dt;
  if (o.tmax) d.tmax = *o.tmax;
  if (o.layers) d.rest.layers_sweep = *o.layers;
  if (o.snapshot_times) d.rest.snapshot_times = *o.snapshot_times;
  if (o.restarts) d.rest.march.cold_restarts = *o.restarts;
  if (o.seed) d.rest.march.vqe.seed = *o.seed;
  if (o.out) d.rest.out_dir = *o.out;
  if (o.report_gates) d.rest.report_gates = *o.report_gates;
}

RunConfig finalize(Draft d) {
  std::optional<PdeConfig> pde;
  try {
    pde.emplace(d.pe, d.qubits, d.dt, d.tmax);
  } catch (const std::invalid_argument& e) {
    invalid(e.what());
  }
  if (const auto report = stability_check(*pde); !report.pass()) invalid(report.describe());

  RunConfig r = std::move(d.rest);
  r.pde = *pde;
  if (r.layers_sweep.empty()) invalid("layers: sweep must not be empty");
  for (int l : r.layers_sweep)
    if (l < 1) invalid(fmt::format("layers: {} is not a positive layer count", l));
  if (r.gate_report_layers < 0) invalid("gate_report_layers: must be nonnegative");
  if (!std::is_sorted(r.snapshot_times.begin(), r.snapshot_times.end()))
    invalid("snapshot_times: must be sorted ascending");
  for (double t : r.snapshot_times) {
    if (t < 0.0 || t > r.pde.t_max() + 1e-12)
      invalid(fmt::format("snapshot_times: {} lies outside [0, {}]", t, r.pde.t_max()));
    const double steps = t / r.pde.dt();
    if (std::abs(steps - std::round(steps)) * r.pde.dt() > 1e-9)
      invalid(fmt::format("snapshot_times: {} is not a multiple of dt = {}", t, r.pde.dt()));
  }
  const auto& v = r.march.vqe;
  if (!(v.cost_tol >= 0.0) || !(v.grad_tol >= 0.0)) invalid("tolerances must be nonnegative");
  if (v.max_iterations < 1) invalid("max_iterations: must be positive");
  if (r.march.cold_restarts < 1 || r.march.warm_restarts < 1) invalid("restarts: must be >= 1");
  if (v.restart_spread < 0.0) invalid("restart_spread: must be nonnegative");
  return r;
}

std::string full(double v) { return fmt::format("{:.17g}", v); }

std::string time_label(double t) { return fmt::format("{:g}", t); }

std::size_t step_index(double t, double dt) { return static_cast<std::size_t>(std::llround(t / dt)); }

void write_file(const fs::path& path, const std::string& contents, ExperimentReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  report.written.push_back(path);
}

std::string infidelity_csv(const Trajectory& traj) {
  std::string s = "t,one_minus_f,vqe_cost,iterations\n";
  for (std::size_t k = 0; k < traj.infidelity.size(); ++k) {
    const double cost = k == 0 ? 0.0 : traj.steps[k - 1].cost;
    const int iters = k == 0 ? 0 : traj.steps[k - 1].iterations;
    s += fmt::format("{},{},{},{}\n", full(traj.times[k]), full(traj.infidelity[k]), full(cost), iters);
  }
  return s;
}

std::string snapshots_csv(const RunConfig& cfg, const Trajectory& traj, const DnsTrajectory& dns) {
  std::vector<std::size_t> idx;
  std::string s = "x";
  for (double t : cfg.snapshot_times) {
    const std::size_t k = step_index(t, cfg.pde.dt());
    if (k >= traj.fields.size()) continue;  // march stopped early
    idx.push_back(k);
    s += ",C_t" + time_label(t);
  }
  s += ",C_dns_t" + time_label(cfg.pde.t_max()) + "\n";
  std::vector<RealVector> cols;
  for (auto k : idx) cols.push_back(traj.fields[k].physical());
  const RealVector dns_final = dns.fields_raw.back().physical();
  for (std::size_t i = 0; i < cfg.pde.grid_size(); ++i) {
    s += full(static_cast<double>(i) * cfg.pde.dx());
    for (const auto& c : cols) s += "," + full(c[static_cast<Eigen::Index>(i)]);
    s += "," + full(dns_final[static_cast<Eigen::Index>(i)]) + "\n";
  }
  return s;
}

std::string counts_row(const std::string& method, int layers, int qubits, const GateCounts& c,
                       const std::string& source) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{}\n", method, layers, qubits, c.x, c.sx, c.rz,
                     c.cz, c.total, c.depth, source);
}

constexpr const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Renders the field snapshots, infidelity histories and final infidelity
versus layers from the CSV files in this directory."""
import csv
import glob
import os
import re
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))


def read(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return rows


def layer_of(path):
    return int(re.search(r"_L(\d+)\.csv$", path).group(1))


inf_files = sorted(glob.glob(os.path.join(here, "infidelity_L*.csv")), key=layer_of)
snap_files = sorted(glob.glob(os.path.join(here, "snapshots_L*.csv")), key=layer_of)
if not inf_files:
    sys.exit("no infidelity_L*.csv files found")

fig, axes = plt.subplots(1, 3, figsize=(15, 4.5))

if snap_files:
    rows = read(snap_files[-1])
    x = [float(r["x"]) for r in rows]
    for key in rows[0]:
        if key.startswith("C_t"):
            axes[0].plot(x, [float(r[key]) for r in rows], marker="o", label="VQE t=" + key[3:])
        elif key.startswith("C_dns_t"):
            axes[0].plot(x, [float(r[key]) for r in rows], "k--", label="DNS t=" + key[7:])
    axes[0].set_xlabel("x")
    axes[0].set_ylabel("C(x)")
    axes[0].set_title("Field snapshots (L=%d)" % layer_of(snap_files[-1]))
    axes[0].legend()

for path in inf_files:
    rows = read(path)
    t = [float(r["t"]) for r in rows[1:]]
    y = [max(float(r["one_minus_f"]), 1e-17) for r in rows[1:]]
    axes[1].semilogy(t, y, label="L=%d" % layer_of(path))
axes[1].set_xlabel("t")
axes[1].set_ylabel("1 - f")
axes[1].set_title("Infidelity vs time")
axes[1].legend(fontsize="small")

final_path = os.path.join(here, "final_infidelity_vs_layers.csv")
if os.path.exists(final_path):
    rows = [r for r in read(final_path) if r["completed"] == "1"]
    axes[2].semilogy([int(r["layers"]) for r in rows],
                     [max(float(r["final_one_minus_f"]), 1e-17) for r in rows], "o-")
    axes[2].set_xlabel("layers")
    axes[2].set_ylabel("1 - f at t_max")
    axes[2].set_title("Final infidelity vs layers")

fig.tight_layout()
out = os.path.join(here, "figures.png")
fig.savefig(out, dpi=150)
print("wrote", out)
)PY";

}  // namespace

RunConfig parse_config_text(const std::string& json_text, const ConfigOverrides& overrides) {
  Draft d;
  if (!json_text.empty()) {
    json doc;
    try {
      doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
      parse_fail(fmt::format("config: malformed JSON: {}", e.what()));
    }
    apply_json(doc, d);
  }
  apply_overrides(overrides, d);
  return finalize(std::move(d));
}

RunConfig parse_config(const std::optional<fs::path>& file, const ConfigOverrides& overrides) {
  std::string text;
  if (file) {
    std::ifstream in(*file, std::ios::binary);
    if (!in) parse_fail("config: cannot open " + file->string());
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) text.clear();
  }
  return parse_config_text(text, overrides);
}

int ExperimentReport::exit_code() const {
  for (const auto& l : layers)
    if (!l.completed || !l.converged) return 2;
  return 0;
}

GateCounts ansatz_gate_counts(int n_qubits, int layers, std::uint64_t seed) {
  const Circuit tmpl = build_template({n_qubits, layers});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<double> params(tmpl.parameter_count());
  for (auto& p : params) p = angle(rng);
  return count(transpile(advqe::bind(tmpl, params)));
}

std::string emit_comparison_report(const GateCounts& computed,
                                   const std::vector<ReferenceColumn>& reference) {
  const GateCounts* vqe_ref = nullptr;
  for (const auto& col : reference)
    if (col.method == "VQE") vqe_ref = &col.counts;

  struct Row {
    const char* name;
    std::size_t GateCounts::*field;
  };
  const Row rows[] = {{"X", &GateCounts::x},   {"SqrtX", &GateCounts::sx},
                      {"RZ", &GateCounts::rz}, {"CZ", &GateCounts::cz},
                      {"Total", &GateCounts::total}, {"Depth", &GateCounts::depth}};

  std::string out = fmt::format("{:<7}", "Gate");
  for (const auto& col : reference)
    out += fmt::format(" {:>10}", col.method == "VQE" ? std::string("VQE(ref)") : col.method);
  out += fmt::format(" {:>13} {:>9}\n", "VQE(computed)", "dev");

  for (const auto& row : rows) {
    out += fmt::format("{:<7}", row.name);
    for (const auto& col : reference) out += fmt::format(" {:>10}", col.counts.*(row.field));
    const std::size_t mine = computed.*(row.field);
    out += fmt::format(" {:>13}", mine);
    if (vqe_ref) {
      const double ref = static_cast<double>((*vqe_ref).*(row.field));
      const double c = static_cast<double>(mine);
      if (ref == 0.0) {
        out += fmt::format(" {:>9}", c == 0.0 ? "0%" : "n/a !");
      } else {
        const double dev = (c - ref) / ref;
        out += fmt::format(" {:>+8.1f}%{}", 100.0 * dev, std::abs(dev) > 0.25 ? " !" : "");
      }
    }
    out += "\n";
  }
  for (const auto& col : reference) {
    if (col.method == "Trotter" && computed.total > 0) {
      out += fmt::format("Trotter / VQE(computed) total gates: {:.0f}x\n",
                         static_cast<double>(col.counts.total) / static_cast<double>(computed.total));
    }
  }
  out += "('!' marks a computed count more than 25% away from the VQE reference)\n";
  return out;
}

ExperimentReport run_experiment(const RunConfig& config) {
  ExperimentReport report;
  fs::create_directories(config.out_dir);
  const auto& pde = config.pde;
  const DnsTrajectory dns = dns_run(pde);
  const int n = pde.n_qubits();

  std::string finals = "layers,final_one_minus_f,completed,converged,unconverged_steps\n";
  for (int layers : config.layers_sweep) {
    LayerOutcome outcome;
    outcome.layers = layers;
    const auto start = std::chrono::steady_clock::now();
    Trajectory traj;
    try {
      traj = time_march(pde, {n + 1, layers}, config.march, dns);
      outcome.completed = true;
    } catch (const MarchError& e) {
      traj = e.partial();
      outcome.failure = e.what();
    }
    outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcome.final_infidelity = traj.infidelity.back();
    for (const auto& s : traj.steps) {
      outcome.total_iterations += s.iterations;
      if (!s.converged) ++outcome.unconverged_steps;
    }
    outcome.converged = outcome.completed && outcome.unconverged_steps == 0;

    write_file(config.out_dir / fmt::format("infidelity_L{}.csv", layers), infidelity_csv(traj), report);
    write_file(config.out_dir / fmt::format("snapshots_L{}.csv", layers),
               snapshots_csv(config, traj, dns), report);
    finals += fmt::format("{},{},{},{},{}\n", layers, full(outcome.final_infidelity),
                          outcome.completed ? 1 : 0, outcome.converged ? 1 : 0,
                          outcome.unconverged_steps);
    report.layers.push_back(std::move(outcome));
  }
  write_file(config.out_dir / "final_infidelity_vs_layers.csv", finals, report);

  std::string summary = fmt::format(
      "Pe={} N={} dt={} t_max={} steps={}\n{:>6} {:>14} {:>10} {:>11} {:>9}  status\n", pde.peclet(),
      n, pde.dt(), pde.t_max(), pde.n_steps(), "layers", "final 1-f", "iters", "unconverged",
      "seconds");
  for (const auto& l : report.layers) {
    summary += fmt::format("{:>6} {:>14.6e} {:>10} {:>11} {:>9.1f}  {}\n", l.layers,
                           l.final_infidelity, l.total_iterations, l.unconverged_steps, l.seconds,
                           l.completed ? (l.converged ? "ok" : "not converged") : l.failure);
  }

  if (config.report_gates) {
    std::string csv = "method,layers,qubits,x,sx,rz,cz,total,depth,source\n";
    for (const auto& col : reference_table())
      csv += counts_row(col.method, col.method == "VQE" ? 5 : 0, 4, col.counts, "reference");
    const GateCounts computed = ansatz_gate_counts(n, config.gate_report_layers);
    csv += counts_row("VQE", config.gate_report_layers, n, computed, "computed");
    for (int layers : config.layers_sweep) {
      csv += counts_row("VQE-register", layers, n + 1, ansatz_gate_counts(n + 1, layers),
                        "computed");
    }
    write_file(config.out_dir / "gate_counts.csv", csv, report);
    summary += fmt::format("\nGate counts, {}-layer ansatz on {} qubits:\n", config.gate_report_layers, n);
    summary += emit_comparison_report(computed, reference_table());
  }

  write_file(config.out_dir / "plot_figures.py", kPlotScript, report);
  report.summary = std::move(summary);
  return report;
}

}  // namespace advqe
