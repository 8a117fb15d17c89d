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

#include "advqe/pde.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "advqe/expm.hpp"

namespace advqe {

PdeConfig::PdeConfig(double peclet, int n_qubits, double dt, double t_max)
    : peclet_(peclet), n_qubits_(n_qubits), dt_(dt), t_max_(t_max), n_steps_(0) {
  if (!(peclet > 0.0) || !std::isfinite(peclet))
    throw std::invalid_argument("PdeConfig: peclet must be a positive finite number");
  if (n_qubits < 1 || n_qubits > 12)
    throw std::invalid_argument("PdeConfig: n_qubits must be in [1, 12]");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("PdeConfig: dt must be a positive finite number");
  if (!(t_max >= 0.0) || !std::isfinite(t_max))
    throw std::invalid_argument("PdeConfig: t_max must be a nonnegative finite number");
  const double ratio = t_max / dt;
  const double steps = std::round(ratio);
  if (std::abs(steps * dt - t_max) > 1e-12 * std::max(t_max, dt)) {
    std::ostringstream msg;
    msg << "PdeConfig: t_max / dt = " << ratio << " is not an integer step count";
    throw std::invalid_argument(msg.str());
  }
  n_steps_ = static_cast<std::size_t>(steps);
}

PdeConfig PdeConfig::defaults() { return {32.0, 4, 0.002, 1.0}; }

StencilCoefficients coefficients(const PdeConfig& config) {
  const double dx = config.dx();
  const double pe = config.peclet();
  return {.diag = -2.0 / dx, .upper = 1.0 / dx - pe / 2.0, .lower = 1.0 / dx + pe / 2.0};
}

RealMatrix build_operator(const PdeConfig& config) {
  const auto n = static_cast<Eigen::Index>(config.grid_size());
  const auto [b, c, d] = coefficients(config);
  const double scale = 1.0 / (config.peclet() * config.dx());
  RealMatrix a = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) += b * scale;
    a(i, (i + 1) % n) += c * scale;
    a(i, (i + n - 1) % n) += d * scale;
  }
  return a;
}

Field Field::from_raw(RealVector raw) {
  Field f;
  f.norm = raw.norm();
  f.values = std::move(raw);
  f.normalized = false;
  return f;
}

Field Field::from_unit(RealVector unit, double physical_norm) {
  Field f;
  f.values = std::move(unit);
  f.norm = physical_norm;
  f.normalized = true;
  return f;
}

RealVector Field::physical() const { return normalized ? RealVector(values * norm) : values; }

RealVector Field::unit() const {
  if (normalized) return values;
  const double n = values.norm();
  if (n == 0.0) throw std::invalid_argument("Field: cannot normalize a zero field");
  return values / n;
}

Field Field::to_normalized() const { return from_unit(unit(), normalized ? norm : values.norm()); }

double TrapezoidProfile::operator()(double x) const {
  if (x < ramp_up_start || x >= ramp_down_end) return 0.0;
  if (x < plateau_start) return height * (x - ramp_up_start) / (plateau_start - ramp_up_start);
  if (x < plateau_end) return height;
  return height * (ramp_down_end - x) / (ramp_down_end - plateau_end);
}

InitialCondition initial_condition(const PdeConfig& config, const TrapezoidProfile& profile) {
  const auto n = static_cast<Eigen::Index>(config.grid_size());
  RealVector samples(n);
  for (Eigen::Index i = 0; i < n; ++i) samples[i] = profile(static_cast<double>(i) * config.dx());
  Field raw = Field::from_raw(samples);
  Field unit = raw.to_normalized();
  return {std::move(raw), std::move(unit)};
}

RealVector dns_step(const RealMatrix& op, double dt, const RealVector& c) {
  if (op.rows() != op.cols() || op.cols() != c.size()) {
    std::ostringstream msg;
    msg << "dns_step: operator is " << op.rows() << "x" << op.cols() << " but field has "
        << c.size() << " entries";
    throw std::invalid_argument(msg.str());
  }
  RealVector next = c + dt * (op * c);
  return next;
}

DnsTrajectory dns_run(const PdeConfig& config, const RealVector& initial) {
  if (initial.size() != static_cast<Eigen::Index>(config.grid_size()))
    throw std::invalid_argument("dns_run: initial field size does not match the grid");
  const auto report = stability_check(config);
  if (!report.pass()) throw std::invalid_argument("dns_run: " + report.describe());

  const RealMatrix op = build_operator(config);
  DnsTrajectory traj;
  const std::size_t steps = config.n_steps();
  traj.times.reserve(steps + 1);
  traj.fields_raw.reserve(steps + 1);
  traj.fields_normalized.reserve(steps + 1);

  RealVector c = initial;
  for (std::size_t k = 0;; ++k) {
    traj.times.push_back(static_cast<double>(k) * config.dt());
    traj.fields_raw.push_back(Field::from_raw(c));
    traj.fields_normalized.push_back(traj.fields_raw.back().to_normalized());
    if (k == steps) break;
    c = dns_step(op, config.dt(), c);
    if (!c.allFinite()) {
      std::ostringstream msg;
      msg << "dns_run: non-finite value at step " << k + 1;
      throw std::runtime_error(msg.str());
    }
  }
  return traj;
}

DnsTrajectory dns_run(const PdeConfig& config) {
  return dns_run(config, initial_condition(config).raw.values);
}

RealVector exact_propagate(const RealMatrix& op, double t, const RealVector& c0) {
  if (t < 0.0) throw std::invalid_argument("exact_propagate: t must be nonnegative");
  if (op.cols() != c0.size()) throw std::invalid_argument("exact_propagate: dimension mismatch");
  if (t == 0.0) return c0;
  return expm(RealMatrix(t * op)) * c0;
}

std::string StabilityReport::describe() const {
  std::ostringstream out;
  out << "stability " << (pass() ? "ok" : "violated") << ": diffusive limit dt <= "
      << diffusive_limit << (diffusive_ok ? " (ok)" : " (violated)") << ", CFL limit dt <= "
      << cfl_limit << (cfl_ok ? " (ok)" : " (violated)") << ", spectral radius of I + dt A = "
      << spectral_radius << (spectral_ok ? " (ok)" : " (> 1)");
  return out.str();
}

StabilityReport stability_check(const PdeConfig& config) {
  StabilityReport r{};
  const double dx = config.dx();
  r.diffusive_limit = config.peclet() * dx * dx / 2.0;
  r.cfl_limit = dx;
  r.diffusive_ok = config.dt() <= r.diffusive_limit;
  r.cfl_ok = config.dt() <= r.cfl_limit;

  const auto n = static_cast<Eigen::Index>(config.grid_size());
  const RealMatrix m = RealMatrix::Identity(n, n) + config.dt() * build_operator(config);
  Eigen::EigenSolver<RealMatrix> solver(m, /*computeEigenvectors=*/false);
  r.spectral_radius = solver.eigenvalues().cwiseAbs().maxCoeff();
  r.spectral_ok = r.spectral_radius <= 1.0 + 1e-12;
  return r;
}

}  // namespace advqe
