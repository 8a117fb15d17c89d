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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace advqe {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Physical and numerical parameters of the periodic 1D advection-diffusion
/// problem  dC/dt + dC/dx = (1/Pe) d2C/dx2  on x in [0, 1).
///
/// The number of steps is derived from t_max / dt and must come out integral;
/// construction throws std::invalid_argument otherwise.
class PdeConfig {
 public:
  PdeConfig(double peclet, int n_qubits, double dt, double t_max);

  /// Reference defaults: Pe = 32, 4 qubits, dt = 0.002, t_max = 1.
  static PdeConfig defaults();

  double peclet() const { return peclet_; }
  int n_qubits() const { return n_qubits_; }
  double dt() const { return dt_; }
  double t_max() const { return t_max_; }
  std::size_t n_steps() const { return n_steps_; }

  std::size_t grid_size() const { return std::size_t{1} << n_qubits_; }
  double dx() const { return 1.0 / static_cast<double>(grid_size()); }

  PdeConfig with_dt(double dt) const { return {peclet_, n_qubits_, dt, t_max_}; }
  PdeConfig with_t_max(double t_max) const { return {peclet_, n_qubits_, dt_, t_max}; }

 private:
  double peclet_;
  int n_qubits_;
  double dt_;
  double t_max_;
  std::size_t n_steps_;
};

/// Stencil coefficients of the discrete operator before the 1/(Pe dx)
/// prefactor. `diag` multiplies C_i, `upper` multiplies C_{i+1} and `lower`
/// multiplies C_{i-1}.
struct StencilCoefficients {
  double diag;
  double upper;
  double lower;
};

StencilCoefficients coefficients(const PdeConfig& config);

/// Dense periodic operator A with dC/dt = A C. Real-valued; every column
/// sums to zero.
RealMatrix build_operator(const PdeConfig& config);

/// A sampled scalar field. `values` holds the physical samples unless
/// `normalized` is set, in which case `values` is a unit vector and the
/// physical L2 norm is carried in `norm`.
struct Field {
  RealVector values;
  double norm = 0.0;
  bool normalized = false;

  static Field from_raw(RealVector raw);
  static Field from_unit(RealVector unit, double physical_norm);

  RealVector physical() const;
  RealVector unit() const;
  Field to_normalized() const;
  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

/// Piecewise-linear pulse: zero outside [ramp_up_start, ramp_down_end),
/// linear ramps on [ramp_up_start, plateau_start) and
/// [plateau_end, ramp_down_end), constant `height` in between.
struct TrapezoidProfile {
  double ramp_up_start = 0.125;
  double plateau_start = 0.25;
  double plateau_end = 0.625;
  double ramp_down_end = 0.75;
  double height = 1.0;

  double operator()(double x) const;
};

struct InitialCondition {
  Field raw;
  Field normalized;
};

InitialCondition initial_condition(const PdeConfig& config,
                                   const TrapezoidProfile& profile = {});

/// One forward-Euler step (I + dt A) c on physical values. Throws
/// std::invalid_argument on dimension mismatch.
RealVector dns_step(const RealMatrix& op, double dt, const RealVector& c);

/// Sequence of fields at t_k = k dt, k = 0..n_steps.
struct DnsTrajectory {
  std::vector<double> times;
  std::vector<Field> fields_raw;
  std::vector<Field> fields_normalized;
};

/// Forward-Euler march from `initial` over config.n_steps() steps. Throws
/// std::invalid_argument if the configuration fails stability_check and
/// std::runtime_error naming the step if a non-finite value appears.
DnsTrajectory dns_run(const PdeConfig& config, const RealVector& initial);
DnsTrajectory dns_run(const PdeConfig& config);

/// exp(t A) c0 via the dense matrix exponential.
RealVector exact_propagate(const RealMatrix& op, double t, const RealVector& c0);

struct StabilityReport {
  double diffusive_limit;   // Pe dx^2 / 2
  double cfl_limit;         // dx
  double spectral_radius;   // of I + dt A
  bool diffusive_ok;
  bool cfl_ok;
  bool spectral_ok;
  bool pass() const { return diffusive_ok && cfl_ok && spectral_ok; }
  std::string describe() const;
};

StabilityReport stability_check(const PdeConfig& config);

}  // namespace advqe
