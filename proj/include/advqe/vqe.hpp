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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "advqe/ansatz.hpp"
#include "advqe/optimizer.hpp"
#include "advqe/pde.hpp"
#include "advqe/statevector.hpp"

namespace advqe {

/// One forward-Euler step written as a unit lower block-triangular system
///
///   [ I   0 ] [ x_top ]   [ c_k / |c_k| ]
///   [ -M  I ] [ x_bot ] = [      0      ],     M = I + dt A,
///
/// whose solution stacks the normalized current field over its successor.
struct BlockSystem {
  RealMatrix matrix;
  RealVector rhs;  // unit norm
  RealMatrix step; // M

  int n_qubits() const;
  /// Unit-norm solution by dense LU.
  RealVector solve() const;
};

BlockSystem build_block_system(const RealMatrix& op, double dt, const Field& c_k);

/// H = S^T (I - b b^T) S for block system S x = b. Real symmetric and
/// positive semidefinite, with a one-dimensional null space spanned by the
/// normalized solution.
struct StepHamiltonian {
  Eigen::MatrixXcd matrix;
  int n_qubits = 0;
};

StepHamiltonian build_hamiltonian(const BlockSystem& sys);

/// Cost and parameter-shift gradient of <psi(theta)|H|psi(theta)> for the
/// RealAmplitudes ansatz. Holds the unbound template so repeated calls do
/// not rebuild it.
class VqeObjective {
 public:
  VqeObjective(const StepHamiltonian& h, const AnsatzSpec& spec);

  std::size_t parameter_count() const { return template_.parameter_count(); }
  Statevector prepare(std::span<const double> params) const;
  double cost(std::span<const double> params) const;
  /// d cost / d theta_j = [cost(theta_j + pi/2) - cost(theta_j - pi/2)] / 2.
  std::vector<double> gradient(std::span<const double> params) const;

 private:
  void check_size(std::span<const double> params) const;
  double energy(const Statevector& state) const;

  const StepHamiltonian& h_;
  AnsatzSpec spec_;
  Circuit template_;
  std::optional<RealMatrix> real_h_;  // set when H has no imaginary part
};

double cost(std::span<const double> params, const StepHamiltonian& h, const AnsatzSpec& spec);
std::vector<double> gradient(std::span<const double> params, const StepHamiltonian& h,
                             const AnsatzSpec& spec);

struct VqeOptions {
  double cost_tol = 1e-12;
  double grad_tol = 1e-8;
  int max_iterations = 500;
  int restarts = 1;         // total starts per solve, the first from init_params
  /// Extra starts are init_params plus N(0, spread^2) noise when spread > 0,
  /// otherwise uniform on [-pi, pi).
  double restart_spread = 0.0;
  std::uint64_t seed = 7;
  bool reuse_curvature = true;  // carry the BFGS inverse Hessian across time steps
};

struct VqeResult {
  std::vector<double> params;
  double cost = 0.0;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  int best_restart = 0;
  Statevector state{1};
  Eigen::MatrixXd inverse_hessian;
};

/// Minimizes the objective from `init_params`, plus restarts-1 extra starts
/// drawn uniformly from [-pi, pi) with a generator seeded from
/// (options.seed, stream). Best cost wins, ties go to the lower restart
/// index. Exhausting the iteration budget is reported through `converged`;
/// a non-finite cost throws std::runtime_error.
VqeResult minimize(const StepHamiltonian& h, const AnsatzSpec& spec,
                   std::span<const double> init_params, const VqeOptions& options,
                   std::uint64_t stream = 0,
                   const std::optional<Eigen::MatrixXd>& curvature = std::nullopt);

/// Uniform [-pi, pi) draw used for cold starts.
std::vector<double> random_parameters(std::size_t count, std::uint64_t seed, std::uint64_t stream);

/// Takes the lower half of the register (top qubit set), checks it is real
/// and non-degenerate, renormalizes, fixes the sign against the classical
/// one-step prediction M c_k and attaches the physical norm |M c_k|.
/// Throws std::runtime_error if the imaginary residue exceeds 1e-8 or the
/// half has norm below 1e-8.
Field extract_next_field(const Statevector& state, const Field& c_k, const RealMatrix& op,
                         double dt);

struct StepDiagnostics {
  double cost = 0.0;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  int restarts_used = 1;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> fields;       // normalized with physical norm; entry 0 is raw
  std::vector<double> infidelity;  // 1 - |<C_dns|C_vqe>|^2 per snapshot
  std::vector<StepDiagnostics> steps;  // entry k produced field k + 1
  std::vector<double> final_params;

  bool all_converged() const;
};

/// Extraction failure during time_march; carries everything computed
/// before the failing step.
class MarchError : public std::runtime_error {
 public:
  MarchError(const std::string& what, Trajectory partial, std::size_t step)
      : std::runtime_error(what), partial_(std::move(partial)), step_(step) {}
  const Trajectory& partial() const { return partial_; }
  std::size_t step() const { return step_; }

 private:
  Trajectory partial_;
  std::size_t step_;
};

struct MarchOptions {
  VqeOptions vqe;
  /// Restart budget for the first step and for any later step whose warm
  /// start fails to converge.
  int cold_restarts = 3;
  /// Starts per warm-started step; extras perturb the warm start.
  int warm_restarts = 1;
};

/// Marches config.n_steps() VQE steps, warm-starting each solve from the
/// previous optimum, and scores every field against the DNS trajectory.
/// Field 0 is the raw initial condition. Throws MarchError naming the step
/// if extraction fails.
Trajectory time_march(const PdeConfig& config, const AnsatzSpec& spec, const MarchOptions& options,
                      const DnsTrajectory& dns);
Trajectory time_march(const PdeConfig& config, const AnsatzSpec& spec,
                      const MarchOptions& options = {});

}  // namespace advqe
