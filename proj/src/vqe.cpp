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

#include "advqe/vqe.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace advqe {
namespace {

constexpr double kShift = std::numbers::pi / 2.0;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

int BlockSystem::n_qubits() const {
  int n = 0;
  while ((Eigen::Index{1} << n) < matrix.rows()) ++n;
  return n;
}

RealVector BlockSystem::solve() const {
  RealVector x = matrix.partialPivLu().solve(rhs);
  return x.normalized();
}

BlockSystem build_block_system(const RealMatrix& op, double dt, const Field& c_k) {
  if (op.rows() != op.cols() || op.cols() != static_cast<Eigen::Index>(c_k.size()))
    throw std::invalid_argument("build_block_system: operator and field dimensions differ");
  if (c_k.values.norm() == 0.0 || (c_k.normalized && c_k.norm == 0.0))
    throw std::invalid_argument("build_block_system: current field is zero");

  const Eigen::Index n = op.rows();
  BlockSystem sys;
  sys.step = RealMatrix::Identity(n, n) + dt * op;
  sys.matrix = RealMatrix::Identity(2 * n, 2 * n);
  sys.matrix.bottomLeftCorner(n, n) = -sys.step;
  sys.rhs = RealVector::Zero(2 * n);
  sys.rhs.head(n) = c_k.unit();
  return sys;
}

StepHamiltonian build_hamiltonian(const BlockSystem& sys) {
  // (I - b b^T) S, then S^T of that.
  const RealMatrix projected = sys.matrix - sys.rhs * (sys.rhs.transpose() * sys.matrix);
  RealMatrix h = sys.matrix.transpose() * projected;
  h = 0.5 * (h + h.transpose()).eval();
  return {h.cast<Complex>(), sys.n_qubits()};
}

VqeObjective::VqeObjective(const StepHamiltonian& h, const AnsatzSpec& spec)
    : h_(h), spec_(spec), template_(build_template(spec)) {
  if (spec.n_qubits != h.n_qubits) {
    std::ostringstream msg;
    msg << "VqeObjective: ansatz has " << spec.n_qubits << " qubits, Hamiltonian acts on "
        << h.n_qubits;
    throw std::invalid_argument(msg.str());
  }
  if (h.matrix.imag().cwiseAbs().maxCoeff() == 0.0) real_h_ = h.matrix.real();
}

double VqeObjective::energy(const Statevector& state) const {
  if (!real_h_) return expectation_trusted(state, h_.matrix);
  // For real symmetric H, <psi|H|psi> = a^T H a + b^T H b with psi = a + i b.
  const RealVector re = state.amplitudes().real();
  const RealVector im = state.amplitudes().imag();
  double value = re.dot(*real_h_ * re);
  if (im.cwiseAbs().maxCoeff() != 0.0) value += im.dot(*real_h_ * im);
  return value;
}

void VqeObjective::check_size(std::span<const double> params) const {
  if (params.size() != template_.parameter_count()) {
    std::ostringstream msg;
    msg << "VqeObjective: expected " << template_.parameter_count() << " parameters, got "
        << params.size();
    throw std::invalid_argument(msg.str());
  }
}

Statevector VqeObjective::prepare(std::span<const double> params) const {
  check_size(params);
  Statevector state(spec_.n_qubits);
  state.apply(template_.bind(params));
  return state;
}

double VqeObjective::cost(std::span<const double> params) const { return energy(prepare(params)); }

std::vector<double> VqeObjective::gradient(std::span<const double> params) const {
  check_size(params);
  const Circuit bound = template_.bind(params);
  const auto& gates = bound.gates();
  const auto& slots = template_.parameter_slots();

  // States just before each slot gate; the shifted circuits share this prefix.
  std::vector<Statevector> before;
  before.reserve(slots.size());
  Statevector state(spec_.n_qubits);
  for (std::size_t g = 0, j = 0; g < gates.size(); ++g) {
    if (j < slots.size() && slots[j] == g) {
      before.push_back(state);
      ++j;
    }
    state.apply(gates[g]);
  }

  auto shifted_cost = [&](std::size_t j, double angle) {
    Statevector s = before[j];
    const Gate& slot = gates[slots[j]];
    s.apply(Gate::ry(slot.qubit0, angle));
    for (std::size_t g = slots[j] + 1; g < gates.size(); ++g) s.apply(gates[g]);
    return energy(s);
  };

  std::vector<double> grad(params.size());
  for (std::size_t j = 0; j < params.size(); ++j)
    grad[j] = 0.5 * (shifted_cost(j, params[j] + kShift) - shifted_cost(j, params[j] - kShift));
  return grad;
}

double cost(std::span<const double> params, const StepHamiltonian& h, const AnsatzSpec& spec) {
  return VqeObjective(h, spec).cost(params);
}

std::vector<double> gradient(std::span<const double> params, const StepHamiltonian& h,
                             const AnsatzSpec& spec) {
  return VqeObjective(h, spec).gradient(params);
}

std::vector<double> random_parameters(std::size_t count, std::uint64_t seed, std::uint64_t stream) {
  std::mt19937_64 rng(mix_seed(seed, stream, 0));
  std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
  std::vector<double> out(count);
  for (auto& v : out) v = dist(rng);
  return out;
}

VqeResult minimize(const StepHamiltonian& h, const AnsatzSpec& spec,
                   std::span<const double> init_params, const VqeOptions& options,
                   std::uint64_t stream, const std::optional<Eigen::MatrixXd>& curvature) {
  const VqeObjective objective(h, spec);
  if (init_params.size() != objective.parameter_count()) {
    std::ostringstream msg;
    msg << "minimize: expected " << objective.parameter_count() << " initial parameters, got "
        << init_params.size();
    throw std::invalid_argument(msg.str());
  }

  const ObjectiveFn fn = [&](std::span<const double> x, std::span<double> g) {
    const double f = objective.cost(x);
    if (!std::isfinite(f)) throw std::runtime_error("minimize: VQE cost is not finite");
    const auto grad = objective.gradient(x);
    std::copy(grad.begin(), grad.end(), g.begin());
    return f;
  };

  BfgsOptions bfgs;
  bfgs.f_target = options.cost_tol;
  bfgs.grad_tol = options.grad_tol;
  bfgs.max_iterations = options.max_iterations;

  std::optional<VqeResult> best;
  const int starts = std::max(1, options.restarts);
  for (int r = 0; r < starts; ++r) {
    std::vector<double> x0(init_params.begin(), init_params.end());
    if (r > 0) {
      const std::uint64_t sub = mix_seed(stream, static_cast<std::uint64_t>(r), 0x5eed);
      if (options.restart_spread > 0.0) {
        std::mt19937_64 rng(mix_seed(options.seed, sub, 1));
        std::normal_distribution<double> kick(0.0, options.restart_spread);
        for (auto& v : x0) v += kick(rng);
      } else {
        x0 = random_parameters(init_params.size(), options.seed, sub);
      }
    }
    const auto run = bfgs_minimize(fn, std::move(x0), bfgs, r == 0 ? curvature : std::nullopt);

    if (best && !(run.f < best->cost)) continue;
    VqeResult res;
    res.params = run.x;
    res.cost = run.f;
    res.grad_inf_norm = run.grad_inf_norm;
    res.iterations = run.iterations;
    res.evaluations = run.evaluations;
    res.converged = run.f <= options.cost_tol || run.grad_inf_norm <= options.grad_tol;
    res.best_restart = r;
    res.state = objective.prepare(res.params);
    res.inverse_hessian = run.inverse_hessian;
    best = std::move(res);
    if (best->cost <= options.cost_tol) break;
  }
  return std::move(*best);
}

Field extract_next_field(const Statevector& state, const Field& c_k, const RealMatrix& op,
                         double dt) {
  const auto n = static_cast<Eigen::Index>(c_k.size());
  if (static_cast<Eigen::Index>(state.dim()) != 2 * n)
    throw std::invalid_argument("extract_next_field: state dimension must be twice the grid");

  const Eigen::VectorXcd tail = state.amplitudes().tail(n);
  const double imag = tail.imag().cwiseAbs().maxCoeff();
  if (imag > 1e-8) {
    std::ostringstream msg;
    msg << "extract_next_field: imaginary residue " << imag << " exceeds 1e-8";
    throw std::runtime_error(msg.str());
  }
  RealVector next = tail.real();
  const double tail_norm = next.norm();
  if (tail_norm < 1e-8) {
    std::ostringstream msg;
    msg << "extract_next_field: extracted half has norm " << tail_norm << " (degenerate state)";
    throw std::runtime_error(msg.str());
  }
  next /= tail_norm;

  const RealVector predicted = dns_step(op, dt, c_k.physical());
  if (next.dot(predicted) < 0.0) next = -next;
  return Field::from_unit(std::move(next), predicted.norm());
}

bool Trajectory::all_converged() const {
  for (const auto& s : steps)
    if (!s.converged) return false;
  return true;
}

Trajectory time_march(const PdeConfig& config, const AnsatzSpec& spec, const MarchOptions& options,
                      const DnsTrajectory& dns) {
  if (spec.n_qubits != config.n_qubits() + 1) {
    std::ostringstream msg;
    msg << "time_march: ansatz must act on " << config.n_qubits() + 1 << " qubits, got "
        << spec.n_qubits;
    throw std::invalid_argument(msg.str());
  }
  if (const auto report = stability_check(config); !report.pass())
    throw std::invalid_argument("time_march: " + report.describe());
  const std::size_t steps = config.n_steps();
  if (dns.fields_raw.size() != steps + 1)
    throw std::invalid_argument("time_march: DNS trajectory length does not match the config");

  const RealMatrix op = build_operator(config);
  Trajectory traj;
  traj.times = dns.times;
  traj.fields.reserve(steps + 1);
  traj.infidelity.reserve(steps + 1);
  traj.steps.reserve(steps);

  traj.fields.push_back(dns.fields_raw.front());
  traj.infidelity.push_back(0.0);

  std::vector<double> params = random_parameters(spec.parameter_count(), options.vqe.seed, 0);
  std::optional<Eigen::MatrixXd> curvature;

  for (std::size_t k = 0; k < steps; ++k) {
    const Field& current = traj.fields.back();
    const StepHamiltonian h = build_hamiltonian(build_block_system(op, config.dt(), current));

    VqeOptions step_opts = options.vqe;
    if (k == 0) {
      step_opts.restarts = std::max(options.cold_restarts, 1);
    } else {
      step_opts.restarts = std::max(options.warm_restarts, 1);
    }
    VqeResult result = minimize(h, spec, params, step_opts, k,
                                options.vqe.reuse_curvature ? curvature : std::nullopt);
    int restarts_used = step_opts.restarts;
    if (!result.converged && k > 0 && options.cold_restarts > 1) {
      step_opts.restarts = options.cold_restarts;
      step_opts.restart_spread = 0.0;
      VqeResult retry = minimize(h, spec, params, step_opts, k);
      restarts_used = options.cold_restarts;
      if (retry.cost < result.cost) result = std::move(retry);
    }

    Field next;
    try {
      next = extract_next_field(result.state, current, op, config.dt());
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "time_march: step " << k << " failed (cost " << result.cost << ", "
          << result.iterations << " iterations): " << e.what();
      traj.final_params = params;
      throw MarchError(msg.str(), std::move(traj), k);
    }

    const double f = overlap_fidelity(dns.fields_raw[k + 1].values, next.values);
    traj.infidelity.push_back(std::clamp(1.0 - f, 0.0, 1.0));
    traj.fields.push_back(std::move(next));
    traj.steps.push_back({result.cost, result.grad_inf_norm, result.iterations, result.evaluations,
                          result.converged, restarts_used});

    params = std::move(result.params);
    curvature = std::move(result.inverse_hessian);
  }
  traj.final_params = std::move(params);
  return traj;
}

Trajectory time_march(const PdeConfig& config, const AnsatzSpec& spec, const MarchOptions& options) {
  return time_march(config, spec, options, dns_run(config));
}

}  // namespace advqe
