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

#include "advqe/statevector.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace advqe {
namespace {

using Index = Eigen::Index;

// Visits every index pair (i0, i1) that differs only in bit `q`, with bit q
// clear in i0.
template <typename F>
void for_each_pair(Index dim, int q, F&& f) {
  const Index stride = Index{1} << q;
  for (Index base = 0; base < dim; base += 2 * stride)
    for (Index i0 = base; i0 < base + stride; ++i0) f(i0, i0 + stride);
}

void apply_matrix(Eigen::VectorXcd& amps, int q, Complex m00, Complex m01, Complex m10,
                  Complex m11) {
  for_each_pair(amps.size(), q, [&](Index i0, Index i1) {
    const Complex a0 = amps[i0];
    const Complex a1 = amps[i1];
    amps[i0] = m00 * a0 + m01 * a1;
    amps[i1] = m10 * a0 + m11 * a1;
  });
}

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) {
    std::ostringstream msg;
    msg << "apply_gate: qubit " << q << " out of range for " << n << " qubits";
    throw std::invalid_argument(msg.str());
  }
}

double max_asymmetry(const Eigen::MatrixXcd& h) { return (h - h.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 24) throw std::invalid_argument("Statevector: bad qubit count");
  amps_ = Eigen::VectorXcd::Zero(Index{1} << n_qubits);
  amps_[0] = 1.0;
}

Statevector::Statevector(int n_qubits, Eigen::VectorXcd amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {}

Statevector Statevector::from_amplitudes(Eigen::VectorXcd amplitudes) {
  const Index dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("Statevector: amplitude count must be a power of two >= 2");
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  return {n, std::move(amplitudes)};
}

void Statevector::apply(const Gate& gate) {
  check_qubit(gate.qubit0, n_qubits_);
  if (gate.is_two_qubit()) {
    check_qubit(gate.qubit1, n_qubits_);
    if (gate.qubit0 == gate.qubit1) throw std::invalid_argument("apply_gate: repeated qubit");
  }
  if (!gate.is_bound()) throw std::invalid_argument("apply_gate: unbound rotation angle");

  const int q = gate.qubit0;
  switch (gate.kind) {
    case GateKind::X:
      for_each_pair(amps_.size(), q, [&](Index i0, Index i1) { std::swap(amps_[i0], amps_[i1]); });
      break;
    case GateKind::SX: {
      const Complex p{0.5, 0.5};
      const Complex m{0.5, -0.5};
      apply_matrix(amps_, q, p, m, m, p);
      break;
    }
    case GateKind::H: {
      const double s = std::numbers::sqrt2 / 2.0;
      apply_matrix(amps_, q, s, s, s, -s);
      break;
    }
    case GateKind::RZ: {
      const double half = *gate.angle / 2.0;
      const Complex lo = std::polar(1.0, -half);
      const Complex hi = std::polar(1.0, half);
      for_each_pair(amps_.size(), q, [&](Index i0, Index i1) {
        amps_[i0] *= lo;
        amps_[i1] *= hi;
      });
      break;
    }
    case GateKind::RY: {
      const double c = std::cos(*gate.angle / 2.0);
      const double s = std::sin(*gate.angle / 2.0);
      for_each_pair(amps_.size(), q, [&](Index i0, Index i1) {
        const Complex a0 = amps_[i0];
        const Complex a1 = amps_[i1];
        amps_[i0] = c * a0 - s * a1;
        amps_[i1] = s * a0 + c * a1;
      });
      break;
    }
    case GateKind::CNOT: {
      const Index cmask = Index{1} << gate.qubit0;
      for_each_pair(amps_.size(), gate.qubit1, [&](Index i0, Index i1) {
        if (i0 & cmask) std::swap(amps_[i0], amps_[i1]);
      });
      break;
    }
    case GateKind::CZ: {
      const Index mask = (Index{1} << gate.qubit0) | (Index{1} << gate.qubit1);
      for (Index i = 0; i < amps_.size(); ++i)
        if ((i & mask) == mask) amps_[i] = -amps_[i];
      break;
    }
  }
}

void Statevector::apply(const Circuit& circuit) {
  if (circuit.n_qubits() != n_qubits_) {
    std::ostringstream msg;
    msg << "apply_circuit: circuit has " << circuit.n_qubits() << " qubits, state has "
        << n_qubits_;
    throw std::invalid_argument(msg.str());
  }
  for (const auto& g : circuit.gates()) apply(g);
}

Statevector apply_gate(Statevector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

Statevector apply_circuit(Statevector state, const Circuit& circuit) {
  state.apply(circuit);
  return state;
}

double expectation_trusted(const Statevector& state, const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols() || static_cast<std::size_t>(h.rows()) != state.dim())
    throw std::invalid_argument("expectation: operator and state dimensions differ");
  const Complex value = state.amplitudes().dot(h * state.amplitudes());
  if (std::abs(value.imag()) > 1e-10) {
    std::ostringstream msg;
    msg << "expectation: imaginary part " << value.imag() << " exceeds 1e-10";
    throw std::invalid_argument(msg.str());
  }
  return value.real();
}

double expectation(const Statevector& state, const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols() || static_cast<std::size_t>(h.rows()) != state.dim())
    throw std::invalid_argument("expectation: operator and state dimensions differ");
  if (const double asym = max_asymmetry(h); asym > 1e-10) {
    std::ostringstream msg;
    msg << "expectation: operator is not Hermitian (max |H - H^dagger| = " << asym << ")";
    throw std::invalid_argument(msg.str());
  }
  return expectation_trusted(state, h);
}

double fidelity(const Statevector& a, const Statevector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double overlap_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("overlap_fidelity: dimension mismatch");
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

double overlap_fidelity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("overlap_fidelity: dimension mismatch");
  const double d = a.dot(b);
  return d * d / (a.squaredNorm() * b.squaredNorm());
}

}  // namespace advqe
