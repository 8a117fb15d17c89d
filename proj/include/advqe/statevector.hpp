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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "advqe/circuit.hpp"

namespace advqe {

using Complex = std::complex<double>;

/// Exact amplitude vector of an n-qubit register. Qubit 0 is the least
/// significant bit of the amplitude index.
class Statevector {
 public:
  /// |0...0> on n qubits.
  explicit Statevector(int n_qubits);

  /// Wraps an amplitude vector whose length must be a power of two. No
  /// normalization is applied or required.
  static Statevector from_amplitudes(Eigen::VectorXcd amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }
  double norm() const { return amps_.norm(); }

  /// In-place strided update, O(2^n). Throws std::invalid_argument for an
  /// unbound rotation or a qubit index outside the register.
  void apply(const Gate& gate);
  void apply(const Circuit& circuit);

 private:
  Statevector(int n_qubits, Eigen::VectorXcd amps);

  int n_qubits_;
  Eigen::VectorXcd amps_;
};

Statevector apply_gate(Statevector state, const Gate& gate);
Statevector apply_circuit(Statevector state, const Circuit& circuit);

/// Re <psi|H|psi>. H must be Hermitian within 1e-10 (checked) and match
/// the state dimension; the imaginary part of the result must be below
/// 1e-10. Throws std::invalid_argument otherwise.
double expectation(const Statevector& state, const Eigen::MatrixXcd& h);

/// Same as expectation() without the Hermiticity scan, for operators that
/// were validated once up front.
double expectation_trusted(const Statevector& state, const Eigen::MatrixXcd& h);

/// |<a|b>|^2. Throws std::invalid_argument on a dimension mismatch.
double fidelity(const Statevector& a, const Statevector& b);

/// |<a|b>|^2 / (|a|^2 |b|^2) for plain vectors.
double overlap_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
double overlap_fidelity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace advqe
