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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace advqe {

enum class GateKind { X, SX, RZ, RY, CNOT, CZ, H };

std::string to_string(GateKind kind);

/// A single gate. For CNOT `qubit0` is the control and `qubit1` the target;
/// one-qubit gates leave `qubit1` at -1. Only RZ and RY carry an angle, and
/// an RY whose angle is empty is an unbound parameter slot.
struct Gate {
  GateKind kind;
  int qubit0;
  int qubit1 = -1;
  std::optional<double> angle;

  static Gate x(int q) { return {GateKind::X, q, -1, std::nullopt}; }
  static Gate sx(int q) { return {GateKind::SX, q, -1, std::nullopt}; }
  static Gate h(int q) { return {GateKind::H, q, -1, std::nullopt}; }
  static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, theta}; }
  static Gate ry(int q, double theta) { return {GateKind::RY, q, -1, theta}; }
  static Gate ry_slot(int q) { return {GateKind::RY, q, -1, std::nullopt}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, std::nullopt}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, a, b, std::nullopt}; }

  bool is_two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::CZ; }
  bool is_rotation() const { return kind == GateKind::RZ || kind == GateKind::RY; }
  bool is_bound() const { return !is_rotation() || angle.has_value(); }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Ordered gate list on a fixed register. Unbound RY gates are recorded as
/// parameter slots in insertion order.
class Circuit {
 public:
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Gate indices of the unbound parameter slots.
  const std::vector<std::size_t>& parameter_slots() const { return slots_; }
  std::size_t parameter_count() const { return slots_.size(); }
  bool is_bound() const { return slots_.empty(); }

  /// Appends a gate. Throws std::invalid_argument on out-of-range or
  /// repeated qubit indices, or an angle on a gate kind that takes none.
  Circuit& add(const Gate& gate);

  /// Copy with slot j bound to params[j]. Throws std::invalid_argument on a
  /// length mismatch.
  Circuit bind(std::span<const double> params) const;

  /// Angles currently held by the slot gates of a bound copy, in slot order.
  std::vector<double> slot_angles(const Circuit& bound) const;

  /// Adjoint circuit: reversed order with negated rotation angles and SX
  /// expanded as SX^3. Requires a bound circuit.
  Circuit inverse() const;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
  std::vector<std::size_t> slots_;
};

}  // namespace advqe
