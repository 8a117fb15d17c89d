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

#include "advqe/circuit.hpp"

#include <sstream>
#include <stdexcept>

namespace advqe {

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::SX: return "sx";
    case GateKind::RZ: return "rz";
    case GateKind::RY: return "ry";
    case GateKind::CNOT: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::H: return "h";
  }
  return "?";
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("Circuit: need at least one qubit");
}

Circuit& Circuit::add(const Gate& gate) {
  auto check = [&](int q) {
    if (q < 0 || q >= n_qubits_) {
      std::ostringstream msg;
      msg << "Circuit: qubit index " << q << " out of range for " << n_qubits_ << " qubits";
      throw std::invalid_argument(msg.str());
    }
  };
  check(gate.qubit0);
  if (gate.is_two_qubit()) {
    check(gate.qubit1);
    if (gate.qubit0 == gate.qubit1)
      throw std::invalid_argument("Circuit: two-qubit gate on a single qubit");
  } else if (gate.qubit1 != -1) {
    throw std::invalid_argument("Circuit: one-qubit gate given a second qubit");
  }
  if (!gate.is_rotation() && gate.angle)
    throw std::invalid_argument("Circuit: " + to_string(gate.kind) + " takes no angle");
  if (gate.kind == GateKind::RZ && !gate.angle)
    throw std::invalid_argument("Circuit: only RY gates may be parameter slots");

  if (!gate.is_bound()) slots_.push_back(gates_.size());
  gates_.push_back(gate);
  return *this;
}

Circuit Circuit::bind(std::span<const double> params) const {
  if (params.size() != slots_.size()) {
    std::ostringstream msg;
    msg << "Circuit::bind: expected " << slots_.size() << " parameters, got " << params.size();
    throw std::invalid_argument(msg.str());
  }
  Circuit bound = *this;
  for (std::size_t j = 0; j < slots_.size(); ++j) bound.gates_[slots_[j]].angle = params[j];
  bound.slots_.clear();
  return bound;
}

std::vector<double> Circuit::slot_angles(const Circuit& bound) const {
  if (bound.gates_.size() != gates_.size())
    throw std::invalid_argument("Circuit::slot_angles: circuit is not a binding of this template");
  std::vector<double> out;
  out.reserve(slots_.size());
  for (std::size_t idx : slots_) {
    const auto& g = bound.gates_[idx];
    if (!g.angle) throw std::invalid_argument("Circuit::slot_angles: slot still unbound");
    out.push_back(*g.angle);
  }
  return out;
}

Circuit Circuit::inverse() const {
  if (!is_bound()) throw std::invalid_argument("Circuit::inverse: circuit has unbound slots");
  Circuit inv(n_qubits_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    if (g.is_rotation()) {
      g.angle = -*g.angle;
      inv.add(g);
    } else if (g.kind == GateKind::SX) {
      inv.add(g).add(g).add(g);
    } else {
      inv.add(g);
    }
  }
  return inv;
}

}  // namespace advqe
