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

#include "advqe/ansatz.hpp"

#include <stdexcept>

namespace advqe {

Circuit build_template(const AnsatzSpec& spec) {
  if (spec.n_qubits < 1) throw std::invalid_argument("build_template: n_qubits must be >= 1");
  if (spec.layers < 0) throw std::invalid_argument("build_template: layers must be >= 0");
  Circuit circuit(spec.n_qubits);
  for (int q = 0; q < spec.n_qubits; ++q) circuit.add(Gate::ry_slot(q));
  for (int layer = 0; layer < spec.layers; ++layer) {
    for (int q = 0; q + 1 < spec.n_qubits; ++q) circuit.add(Gate::cnot(q, q + 1));
    for (int q = 0; q < spec.n_qubits; ++q) circuit.add(Gate::ry_slot(q));
  }
  return circuit;
}

Circuit bind(const Circuit& template_circuit, std::span<const double> params) {
  return template_circuit.bind(params);
}

}  // namespace advqe
