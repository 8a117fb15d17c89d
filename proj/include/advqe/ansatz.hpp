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
#include <span>

#include "advqe/circuit.hpp"

namespace advqe {

/// RealAmplitudes layout: an RY on every qubit, then `layers` rounds of a
/// nearest-neighbour CNOT chain followed by another RY on every qubit.
struct AnsatzSpec {
  int n_qubits = 1;
  int layers = 0;

  std::size_t parameter_count() const {
    return static_cast<std::size_t>(layers + 1) * static_cast<std::size_t>(n_qubits);
  }
};

/// Unbound template. Slot order is layer-major, qubit-ascending. Throws
/// std::invalid_argument for n_qubits < 1 or layers < 0.
Circuit build_template(const AnsatzSpec& spec);

/// Binds `params` into a copy of `template_circuit`.
Circuit bind(const Circuit& template_circuit, std::span<const double> params);

}  // namespace advqe
