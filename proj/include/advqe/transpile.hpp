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

#include "advqe/circuit.hpp"

namespace advqe {

struct GateCounts {
  std::size_t x = 0;
  std::size_t sx = 0;
  std::size_t rz = 0;
  std::size_t cz = 0;
  std::size_t total = 0;
  std::size_t depth = 0;

  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

struct TranspileOptions {
  bool merge = true;
  /// Collapse every maximal single-qubit run into at most RZ-SX-RZ-SX-RZ.
  bool resynthesize = false;
};

/// Rewrites a bound RY/CNOT circuit on a nearest-neighbour chain into the
/// {X, SX, RZ, CZ} basis:
///   RY(t)     -> RZ(0) SX RZ(t + pi) SX RZ(pi)
///   CNOT(c,t) -> H(t) CZ(c,t) H(t),   H -> RZ(pi/2) SX RZ(pi/2)
/// Basis gates pass through. Equal to the input up to global phase.
/// Throws std::invalid_argument for an unbound slot or a two-qubit gate on
/// non-adjacent qubits.
Circuit transpile(const Circuit& circuit, const TranspileOptions& options = {});

/// Local peephole pass on a basis circuit, repeated to a fixed point:
/// adjacent RZs on a qubit are summed mod 2pi, RZ(0) is dropped,
/// SX SX -> X, X X -> I, SX RZ(pi) SX -> RZ(pi) and X RZ(a) X -> RZ(-a).
Circuit merge_single_qubit_runs(const Circuit& circuit);

/// Replaces each maximal single-qubit run by a minimal ZSX sequence.
Circuit resynthesize_single_qubit_runs(const Circuit& circuit);

/// Per-kind counts and DAG depth (every gate one layer). Throws
/// std::invalid_argument if a non-basis gate is present.
GateCounts count(const Circuit& circuit);

struct ReferenceColumn {
  std::string method;
  GateCounts counts;
};

/// Published 4-qubit counts: Trotter, VarQTE, AVQDS and 5-layer VQE.
const std::vector<ReferenceColumn>& reference_table();

}  // namespace advqe
