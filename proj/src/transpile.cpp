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

#include "advqe/transpile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace advqe {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleEps = 1e-12;

using C = std::complex<double>;
using Mat2 = std::array<C, 4>;  // row-major

// Wraps into (-pi, pi].
double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

bool is_zero_angle(double a) { return std::abs(wrap_angle(a)) < kAngleEps; }
bool is_pi_angle(double a) { return std::abs(std::abs(wrap_angle(a)) - kPi) < kAngleEps; }

bool is_basis(GateKind k) {
  return k == GateKind::X || k == GateKind::SX || k == GateKind::RZ || k == GateKind::CZ;
}

void emit_h(Circuit& out, int q) {
  out.add(Gate::rz(q, kPi / 2)).add(Gate::sx(q)).add(Gate::rz(q, kPi / 2));
}

// Stack-based peephole rewrite; returns true if anything changed.
bool merge_pass(const std::vector<Gate>& in, std::vector<Gate>& out, int n_qubits) {
  std::vector<std::optional<Gate>> live;
  live.reserve(in.size());
  std::vector<std::vector<std::size_t>> run(static_cast<std::size_t>(n_qubits));
  bool changed = false;

  for (const Gate& g : in) {
    if (g.is_two_qubit()) {
      run[static_cast<std::size_t>(g.qubit0)].clear();
      run[static_cast<std::size_t>(g.qubit1)].clear();
      live.emplace_back(g);
      continue;
    }
    auto& stack = run[static_cast<std::size_t>(g.qubit0)];
    live.emplace_back(g);
    stack.push_back(live.size() - 1);

    // Reduce the top of the stack until no rule applies.
    for (bool again = true; again && !stack.empty();) {
      again = false;
      Gate& top = *live[stack.back()];
      if (top.kind == GateKind::RZ && is_zero_angle(*top.angle)) {
        live[stack.back()].reset();
        stack.pop_back();
        changed = again = true;
        continue;
      }
      if (stack.size() < 2) break;
      Gate& prev = *live[stack[stack.size() - 2]];
      if (top.kind == GateKind::RZ && prev.kind == GateKind::RZ) {
        prev.angle = wrap_angle(*prev.angle + *top.angle);
        live[stack.back()].reset();
        stack.pop_back();
        changed = again = true;
        continue;
      }
      if (top.kind == GateKind::SX && prev.kind == GateKind::SX) {
        prev.kind = GateKind::X;
        live[stack.back()].reset();
        stack.pop_back();
        changed = again = true;
        continue;
      }
      if (top.kind == GateKind::X && prev.kind == GateKind::X) {
        live[stack.back()].reset();
        stack.pop_back();
        live[stack.back()].reset();
        stack.pop_back();
        changed = again = true;
        continue;
      }
      if (stack.size() < 3) break;
      Gate& first = *live[stack[stack.size() - 3]];
      if (prev.kind == GateKind::RZ && top.kind == first.kind &&
          ((top.kind == GateKind::SX && is_pi_angle(*prev.angle)) || top.kind == GateKind::X)) {
        // SX RZ(pi) SX ~ RZ(pi);  X RZ(a) X ~ RZ(-a)
        first = Gate::rz(g.qubit0, top.kind == GateKind::X ? -*prev.angle : kPi);
        live[stack.back()].reset();
        stack.pop_back();
        live[stack.back()].reset();
        stack.pop_back();
        changed = again = true;
      }
    }
  }

  out.clear();
  for (auto& g : live)
    if (g) out.push_back(*g);
  return changed;
}

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

Mat2 matrix_of(const Gate& g) {
  switch (g.kind) {
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::SX: return {C{0.5, 0.5}, C{0.5, -0.5}, C{0.5, -0.5}, C{0.5, 0.5}};
    case GateKind::H: {
      const double s = std::numbers::sqrt2 / 2.0;
      return {s, s, s, -s};
    }
    case GateKind::RZ: return {std::polar(1.0, -*g.angle / 2), 0.0, 0.0, std::polar(1.0, *g.angle / 2)};
    case GateKind::RY: {
      const double c = std::cos(*g.angle / 2);
      const double s = std::sin(*g.angle / 2);
      return {c, -s, s, c};
    }
    default: break;
  }
  throw std::logic_error("matrix_of: not a single-qubit gate");
}

void emit_rz(std::vector<Gate>& out, int q, double angle) {
  if (!is_zero_angle(angle)) out.push_back(Gate::rz(q, wrap_angle(angle)));
}

// Minimal ZSX sequence (time order) for a 2x2 unitary, up to global phase.
void synthesize(const Mat2& u, int q, std::vector<Gate>& out) {
  const C det = u[0] * u[3] - u[1] * u[2];
  const C phase = std::sqrt(det);
  const C a = u[0] / phase;  // SU(2): [[a, -conj(b)], [b, conj(a)]]
  const C b = u[2] / phase;
  const double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  constexpr double eps = 1e-10;

  if (std::abs(b) < eps) {
    emit_rz(out, q, -2.0 * std::arg(a));
    return;
  }
  if (std::abs(a) < eps) {
    // RZ(phi) RY(pi) RZ(lambda) ~ RZ(phi - lambda - pi) X, lambda = 0
    out.push_back(Gate::x(q));
    emit_rz(out, q, 2.0 * std::arg(b) - kPi);
    return;
  }
  const double sum = -2.0 * std::arg(a);  // phi + lambda
  const double diff = 2.0 * std::arg(b);  // phi - lambda
  const double phi = 0.5 * (sum + diff);
  const double lambda = 0.5 * (sum - diff);
  if (std::abs(theta - kPi / 2) < eps) {
    emit_rz(out, q, lambda - kPi / 2);
    out.push_back(Gate::sx(q));
    emit_rz(out, q, phi + kPi / 2);
    return;
  }
  emit_rz(out, q, lambda);
  out.push_back(Gate::sx(q));
  emit_rz(out, q, theta + kPi);
  out.push_back(Gate::sx(q));
  emit_rz(out, q, phi + kPi);
}

}  // namespace

Circuit merge_single_qubit_runs(const Circuit& circuit) {
  std::vector<Gate> current = circuit.gates();
  std::vector<Gate> next;
  while (merge_pass(current, next, circuit.n_qubits())) std::swap(current, next);
  Circuit out(circuit.n_qubits());
  for (const auto& g : next) out.add(g);
  return out;
}

Circuit resynthesize_single_qubit_runs(const Circuit& circuit) {
  const auto n = static_cast<std::size_t>(circuit.n_qubits());
  std::vector<std::optional<Mat2>> pending(n);
  std::vector<Gate> out;

  auto flush = [&](int q) {
    auto& p = pending[static_cast<std::size_t>(q)];
    if (p) synthesize(*p, q, out);
    p.reset();
  };

  for (const Gate& g : circuit.gates()) {
    if (!g.is_bound()) throw std::invalid_argument("resynthesize: unbound gate");
    if (g.is_two_qubit()) {
      flush(g.qubit0);
      flush(g.qubit1);
      out.push_back(g);
      continue;
    }
    auto& p = pending[static_cast<std::size_t>(g.qubit0)];
    p = p ? mul(matrix_of(g), *p) : matrix_of(g);
  }
  for (int q = 0; q < circuit.n_qubits(); ++q) flush(q);

  Circuit result(circuit.n_qubits());
  for (const auto& g : out) result.add(g);
  return result;
}

Circuit transpile(const Circuit& circuit, const TranspileOptions& options) {
  Circuit out(circuit.n_qubits());
  for (const Gate& g : circuit.gates()) {
    if (!g.is_bound()) throw std::invalid_argument("transpile: circuit has unbound parameters");
    if (g.is_two_qubit() && std::abs(g.qubit0 - g.qubit1) != 1) {
      std::ostringstream msg;
      msg << "transpile: " << to_string(g.kind) << " on non-adjacent qubits " << g.qubit0 << ", "
          << g.qubit1 << " (routing is not supported)";
      throw std::invalid_argument(msg.str());
    }
    const int q = g.qubit0;
    switch (g.kind) {
      case GateKind::RY:
        out.add(Gate::rz(q, 0.0)).add(Gate::sx(q)).add(Gate::rz(q, *g.angle + kPi));
        out.add(Gate::sx(q)).add(Gate::rz(q, kPi));
        break;
      case GateKind::CNOT:
        emit_h(out, g.qubit1);
        out.add(Gate::cz(g.qubit0, g.qubit1));
        emit_h(out, g.qubit1);
        break;
      case GateKind::H:
        emit_h(out, q);
        break;
      default:
        out.add(g);
        break;
    }
  }
  if (options.resynthesize) out = resynthesize_single_qubit_runs(out);
  if (options.merge || options.resynthesize) out = merge_single_qubit_runs(out);
  return out;
}

GateCounts count(const Circuit& circuit) {
  GateCounts c;
  std::vector<std::size_t> level(static_cast<std::size_t>(circuit.n_qubits()), 0);
  for (const Gate& g : circuit.gates()) {
    if (!is_basis(g.kind))
      throw std::invalid_argument("count: non-basis gate " + to_string(g.kind) + " present");
    switch (g.kind) {
      case GateKind::X: ++c.x; break;
      case GateKind::SX: ++c.sx; break;
      case GateKind::RZ: ++c.rz; break;
      case GateKind::CZ: ++c.cz; break;
      default: break;
    }
    auto& l0 = level[static_cast<std::size_t>(g.qubit0)];
    if (g.is_two_qubit()) {
      auto& l1 = level[static_cast<std::size_t>(g.qubit1)];
      l0 = l1 = std::max(l0, l1) + 1;
    } else {
      ++l0;
    }
  }
  c.total = c.x + c.sx + c.rz + c.cz;
  c.depth = level.empty() ? 0 : *std::max_element(level.begin(), level.end());
  return c;
}

const std::vector<ReferenceColumn>& reference_table() {
  static const std::vector<ReferenceColumn> table = {
      {"Trotter", {.x = 317, .sx = 53646, .rz = 48460, .cz = 20213, .total = 122636, .depth = 76021}},
      {"VarQTE", {.x = 0, .sx = 108, .rz = 109, .cz = 30, .total = 247, .depth = 90}},
      {"AVQDS", {.x = 6, .sx = 79, .rz = 67, .cz = 40, .total = 192, .depth = 129}},
      {"VQE", {.x = 0, .sx = 78, .rz = 93, .cz = 15, .total = 186, .depth = 55}},
  };
  return table;
}

}  // namespace advqe
