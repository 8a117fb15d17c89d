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

#include "advqe/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace advqe {
namespace {

using Vec = Eigen::VectorXd;

struct Sample {
  double alpha;
  double f;
  double slope;  // directional derivative along the search direction
  Vec grad;
};

class LineSearch {
 public:
  LineSearch(const ObjectiveFn& fn, const Vec& x, const Vec& dir, const BfgsOptions& opts,
             int& evals)
      : fn_(fn), x_(x), dir_(dir), opts_(opts), evals_(evals) {}

  Sample eval(double alpha) {
    Vec trial = x_ + alpha * dir_;
    Vec grad(trial.size());
    const double f = fn_(std::span<const double>(trial.data(), trial.size()),
                         std::span<double>(grad.data(), grad.size()));
    ++evals_;
    ++count_;
    return {alpha, f, grad.dot(dir_), std::move(grad)};
  }

  bool exhausted() const { return count_ >= opts_.max_line_search_evals; }

 private:
  const ObjectiveFn& fn_;
  const Vec& x_;
  const Vec& dir_;
  const BfgsOptions& opts_;
  int& evals_;
  int count_ = 0;
};

double cubic_minimizer(const Sample& a, const Sample& b) {
  const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.slope * b.slope;
  if (disc < 0.0) return 0.5 * (a.alpha + b.alpha);
  const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
  const double t = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / (b.slope - a.slope + 2.0 * d2);
  if (!std::isfinite(t)) return 0.5 * (a.alpha + b.alpha);
  const double lo = std::min(a.alpha, b.alpha);
  const double hi = std::max(a.alpha, b.alpha);
  const double margin = 0.1 * (hi - lo);
  return std::clamp(t, lo + margin, hi - margin);
}

// Strong-Wolfe search (bracketing phase followed by zoom). Returns the best
// sufficient-decrease point found, or nullopt if none was.
std::optional<Sample> wolfe_search(LineSearch& ls, const Sample& start, double alpha0,
                                   const BfgsOptions& opts) {
  const double c1 = opts.wolfe_c1;
  const double c2 = opts.wolfe_c2;
  auto armijo = [&](const Sample& s) { return s.f <= start.f + c1 * s.alpha * start.slope; };
  auto curvature = [&](const Sample& s) { return std::abs(s.slope) <= -c2 * start.slope; };

  std::optional<Sample> best;
  auto remember = [&](const Sample& s) {
    if (std::isfinite(s.f) && armijo(s) && (!best || s.f < best->f)) best = s;
  };

  auto zoom = [&](Sample lo, Sample hi) -> std::optional<Sample> {
    while (!ls.exhausted()) {
      if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
      Sample s = ls.eval(cubic_minimizer(lo, hi));
      remember(s);
      if (!std::isfinite(s.f) || !armijo(s) || s.f >= lo.f) {
        hi = std::move(s);
      } else {
        if (curvature(s)) return s;
        if (s.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = std::move(s);
      }
    }
    return best;
  };

  Sample prev = start;
  double alpha = alpha0;
  for (int i = 0; !ls.exhausted(); ++i) {
    Sample s = ls.eval(alpha);
    remember(s);
    if (!std::isfinite(s.f) || !armijo(s) || (i > 0 && s.f >= prev.f)) return zoom(prev, s);
    if (curvature(s)) return s;
    if (s.slope >= 0.0) return zoom(s, prev);
    prev = std::move(s);
    alpha *= 2.0;
  }
  return best;
}

}  // namespace

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Target: return "target";
    case StopReason::Gradient: return "gradient";
    case StopReason::Stalled: return "stalled";
    case StopReason::MaxIterations: return "max_iterations";
  }
  return "?";
}

BfgsResult bfgs_minimize(const ObjectiveFn& objective, std::vector<double> x0,
                         const BfgsOptions& options,
                         const std::optional<Eigen::MatrixXd>& inverse_hessian) {
  const auto n = static_cast<Eigen::Index>(x0.size());
  BfgsResult result;
  Vec x = Eigen::Map<const Vec>(x0.data(), n);
  Vec grad(n);
  double f = objective(std::span<const double>(x.data(), n), std::span<double>(grad.data(), n));
  result.evaluations = 1;
  if (!std::isfinite(f) || !grad.allFinite())
    throw std::runtime_error("bfgs_minimize: objective is not finite at the starting point");

  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  if (inverse_hessian && inverse_hessian->rows() == n && inverse_hessian->cols() == n &&
      inverse_hessian->allFinite())
    hinv = *inverse_hessian;

  auto finish = [&](StopReason reason) {
    result.x.assign(x.data(), x.data() + n);
    result.f = f;
    result.grad_inf_norm = n > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;
    result.reason = reason;
    result.inverse_hessian = hinv;
    return result;
  };

  bool fresh_curvature = !inverse_hessian.has_value();
  for (int iter = 0;; ++iter) {
    result.iterations = iter;
    if (f <= options.f_target) return finish(StopReason::Target);
    if (n == 0 || grad.cwiseAbs().maxCoeff() <= options.grad_tol) return finish(StopReason::Gradient);
    if (iter >= options.max_iterations) return finish(StopReason::MaxIterations);

    Vec dir = -hinv * grad;
    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      dir = -grad;
      slope = grad.dot(dir);
      fresh_curvature = true;
    }
    // Without curvature information, take a first step of unit length.
    const double alpha0 = fresh_curvature ? std::min(1.0, 1.0 / dir.norm()) : 1.0;

    LineSearch ls(objective, x, dir, options, result.evaluations);
    const Sample start{0.0, f, slope, grad};
    auto accepted = wolfe_search(ls, start, alpha0, options);
    if (!accepted || !(accepted->f < f)) {
      if (fresh_curvature) return finish(StopReason::Stalled);
      hinv.setIdentity();
      fresh_curvature = true;
      continue;
    }
    if (!std::isfinite(accepted->f) || !accepted->grad.allFinite()) {
      std::ostringstream msg;
      msg << "bfgs_minimize: non-finite objective at iteration " << iter;
      throw std::runtime_error(msg.str());
    }

    const Vec s = accepted->alpha * dir;
    const Vec y = accepted->grad - grad;
    const double sy = s.dot(y);
    x += s;
    f = accepted->f;
    grad = accepted->grad;

    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (fresh_curvature) {
        // Rescale the identity to the observed curvature before the first update.
        hinv *= sy / y.squaredNorm();
        fresh_curvature = false;
      }
      const double rho = 1.0 / sy;
      const Vec hy = hinv * y;
      const double yhy = y.dot(hy);
      hinv += (rho * rho * yhy + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
    }
  }
}

}  // namespace advqe
