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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace advqe {

/// Objective callback: returns f(x) and writes the gradient into `grad`.
using ObjectiveFn = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct BfgsOptions {
  double f_target = 1e-12;     // stop once f <= f_target
  double grad_tol = 1e-8;      // stop once ||grad||_inf <= grad_tol
  int max_iterations = 500;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  int max_line_search_evals = 40;
};

enum class StopReason { Target, Gradient, Stalled, MaxIterations };

std::string to_string(StopReason reason);

struct BfgsResult {
  std::vector<double> x;
  double f = 0.0;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  StopReason reason = StopReason::MaxIterations;
  Eigen::MatrixXd inverse_hessian;

  bool converged() const { return reason == StopReason::Target || reason == StopReason::Gradient; }
};

/// Quasi-Newton minimization with a strong-Wolfe line search. When
/// `inverse_hessian` is given (and sized to match) it seeds the curvature
/// model instead of the identity. Throws std::runtime_error if the
/// objective returns a non-finite value at an accepted point.
BfgsResult bfgs_minimize(const ObjectiveFn& objective, std::vector<double> x0,
                         const BfgsOptions& options,
                         const std::optional<Eigen::MatrixXd>& inverse_hessian = std::nullopt);

}  // namespace advqe
