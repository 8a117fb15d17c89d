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

#include "advqe/pde.hpp"

#include <random>

#include "gtest/gtest.h"

#include "oracles.hpp"

using namespace advqe;

TEST(PdeConfig, DerivesStepsAndSpacing) {
  const auto cfg = PdeConfig::defaults();
  EXPECT_EQ(cfg.n_steps(), 500u);
  EXPECT_EQ(cfg.grid_size(), 16u);
  EXPECT_DOUBLE_EQ(cfg.dx(), 1.0 / 16.0);
  EXPECT_NEAR(cfg.n_steps() * cfg.dt(), cfg.t_max(), 1e-12 * cfg.t_max());
}

TEST(PdeConfig, RejectsBadValues) {
  EXPECT_THROW(PdeConfig(0.0, 4, 0.002, 1.0), std::invalid_argument);
  EXPECT_THROW(PdeConfig(32, 0, 0.002, 1.0), std::invalid_argument);
  EXPECT_THROW(PdeConfig(32, 4, -0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(PdeConfig(32, 4, 0.003, 1.0), std::invalid_argument);  // 333.33 steps
  EXPECT_NO_THROW(PdeConfig(32, 4, 0.002, 0.0));
}

TEST(Coefficients, DefaultScale) {
  const auto [b, c, d] = coefficients(PdeConfig::defaults());
  EXPECT_DOUBLE_EQ(b, -32.0);
  EXPECT_DOUBLE_EQ(c, 0.0);
  EXPECT_DOUBLE_EQ(d, 32.0);
}

TEST(Coefficients, SumToZeroAndUpwindLimit) {
  for (int n = 1; n <= 6; ++n) {
    for (double pe : {0.5, 3.0, 32.0, 100.0}) {
      const auto k = coefficients(PdeConfig(pe, n, 1e-4, 1e-4));
      EXPECT_NEAR(k.diag + k.upper + k.lower, 0.0, 1e-12);
    }
    const PdeConfig cfg(1.0, n, 1e-4, 1e-4);
    const double pe = 2.0 / cfg.dx();
    EXPECT_DOUBLE_EQ(coefficients(PdeConfig(pe, n, 1e-4, 1e-4)).upper, 0.0);
  }
}

TEST(BuildOperator, DefaultEntries) {
  const RealMatrix a = build_operator(PdeConfig::defaults());
  ASSERT_EQ(a.rows(), 16);
  for (int i = 0; i < 16; ++i) {
    EXPECT_DOUBLE_EQ(a(i, i), -16.0);
    if (i + 1 < 16) EXPECT_DOUBLE_EQ(a(i, i + 1), 0.0);
    if (i > 0) EXPECT_DOUBLE_EQ(a(i, i - 1), 16.0);
  }
  EXPECT_DOUBLE_EQ(a(0, 15), 16.0);
  EXPECT_DOUBLE_EQ(a(15, 0), 0.0);
}

TEST(BuildOperator, ColumnSumsVanish) {
  for (int n = 1; n <= 5; ++n) {
    for (double pe : {1.0, 7.5, 32.0}) {
      const RealMatrix a = build_operator(PdeConfig(pe, n, 1e-5, 1e-5));
      EXPECT_LE(a.colwise().sum().cwiseAbs().maxCoeff(), 1e-12) << "n=" << n << " pe=" << pe;
    }
  }
}

TEST(BuildOperator, MatchesStencilAssembly) {
  for (const auto& cfg : {PdeConfig(32, 2, 0.002, 0.002), PdeConfig(32, 4, 0.002, 0.002),
                          PdeConfig(5, 3, 0.001, 0.001)}) {
    const RealMatrix a = build_operator(cfg);
    const RealMatrix ref = oracle::stencil_operator(cfg);
    EXPECT_LE((a - ref).cwiseAbs().maxCoeff(), 1e-12 * ref.cwiseAbs().maxCoeff());
  }
}

TEST(InitialCondition, TrapezoidSamples) {
  const auto ic = initial_condition(PdeConfig::defaults());
  const std::vector<double> expected = {0, 0, 0, 0.5, 1, 1, 1, 1, 1, 1, 1, 0.5, 0, 0, 0, 0};
  ASSERT_EQ(ic.raw.size(), 16u);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_DOUBLE_EQ(ic.raw.values[i], expected[i]) << i;
  EXPECT_FALSE(ic.raw.normalized);
  EXPECT_TRUE(ic.normalized.normalized);
  EXPECT_NEAR(ic.normalized.values.norm(), 1.0, 1e-12);
  EXPECT_NEAR(ic.normalized.norm, std::sqrt(7.5), 1e-12);
  EXPECT_LE((ic.normalized.physical() - ic.raw.values).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(InitialCondition, BoundedByPlateau) {
  for (int n = 3; n <= 8; ++n) {
    const auto ic = initial_condition(PdeConfig(32, n, 1e-4, 1e-4));
    EXPECT_GE(ic.raw.values.minCoeff(), 0.0);
    EXPECT_DOUBLE_EQ(ic.raw.values.maxCoeff(), 1.0);
    EXPECT_NEAR(ic.normalized.values.norm(), 1.0, 1e-12);
  }
}

TEST(DnsStep, UniformFieldIsFixed) {
  const auto cfg = PdeConfig::defaults();
  const RealVector u = RealVector::Constant(16, 0.37);
  const RealVector out = dns_step(build_operator(cfg), cfg.dt(), u);
  for (int i = 0; i < 16; ++i) EXPECT_EQ(out[i], u[i]);

  const PdeConfig other(7.0, 3, 0.001, 0.001);
  const RealVector v = RealVector::Constant(8, 2.5);
  EXPECT_LE((dns_step(build_operator(other), other.dt(), v) - v).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(DnsStep, ConservesMassAndMatchesStencilLoop) {
  const auto cfg = PdeConfig::defaults();
  const RealMatrix a = build_operator(cfg);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    RealVector c(16);
    for (auto& v : c) v = g(rng);
    const RealVector out = dns_step(a, cfg.dt(), c);
    EXPECT_NEAR(out.sum(), c.sum(), 1e-12 * std::max(1.0, c.cwiseAbs().sum()));
  }
  const RealVector c0 = initial_condition(cfg).raw.values;
  const RealVector ref = oracle::stencil_euler_step(cfg, c0);
  EXPECT_LE((dns_step(a, cfg.dt(), c0) - ref).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(DnsStep, DimensionMismatchThrows) {
  const RealMatrix a = build_operator(PdeConfig::defaults());
  EXPECT_THROW(dns_step(a, 0.002, RealVector::Ones(8)), std::invalid_argument);
}

TEST(DnsRun, ZeroStepsKeepsInitialCondition) {
  const PdeConfig cfg(32, 4, 0.002, 0.0);
  const auto traj = dns_run(cfg);
  ASSERT_EQ(traj.fields_raw.size(), 1u);
  EXPECT_EQ(traj.fields_raw[0].values, initial_condition(cfg).raw.values);
}

TEST(DnsRun, DefaultRunConservesMass) {
  const auto traj = dns_run(PdeConfig::defaults());
  ASSERT_EQ(traj.fields_raw.size(), 501u);
  const double m0 = traj.fields_raw.front().values.sum();
  for (const auto& f : traj.fields_raw) EXPECT_NEAR(f.values.sum(), m0, 1e-10 * m0);
  EXPECT_DOUBLE_EQ(traj.times.back(), 1.0);
  for (const auto& f : traj.fields_normalized) EXPECT_NEAR(f.values.norm(), 1.0, 1e-12);
}

TEST(DnsRun, UnstableConfigRejected) {
  EXPECT_THROW(dns_run(PdeConfig(32, 4, 0.1, 1.0)), std::invalid_argument);
}

TEST(DnsRun, FirstOrderAgainstExponential) {
  const auto coarse = PdeConfig::defaults();
  const auto fine = coarse.with_dt(0.001);
  const RealMatrix a = build_operator(coarse);
  const RealVector c0 = initial_condition(coarse).raw.values;
  const RealVector exact = exact_propagate(a, 1.0, c0);
  const double e1 = (dns_run(coarse).fields_raw.back().values - exact).norm() / exact.norm();
  const double e2 = (dns_run(fine).fields_raw.back().values - exact).norm() / exact.norm();
  const double ratio = e1 / e2;
  EXPECT_GE(ratio, 1.7);
  EXPECT_LE(ratio, 2.3);
}

TEST(ExactPropagate, IdentityAtZeroTime) {
  const auto cfg = PdeConfig::defaults();
  const RealVector c0 = initial_condition(cfg).raw.values;
  EXPECT_EQ(exact_propagate(build_operator(cfg), 0.0, c0), c0);
  EXPECT_THROW(exact_propagate(build_operator(cfg), -1.0, c0), std::invalid_argument);
}

TEST(ExactPropagate, ConservesSumAndComposes) {
  const auto cfg = PdeConfig::defaults();
  const RealMatrix a = build_operator(cfg);
  const RealVector c0 = initial_condition(cfg).raw.values;
  const RealVector full = exact_propagate(a, 1.0, c0);
  EXPECT_NEAR(full.sum(), c0.sum(), 1e-10);
  const RealVector halves = exact_propagate(a, 0.5, exact_propagate(a, 0.5, c0));
  EXPECT_LE((halves - full).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ExactPropagate, MatchesEigendecomposition) {
  // The operator is circulant, hence normal, so the eigenbasis route is accurate.
  const auto cfg = PdeConfig::defaults();
  const RealMatrix a = build_operator(cfg);
  const RealVector c0 = initial_condition(cfg).raw.values;
  for (double t : {0.01, 0.3, 1.0}) {
    const RealVector ref = oracle::eig_expm(t * a) * c0;
    EXPECT_LE((exact_propagate(a, t, c0) - ref).norm(), 1e-10 * ref.norm()) << "t=" << t;
  }
}

TEST(StabilityCheck, DefaultConfigPasses) {
  const auto r = stability_check(PdeConfig::defaults());
  EXPECT_DOUBLE_EQ(r.diffusive_limit, 0.0625);
  EXPECT_DOUBLE_EQ(r.cfl_limit, 0.0625);
  EXPECT_TRUE(r.pass());
  EXPECT_LE(r.spectral_radius, 1.0 + 1e-12);
}

TEST(StabilityCheck, LargeStepFails) {
  const auto r = stability_check(PdeConfig(32, 4, 0.1, 1.0));
  EXPECT_FALSE(r.diffusive_ok);
  EXPECT_FALSE(r.cfl_ok);
  EXPECT_FALSE(r.spectral_ok);
  EXPECT_FALSE(r.pass());
  EXPECT_NE(r.describe().find("violated"), std::string::npos);
}

TEST(StabilityCheck, TinyStepsPass) {
  for (double dt : {1e-3, 1e-5, 1e-7}) EXPECT_TRUE(stability_check(PdeConfig(32, 4, dt, dt)).pass());
  for (int n = 1; n <= 6; ++n) EXPECT_TRUE(stability_check(PdeConfig(3, n, 1e-6, 1e-6)).pass());
}
