// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ocat/errors.hpp"
#include "ocat/lattice_models.hpp"
#include "ocat/spectral_core.hpp"

namespace ocat {
namespace {

using std::numbers::pi;

TridiagonalHamiltonian random_tridiagonal(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  TridiagonalHamiltonian h;
  for (int i = 0; i < n; ++i) h.diag.push_back(u(rng));
  for (int i = 0; i + 1 < n; ++i) h.offdiag.push_back(u(rng));
  return h;
}

TEST(Diagonalize, FreeChainClosedForm) {
  const auto sys = diagonalize(build_hamiltonian(ModelConfig{5}, PotentialSpec{}, false));
  const double expected[] = {2 - std::sqrt(3.0), 1, 2, 3, 2 + std::sqrt(3.0)};
  for (int j = 0; j < 5; ++j) {
    EXPECT_NEAR(sys.values[j], expected[j], 1e-13);
    EXPECT_NEAR(sys.values[j], 2 - 2 * std::cos((j + 1) * pi / 6), 1e-13);
    // components proportional to sin(j n pi / 6), normalized
    Eigen::VectorXd s(5);
    for (int n = 0; n < 5; ++n) s[n] = std::sin((j + 1) * (n + 1) * pi / 6);
    s.normalize();
    EXPECT_NEAR(std::abs(s.dot(sys.vectors.col(j))), 1.0, 1e-12);
  }
}

TEST(Diagonalize, OrderOne) {
  TridiagonalHamiltonian h;
  h.diag = {7.0};
  const auto sys = diagonalize(h);
  ASSERT_EQ(sys.order(), 1u);
  EXPECT_EQ(sys.values[0], 7.0);
  EXPECT_EQ(sys.vectors(0, 0), 1.0);
}

TEST(Diagonalize, RandomResidualAndOrthonormality) {
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto h = random_tridiagonal(50, seed);
    const auto sys = diagonalize(h);
    // residual oracle computed from the dense matrix, not through apply()
    const Eigen::MatrixXd dense = h.dense();
    for (int j = 0; j < 50; ++j) {
      const Eigen::VectorXd v = sys.vectors.col(j);
      EXPECT_LE((dense * v - sys.values[j] * v).norm(), 1e-10 * (1 + std::abs(sys.values[j])));
    }
    const auto d = diagnose(h, sys);
    EXPECT_LE(d.max_scaled_residual, 1e-10);
    EXPECT_LE(d.max_gram_deviation, 1e-10);
    EXPECT_TRUE(d.ascending);
  }
}

TEST(Diagonalize, MatchesDenseSolver) {
  const auto h = random_tridiagonal(80, 9);
  const auto sys = diagonalize(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(h.dense());
  for (int j = 0; j < 80; ++j) EXPECT_NEAR(sys.values[j], ref.eigenvalues()[j], 1e-12);
  const auto only = eigenvalues(h);
  for (int j = 0; j < 80; ++j) EXPECT_NEAR(only[j], sys.values[j], 1e-12);
}

TEST(Diagonalize, Deterministic) {
  const auto h = random_tridiagonal(200, 4);
  const auto a = diagonalize(h);
  const auto b = diagonalize(h);
  EXPECT_EQ(a.values, b.values);
  EXPECT_TRUE(a.vectors == b.vectors);
}

TEST(Diagonalize, SignConventions) {
  const auto h = random_tridiagonal(30, 5);
  const auto a = diagonalize(h, SignConvention::largest_component_positive);
  const auto b = diagonalize(h, SignConvention::first_component_positive);
  for (int j = 0; j < 30; ++j) {
    Eigen::Index idx = 0;
    a.vectors.col(j).cwiseAbs().maxCoeff(&idx);
    EXPECT_GT(a.vectors(idx, j), 0.0);
    Eigen::Index first = 0;
    while (std::abs(b.vectors(first, j)) < 1e-8) ++first;
    EXPECT_GT(b.vectors(first, j), 0.0);
    EXPECT_NEAR(std::abs(a.vectors.col(j).dot(b.vectors.col(j))), 1.0, 1e-12);
  }
}

TEST(Diagonalize, ContractErrors) {
  EXPECT_THROW(diagonalize(TridiagonalHamiltonian{}), ContractError);
  TridiagonalHamiltonian bad;
  bad.diag = {1, 2};
  EXPECT_THROW(diagonalize(bad), ContractError);
  bad.offdiag = {std::nan("")};
  EXPECT_THROW(diagonalize(bad), ContractError);
}

TEST(CountingFunction, FreeChainOfFive) {
  const auto values = eigenvalues(build_hamiltonian(ModelConfig{5}, PotentialSpec{}, false));
  // lambda_3 = 2 up to rounding; the count is closed at E
  EXPECT_EQ(counting_function(values, values[2]), 3);
  EXPECT_EQ(counting_function(values, 2.0 + 1e-12), 3);
  EXPECT_EQ(counting_function(values, -1.0), 0);
  EXPECT_EQ(counting_function(values, 5.0), 5);
}

TEST(SpectralShift, IdenticalSpectra) {
  const auto values = eigenvalues(random_tridiagonal(20, 1));
  for (double e = -5; e <= 5; e += 0.1) EXPECT_EQ(spectral_shift(values, values, e), 0);
}

TEST(SpectralShift, PropertyInterlacingBoundedByRank) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> strength(0.01, 5.0);
  for (int rank = 1; rank <= 3; ++rank) {
    for (int trial = 0; trial < 10; ++trial) {
      PotentialSpec pot;
      for (int s = 0; s < rank; ++s) pot.perturbation.push_back({2 * s - 1, strength(rng)});
      const ModelConfig model{40 + trial};
      const auto a = eigenvalues(build_hamiltonian(model, pot, false));
      const auto b = eigenvalues(build_hamiltonian(model, pot, true));
      for (double e = -0.5; e <= 9.0; e += 0.013) {
        const int xi = spectral_shift(a, b, e);
        EXPECT_GE(xi, 0);
        EXPECT_LE(xi, rank);
      }
    }
  }
}

TEST(SpectralShift, LengthMismatch) {
  std::vector<double> a{1, 2}, b{1};
  EXPECT_THROW(spectral_shift(a, b, 0.0), ContractError);
}

}  // namespace
}  // namespace ocat
