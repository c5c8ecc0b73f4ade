// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ocat/errors.hpp"
#include "ocat/lattice_models.hpp"
#include "ocat/spectral_core.hpp"

namespace ocat {
namespace {

PotentialSpec absolute_sites(std::vector<PerturbationSite> v) {
  PotentialSpec pot;
  pot.anchor = Anchor::absolute;
  pot.perturbation = std::move(v);
  return pot;
}

TEST(BuildHamiltonian, FreeChainOfThree) {
  const auto h = build_hamiltonian(ModelConfig{3}, PotentialSpec{}, true);
  EXPECT_EQ(h.diag, (std::vector<double>{2, 2, 2}));
  EXPECT_EQ(h.offdiag, (std::vector<double>{-1, -1}));
}

TEST(BuildHamiltonian, AdditivePerturbation) {
  const auto pot = absolute_sites({{2, 2.0}});
  EXPECT_EQ(build_hamiltonian(ModelConfig{3}, pot, true).diag, (std::vector<double>{2, 4, 2}));
  EXPECT_EQ(build_hamiltonian(ModelConfig{3}, pot, false).diag, (std::vector<double>{2, 2, 2}));
}

TEST(BuildHamiltonian, CenterAnchor) {
  EXPECT_EQ(center_site(3), 2);
  EXPECT_EQ(center_site(100), 51);
  PotentialSpec pot;
  pot.perturbation = {{0, 1.5}, {-1, 0.5}};
  const auto h = build_hamiltonian(ModelConfig{6}, pot, true);
  EXPECT_EQ(h.diag, (std::vector<double>{2, 2, 2.5, 3.5, 2, 2}));
}

TEST(BuildHamiltonian, PeriodicBackground) {
  PotentialSpec pot;
  pot.background = Background::parse(" periodic(0.5, 1) ");
  const auto h = build_hamiltonian(ModelConfig{5}, pot, false);
  EXPECT_EQ(h.diag, (std::vector<double>{2.5, 3, 2.5, 3, 2.5}));
  EXPECT_EQ(pot.background.describe(), "periodic(0.5,1)");
}

TEST(BuildHamiltonian, ExplicitBackgroundMustMatchLength) {
  PotentialSpec pot;
  pot.background = Background::explicit_sites({1, 2, 3});
  EXPECT_EQ(build_hamiltonian(ModelConfig{3}, pot, false).diag, (std::vector<double>{3, 4, 5}));
  EXPECT_THROW(build_hamiltonian(ModelConfig{4}, pot, false), ConfigError);
}

TEST(BuildHamiltonian, Errors) {
  EXPECT_THROW(build_hamiltonian(ModelConfig{1}, PotentialSpec{}, false), ConfigError);
  EXPECT_THROW(build_hamiltonian(ModelConfig{3}, absolute_sites({{4, 1.0}}), true), ConfigError);
  EXPECT_THROW(build_hamiltonian(ModelConfig{3}, absolute_sites({{0, 1.0}}), true), ConfigError);
  EXPECT_THROW(build_hamiltonian(ModelConfig{3}, absolute_sites({{1, -0.1}}), true),
               ValidationError);
  EXPECT_THROW(
      build_hamiltonian(ModelConfig{3},
                        absolute_sites({{1, std::numeric_limits<double>::quiet_NaN()}}), true),
      ValidationError);
  EXPECT_THROW(build_hamiltonian(ModelConfig{3}, absolute_sites({{1, 1.0}, {1, 2.0}}), true),
               ConfigError);
  // V is out of range even when only H is requested.
  EXPECT_THROW(build_hamiltonian(ModelConfig{3}, absolute_sites({{9, 1.0}}), false), ConfigError);
}

TEST(Background, ParseErrors) {
  EXPECT_TRUE(Background::parse("zero").is_zero());
  EXPECT_THROW(Background::parse("random"), ConfigError);
  EXPECT_THROW(Background::parse("periodic()"), ConfigError);
  EXPECT_THROW(Background::parse("periodic(1,x)"), ConfigError);
}

TEST(BuildHamiltonian, PropertyFreeSpectrumInBand) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int length = std::uniform_int_distribution<int>(2, 120)(rng);
    const auto values = eigenvalues(build_hamiltonian(ModelConfig{length}, PotentialSpec{}, false));
    EXPECT_GT(values.front(), 0.0);
    EXPECT_LT(values.back(), 4.0);
  }
}

TEST(BuildHamiltonian, PropertyCompactSupportIndependentOfLength) {
  PotentialSpec pot;
  pot.perturbation = {{-2, 1.0}, {0, 3.0}, {1, 0.25}};
  for (int length : {8, 33, 200, 1001}) {
    const auto v = perturbation_on_chain(ModelConfig{length}, pot);
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v.back().index - v.front().index, 3);
    EXPECT_EQ(v[1].index, center_site(length) - 1);
  }
}

}  // namespace
}  // namespace ocat
