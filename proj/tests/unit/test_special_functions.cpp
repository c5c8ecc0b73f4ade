// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ocat/errors.hpp"
#include "ocat/special_functions.hpp"

namespace ocat {
namespace {

using std::numbers::pi;

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

TEST(J2n, SmallOrders) {
  EXPECT_EQ(j2n(1), 1.0);
  EXPECT_LT(rel(j2n(2), pi * pi / 3), 1e-15);
  EXPECT_LT(rel(j2n(3), 8 * std::pow(pi, 4) / 45), 1e-15);
  EXPECT_THROW(j2n(0), DomainError);
}

TEST(J2n, PropertyMatchesTaylorRecurrence) {
  // Taylor coefficients of arcsin(z)^2 = sum_n 2^{2n-1} ((n-1)!)^2 / (2n)! z^{2n}, so with
  // z = pi x: J_{2n+2} / J_{2n} = pi^2 * 2n^2 / ((n+1)(2n+1)).
  double j = 1.0;
  for (int n = 1; n <= 40; ++n) {
    EXPECT_LT(rel(j2n(n), j), 1e-12) << "n=" << n;
    EXPECT_GT(j2n(n), 0.0);
    j *= pi * pi * 2.0 * n * n / ((n + 1.0) * (2.0 * n + 1.0));
  }
}

TEST(IClosed, SmallOrders) {
  EXPECT_LT(rel(i_closed(2), 1.0), 1e-15);
  EXPECT_LT(rel(i_closed(3), pi * pi / 4), 1e-15);
  EXPECT_LT(rel(i_closed(4), 2 * pi * pi / 3), 1e-15);
  EXPECT_LT(rel(i_closed(4), 2 * j2n(2)), 1e-15);
  EXPECT_THROW(i_closed(1), DomainError);
}

TEST(IClosed, PropertyEvenOrdersAreNTimesJ) {
  for (int n = 1; n <= 30; ++n) EXPECT_LT(rel(i_closed(2 * n), n * j2n(n)), 1e-12) << "n=" << n;
}

TEST(IClosed, PropertyGammaRecurrence) {
  // I_{n+2} / I_n = (2 pi)^2 (n/2)^2 / (n (n+1))
  for (int n = 2; n <= 36; ++n) {
    const double ratio = 4 * pi * pi * 0.25 * n * n / (n * (n + 1.0));
    EXPECT_LT(rel(i_closed(n + 2), ratio * i_closed(n)), 1e-12) << "n=" << n;
  }
}

TEST(HilbertMoment, OrderTwoIsOne) {
  for (long m : {1L, 2L, 17L, 500L}) EXPECT_EQ(hilbert_moment(2, m).value, 1.0);
}

TEST(HilbertMoment, OrderThreeIsBaselSum) {
  for (long m : {1L, 10L, 1000L}) {
    double basel = 0.0;
    for (long k = 1; k <= m; ++k) basel += 1.0 / (double(k) * double(k));
    EXPECT_NEAR(hilbert_moment(3, m).value, 1.5 * basel, 1e-13);
  }
}

TEST(HilbertMoment, PropertyMonotoneAndBelowClosedForm) {
  for (int n = 2; n <= 7; ++n) {
    double prev = 0.0;
    for (long m : {1L, 4L, 16L, 64L, 256L, 1024L}) {
      const auto h = hilbert_moment(n, m);
      EXPECT_GE(h.value, prev - 1e-15);
      EXPECT_LE(h.value, i_closed(n) * (1 + 1e-14));
      EXPECT_GE(h.truncation_bound, -1e-15);
      prev = h.value;
    }
  }
}

TEST(HilbertMoment, DenseMatrixOracle) {
  const long m = 40;
  Eigen::MatrixXd h(m, m);
  for (long j = 0; j < m; ++j) {
    for (long k = 0; k < m; ++k) h(j, k) = 1.0 / (j + k + 1.0);
  }
  Eigen::VectorXd v = h.col(0);  // H e0
  for (int n = 2; n <= 6; ++n) {
    EXPECT_NEAR(hilbert_moment(n, m).value, 0.5 * n * v(0), 1e-12);
    v = h * v;
  }
}

TEST(HilbertMoment, Errors) {
  EXPECT_THROW(hilbert_moment(1, 10), DomainError);
  EXPECT_THROW(hilbert_moment(3, 0), ContractError);
}

TEST(McIn, FixedSeedIsBitIdentical) {
  const auto a = mc_in(4, 20000, 99);
  const auto b = mc_in(4, 20000, 99);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.estimate, mc_in(4, 20000, 100).estimate);
}

TEST(McIn, MillionSamples) {
  for (int n : {2, 4}) {
    const auto e = mc_in(n, 1000000, 7);
    EXPECT_EQ(e.samples, 1000000);
    EXPECT_LE(std::abs(e.estimate - i_closed(n)), 3 * e.std_error) << "n=" << n;
    EXPECT_LT(e.std_error / i_closed(n), 5e-3);
  }
}

TEST(McIn, PropertyErrorBarCoverage) {
  for (int n = 2; n <= 5; ++n) {
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const auto e = mc_in(n, 20000, seed);
      covered += std::abs(e.estimate - i_closed(n)) <= 3 * e.std_error;
    }
    EXPECT_GE(covered, 28) << "n=" << n;
  }
}

TEST(McIn, Errors) {
  EXPECT_THROW(mc_in(1, 20000, 1), DomainError);
  EXPECT_THROW(mc_in(3, 9999, 1), ContractError);
}

TEST(ArcsinSeries, Endpoints) {
  EXPECT_EQ(arcsin_sq_series(0.0, 10).partial_sum, 0.0);
  EXPECT_EQ(arcsin_sq_series(0.0, 10).tail_bound, 0.0);
  const auto half = arcsin_sq_series(1 / (2 * pi), 60);
  EXPECT_NEAR(half.partial_sum, 1.0 / 36, 1e-15);
  const auto full = arcsin_sq_series(1 / pi, 200000);
  EXPECT_LT(std::abs(full.partial_sum - 0.25), 2e-3);
  EXPECT_LE(full.partial_sum, 0.25);
  EXPECT_GE(full.partial_sum + full.tail_bound + full.rounding_bound, 0.25);
}

TEST(ArcsinSeries, PropertyBoundsContainTruth) {
  for (double x : {-0.31, -0.1, 0.05, 1 / (2 * pi), 0.25, 0.3, 0.318, 1 / pi}) {
    const double y = std::min(pi * std::abs(x), 1.0);
    const double truth = std::pow(std::asin(y), 2) / (pi * pi);
    for (int order = 1; order <= 200; ++order) {
      const auto s = arcsin_sq_series(x, order);
      EXPECT_LE(s.partial_sum - s.rounding_bound, truth) << "x=" << x << " order=" << order;
      EXPECT_GE(s.partial_sum + s.tail_bound + s.rounding_bound, truth)
          << "x=" << x << " order=" << order;
    }
  }
}

TEST(ArcsinSeries, Errors) {
  EXPECT_THROW(arcsin_sq_series(0.4, 5), DomainError);
  EXPECT_THROW(arcsin_sq_series(0.1, 0), ContractError);
}

TEST(FeynmanSchwinger, OneDimensionIsExact) {
  const std::vector<double> x{2.0};
  const auto c = feynman_schwinger_check(x, 1000, 1);
  EXPECT_EQ(c.lhs, 0.5);
  EXPECT_NEAR(c.mc_rhs, 0.5, 1e-15);
}

TEST(FeynmanSchwinger, MonteCarlo) {
  const std::vector<double> a{1.0, 2.0}, b{1.0, 1.0, 1.0}, c{0.5, 1.5, 3.0, 1.0};
  for (const auto* x : {&a, &b, &c}) {
    const auto r = feynman_schwinger_check(*x, 1000000, 3);
    EXPECT_LE(std::abs(r.mc_rhs - r.lhs), 3 * r.std_error + 1e-12 * r.lhs);
  }
  EXPECT_EQ(feynman_schwinger_check(a, 1000000, 3).lhs, 0.5);
}

TEST(FeynmanSchwinger, Errors) {
  const std::vector<double> bad{1.0, 0.0}, empty;
  EXPECT_THROW(feynman_schwinger_check(bad, 100, 1), DomainError);
  EXPECT_THROW(feynman_schwinger_check(empty, 100, 1), DomainError);
}

}  // namespace
}  // namespace ocat
