// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include "ocat/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ocat/errors.hpp"

namespace ocat {

using std::numbers::pi;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Welford running mean / variance.
class RunningStats {
 public:
  void add(double x) {
    ++count_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    m2_ += d * (x - mean_);
  }
  double mean() const { return mean_; }
  double std_error() const {
    if (count_ < 2) return 0.0;
    return std::sqrt(m2_ / static_cast<double>(count_ - 1) / static_cast<double>(count_));
  }

 private:
  long count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace

double j2n(int n) {
  if (n < 1) throw DomainError("J_2n requires n >= 1, got " + std::to_string(n));
  if (n <= 10) {
    const double f = factorial(n - 1);
    return std::pow(pi, 2.0 * (n - 1)) * std::ldexp(1.0, 2 * n - 1) * f * f / factorial(2 * n);
  }
  return std::exp(2.0 * (n - 1) * std::log(pi) + (2.0 * n - 1.0) * std::log(2.0) +
                  2.0 * std::lgamma(static_cast<double>(n)) -
                  std::lgamma(2.0 * n + 1.0));
}

double i_closed(int n) {
  if (n < 2) throw DomainError("I_n closed form requires n >= 2, got " + std::to_string(n));
  const double half = 0.5 * n;
  if (n <= 20) {
    const double g = std::tgamma(half);
    return std::pow(2.0 * pi, n - 2) * g * g / std::tgamma(static_cast<double>(n));
  }
  return std::exp((n - 2) * std::log(2.0 * pi) + 2.0 * std::lgamma(half) -
                  std::lgamma(static_cast<double>(n)));
}

namespace {

double hilbert_moment_value(int n, long m) {
  // H_{jk} depends on j+k only.
  std::vector<double> recip(static_cast<std::size_t>(2 * m));
  for (long s = 0; s < 2 * m; ++s) recip[s] = 1.0 / static_cast<double>(s + 1);

  // <e0, H^{n-1} e0> = <H^a e0, H^b e0> with a + b = n - 1.
  const int a = (n - 1) / 2;
  const int b = n - 1 - a;
  std::vector<std::vector<double>> powers;
  powers.emplace_back(static_cast<std::size_t>(m), 0.0);
  powers[0][0] = 1.0;
  for (int p = 1; p <= b; ++p) {
    const auto& prev = powers.back();
    std::vector<double> next(static_cast<std::size_t>(m), 0.0);
    for (long j = 0; j < m; ++j) {
      const double* row = recip.data() + j;
      double s = 0.0;
      for (long k = 0; k < m; ++k) s += row[k] * prev[k];
      next[j] = s;
    }
    powers.push_back(std::move(next));
  }
  double dot = 0.0;
  for (long j = 0; j < m; ++j) dot += powers[a][j] * powers[b][j];
  return 0.5 * n * dot;
}

}  // namespace

HilbertMoment hilbert_moment(int n, long truncation) {
  if (n < 2) throw DomainError("Hilbert moment requires n >= 2, got " + std::to_string(n));
  if (truncation < 1) throw ContractError("Hilbert truncation must be >= 1");
  HilbertMoment h;
  h.n = n;
  h.truncation = truncation;
  h.value = hilbert_moment_value(n, truncation);
  if (truncation >= 2) h.truncation_bound = h.value - hilbert_moment_value(n, truncation / 2);
  return h;
}

McEstimate mc_in(int n, long samples, std::uint64_t seed) {
  if (n < 2) throw DomainError("mc_in requires n >= 2, got " + std::to_string(n));
  if (samples < 10000) throw ContractError("mc_in requires at least 1e4 samples");

  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> half_gamma(0.5, 1.0);
  // (n/2) * Gamma(1/2)^n / Gamma(n/2): radial factor and Dirichlet(1/2) normalization.
  const double scale = 0.5 * n * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);

  std::vector<double> xi(static_cast<std::size_t>(n));
  RunningStats stats;
  for (long s = 0; s < samples; ++s) {
    double total = 0.0;
    for (double& v : xi) {
      v = half_gamma(rng);
      total += v;
    }
    double f = scale;
    for (int j = 0; j < n; ++j) {
      xi[j] /= total;
      f *= std::sqrt(xi[j]);
    }
    for (int j = 0; j + 1 < n; ++j) f /= xi[j] + xi[j + 1];
    stats.add(f);
  }
  return {stats.mean(), stats.std_error(), samples};
}

SeriesPartial arcsin_sq_series(double x, int n_max) {
  if (n_max < 1) throw ContractError("arcsin_sq_series requires n_max >= 1");
  const double y = pi * std::abs(x);
  if (!(y <= 1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
    throw DomainError("arcsin^2 series needs |x| <= 1/pi");
  }
  const double y2 = std::min(y * y, 1.0);

  SeriesPartial out;
  double term = x * x;  // J_2 x^2
  for (int n = 1; n <= n_max; ++n) {
    out.partial_sum += term;
    // J_{2n+2} / J_{2n} * x^2 = y^2 n^2 / ((n+1)(n+1/2))
    term *= y2 * n * n / ((n + 1.0) * (n + 0.5));
  }
  // term now holds c_{N+1}. Ratios satisfy c_{m+1}/c_m <= y^2 (m/(m+1))^{3/2},
  // giving a geometric bound for y < 1 and a power-law bound up to y = 1.
  const double power_law = term * (1.0 + 2.0 * (n_max + 1));
  out.tail_bound = y2 < 1.0 ? std::min(power_law, term / (1.0 - y2)) : power_law;
  out.rounding_bound =
      8.0 * (n_max + 1) * std::numeric_limits<double>::epsilon() * out.partial_sum;
  return out;
}

FeynmanSchwingerCheck feynman_schwinger_check(std::span<const double> x, long samples,
                                              std::uint64_t seed) {
  if (x.empty()) throw DomainError("Feynman-Schwinger check needs at least one x_j");
  for (double v : x) {
    if (!(v > 0.0)) throw DomainError("Feynman-Schwinger check needs x_j > 0");
  }
  if (samples < 2) throw ContractError("Feynman-Schwinger check needs at least 2 samples");

  FeynmanSchwingerCheck out;
  out.lhs = 1.0;
  for (double v : x) out.lhs /= v;

  const int n = static_cast<int>(x.size());
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> unit_exp(1.0);
  std::vector<double> e(x.size());
  RunningStats stats;
  for (long s = 0; s < samples; ++s) {
    double total = 0.0;
    for (double& v : e) {
      v = unit_exp(rng);
      total += v;
    }
    double dot = 0.0;
    for (int j = 0; j < n; ++j) dot += e[j] / total * x[j];
    // n * Gamma(n) * E[R^{-n}] = n! / n! = 1, leaving (xi.x)^{-n}.
    stats.add(std::pow(dot, -n));
  }
  out.mc_rhs = stats.mean();
  out.std_error = stats.std_error();
  return out;
}

}  // namespace ocat
