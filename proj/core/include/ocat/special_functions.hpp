// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

namespace ocat {

/// Taylor coefficients of pi^-2 arcsin(pi x)^2 = sum_{n>=1} J_2n x^{2n}:
///   J_2n = pi^{2(n-1)} 2^{2n-1} ((n-1)!)^2 / (2n)!
double j2n(int n);

/// Closed form of the cyclic exponential integral
///   I_n = int_{(0,inf)^n} |u|_1 e^{-|u|_1} / prod_j (u_j + u_{j+1}) du,  u_{n+1} = u_1,
/// namely (2 pi)^{n-2} Gamma(n/2)^2 / Gamma(n), for n >= 2.
double i_closed(int n);

struct HilbertMoment {
  int n = 0;
  long truncation = 0;
  double value = 0.0;
  /// value(M) - value(M/2); empirical, not a rigorous bound.
  double truncation_bound = 0.0;
};

/// (n/2) <e0, H^{n-1} e0> with H the M x M section of the Hilbert matrix
/// 1/(j+k+1), j,k >= 0.
HilbertMoment hilbert_moment(int n, long truncation);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

/// Monte-Carlo estimate of I_n from the open-chain form
///   I_n = (n/2) E[ prod_{j<n} 1/(u_j + u_{j+1}) ],  u_j iid unit exponential.
/// The integrand is homogeneous of degree 1-n, so the radial part
/// |u|_1 ~ Gamma(n) is integrated exactly; the simplex direction is
/// importance-sampled from Dirichlet(1/2, ..., 1/2), which keeps the
/// estimator variance finite. Deterministic for a fixed seed.
McEstimate mc_in(int n, long samples, std::uint64_t seed);

struct SeriesPartial {
  double partial_sum = 0.0;
  double tail_bound = 0.0;      ///< rigorous bound on the omitted terms
  double rounding_bound = 0.0;  ///< floating-point summation error bound
};

/// sum_{n<=n_max} J_2n x^{2n} for |x| <= 1/pi with bounds such that
///   partial - rounding <= pi^-2 arcsin(pi x)^2 <= partial + tail + rounding.
SeriesPartial arcsin_sq_series(double x, int n_max);

struct FeynmanSchwingerCheck {
  double lhs = 0.0;
  double mc_rhs = 0.0;
  double std_error = 0.0;
};

/// 1/(x_1...x_n) against a Monte-Carlo evaluation of
///   int_0^inf dt t^{n-1} int du |u|_1 e^{-|u|_1} e^{-t u.x}.
/// The t integral is Gamma(n)/(u.x)^n; u = R xi with R ~ Gamma(n+1) and xi
/// uniform on the simplex, and E[R^{-n}] = 1/n! is applied exactly.
FeynmanSchwingerCheck feynman_schwinger_check(std::span<const double> x, long samples,
                                              std::uint64_t seed);

}  // namespace ocat
