// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "ocat/lattice_models.hpp"
#include "ocat/spectral_core.hpp"

namespace ocat {

/// M_{jk} = <phi_j, psi_k> for j, k < n: the first n eigenvectors of H
/// against the first n eigenvectors of H'.
Eigen::MatrixXd overlap_matrix(const EigenSystem& sys_h, const EigenSystem& sys_hp, int n);

struct SignedLogDet {
  double log_abs = 0.0;  ///< ln|det M|, -inf for singular M
  int sign = 1;          ///< +1 / -1, and 0 when M is singular
};

/// log|det M| from an LU factorization; never forms the raw product.
/// The empty matrix has determinant 1.
SignedLogDet overlap_determinant(const Eigen::MatrixXd& m);

/// Ascending eigenvalues a_i of M M^T.
std::vector<double> gram_spectrum(const Eigen::MatrixXd& m);

/// sum_i x_i^n for n = 1..n_max, with each x_i clamped into [0, 1].
std::vector<double> power_traces(std::span<const double> x, int n_max);

/// tr (I - M M^T)^n for n = 1..n_max, from one eigendecomposition.
std::vector<double> series_terms(const Eigen::MatrixXd& m, int n_max);

/// Truncated series for -ln|det M|^2 = sum_n tr(I - M M^T)^n / n.
struct LogOverlapSeries {
  bool applicable = false;  ///< false when some a_i < singular_threshold
  double partial_sum = 0.0;
  int terms_used = 0;
  double tail_bound = 0.0;  ///< (1-a_min)^{n+1} / (a_min (n+1))

  static constexpr double singular_threshold = 1e-14;
  static constexpr double term_cutoff = 1e-12;
  static constexpr int max_terms = 256;
};

LogOverlapSeries log_overlap_series(std::span<const double> gram_eigenvalues);

/// N - ||M||_F^2 = tr(I - M M^T).
double anderson_integral(const Eigen::MatrixXd& m);

/// G_{jk} = <phi_j, psi_k> over lambda_j <= E < mu_k.
Eigen::MatrixXd cross_gram(const EigenSystem& sys_h, const EigenSystem& sys_hp, double energy);

/// F^n = tr (1_{(-inf,E]}(H) 1_{(E,inf)}(H'))^n for n = 1..n_max.
std::vector<double> f_traces(const EigenSystem& sys_h, const EigenSystem& sys_hp, double energy,
                             int n_max);

struct EigenIdentityCheck {
  double max_abs_deviation = 0.0;
  long compared = 0;
  long skipped = 0;  ///< pairs with |mu_k - lambda_j| < 1e-8
};

/// Checks <phi_j, psi_k> (mu_k - lambda_j) = <phi_j, V psi_k> entrywise,
/// as max |<phi_j,psi_k> - <phi_j,V psi_k>/(mu_k - lambda_j)| over
/// j, k < max_index (all pairs when max_index < 0).
EigenIdentityCheck verify_eigen_identity(const EigenSystem& sys_h, const EigenSystem& sys_hp,
                                         std::span<const SiteValue> v, int max_index = -1);

struct OverlapReport {
  double energy = 0.0;
  int particles = 0;            ///< N_L(E)
  int particles_perturbed = 0;  ///< #{mu_k <= E}
  int xi = 0;                   ///< spectral shift N_L(E) - #{mu_k <= E}
  std::vector<double> overlap_singular_sq;  ///< a_i, ascending
  double log_abs_overlap = 0.0;             ///< ln|S_L(E)|
  int overlap_sign = 1;
  double anderson = 0.0;
  std::vector<double> series_terms;  ///< index n-1 holds I^n
  std::vector<double> f_terms;       ///< index n-1 holds F^n
  LogOverlapSeries series;
};

OverlapReport compute_overlap_report(const EigenSystem& sys_h, const EigenSystem& sys_hp,
                                     double energy, int n_max);

}  // namespace ocat
