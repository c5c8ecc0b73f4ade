// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace ocat {

/// Real symmetric tridiagonal matrix: `diag` has L entries, `offdiag` L-1.
struct TridiagonalHamiltonian {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t order() const { return diag.size(); }

  /// Throws ContractError on size mismatch or non-finite entries.
  void validate() const;

  /// Dense copy, mainly for tests and residual checks.
  Eigen::MatrixXd dense() const;

  /// y = H x.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

/// Sign fixing applied to each eigenvector after the solve. Both choices
/// are deterministic; they only differ by per-vector signs.
enum class SignConvention {
  largest_component_positive,
  first_component_positive,
};

/// Ascending eigenvalues with matching orthonormal eigenvectors stored as
/// the columns of `vectors`.
struct EigenSystem {
  std::vector<double> values;
  Eigen::MatrixXd vectors;

  std::size_t order() const { return values.size(); }
};

EigenSystem diagonalize(const TridiagonalHamiltonian& h,
                        SignConvention signs = SignConvention::largest_component_positive);

/// Ascending eigenvalues only.
std::vector<double> eigenvalues(const TridiagonalHamiltonian& h);

struct EigenDiagnostics {
  /// max_j |H v_j - lambda_j v_j| / (1 + |lambda_j|)
  double max_scaled_residual = 0.0;
  /// max_{ij} |(V^T V - I)_{ij}|
  double max_gram_deviation = 0.0;
  bool ascending = true;
};

EigenDiagnostics diagnose(const TridiagonalHamiltonian& h, const EigenSystem& sys);

/// #{ j : values[j] <= E }. `values` must be ascending.
int counting_function(std::span<const double> values, double energy);

/// N_H(E) - N_{H'}(E); non-negative when H' >= H.
int spectral_shift(std::span<const double> values_h, std::span<const double> values_hp,
                   double energy);

}  // namespace ocat
