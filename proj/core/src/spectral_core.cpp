// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include "ocat/spectral_core.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "ocat/errors.hpp"

namespace ocat {

void TridiagonalHamiltonian::validate() const {
  if (diag.empty()) {
    throw ContractError("tridiagonal matrix must have order >= 1");
  }
  if (offdiag.size() + 1 != diag.size()) {
    throw ContractError("tridiagonal matrix: offdiag has " + std::to_string(offdiag.size()) +
                        " entries, expected " + std::to_string(diag.size() - 1));
  }
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(diag.begin(), diag.end(), finite) ||
      !std::all_of(offdiag.begin(), offdiag.end(), finite)) {
    throw ContractError("tridiagonal matrix has non-finite entries");
  }
}

Eigen::MatrixXd TridiagonalHamiltonian::dense() const {
  const auto n = static_cast<Eigen::Index>(order());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    if (i + 1 < n) {
      m(i, i + 1) = offdiag[i];
      m(i + 1, i) = offdiag[i];
    }
  }
  return m;
}

Eigen::VectorXd TridiagonalHamiltonian::apply(const Eigen::VectorXd& x) const {
  const auto n = static_cast<Eigen::Index>(order());
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += offdiag[i - 1] * x[i - 1];
    if (i + 1 < n) s += offdiag[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

namespace {

void fix_signs(Eigen::MatrixXd& z, SignConvention signs) {
  const Eigen::Index n = z.rows();
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    Eigen::Index pivot = 0;
    if (signs == SignConvention::largest_component_positive) {
      double best = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        // strict comparison: the lowest index wins ties
        if (std::abs(z(i, j)) > best + 1e-12) {
          best = std::abs(z(i, j));
          pivot = i;
        }
      }
    } else {
      while (pivot + 1 < n && std::abs(z(pivot, j)) < 1e-8) ++pivot;
    }
    if (z(pivot, j) < 0.0) z.col(j) = -z.col(j);
  }
}

}  // namespace

EigenSystem diagonalize(const TridiagonalHamiltonian& h, SignConvention signs) {
  h.validate();
  const auto n = static_cast<lapack_int>(h.order());

  EigenSystem sys;
  sys.values.assign(h.order(), 0.0);
  sys.vectors.resize(n, n);
  if (n == 1) {
    sys.values[0] = h.diag[0];
    sys.vectors(0, 0) = 1.0;
    return sys;
  }

  std::vector<double> d = h.diag;
  std::vector<double> e(h.order(), 0.0);
  std::copy(h.offdiag.begin(), h.offdiag.end(), e.begin());
  std::vector<lapack_int> isuppz(2 * h.order());
  lapack_int found = 0;

  // MRRR via dstevr; Z comes back column-major, matching Eigen's layout.
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0, 0.0,
                     &found, sys.values.data(), sys.vectors.data(), n, isuppz.data());
  if (info != 0 || found != n) {
    throw NumericError("tridiagonal eigensolver failed for order " + std::to_string(n) +
                       " at index " + std::to_string(info) + " (" + std::to_string(found) +
                       " eigenpairs found)");
  }
  fix_signs(sys.vectors, signs);
  return sys;
}

std::vector<double> eigenvalues(const TridiagonalHamiltonian& h) {
  h.validate();
  std::vector<double> d = h.diag;
  std::vector<double> e = h.offdiag;
  if (d.size() > 1) {
    const lapack_int info = LAPACKE_dsterf(static_cast<lapack_int>(d.size()), d.data(), e.data());
    if (info != 0) {
      throw NumericError("tridiagonal eigenvalue solve failed for order " +
                         std::to_string(d.size()) + " at index " + std::to_string(info));
    }
  }
  return d;
}

EigenDiagnostics diagnose(const TridiagonalHamiltonian& h, const EigenSystem& sys) {
  EigenDiagnostics out;
  const auto n = static_cast<Eigen::Index>(sys.order());
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXd v = sys.vectors.col(j);
    const double res = (h.apply(v) - sys.values[j] * v).norm() / (1.0 + std::abs(sys.values[j]));
    out.max_scaled_residual = std::max(out.max_scaled_residual, res);
    if (j > 0 && sys.values[j] < sys.values[j - 1]) out.ascending = false;
  }
  const Eigen::MatrixXd gram =
      sys.vectors.transpose() * sys.vectors - Eigen::MatrixXd::Identity(n, n);
  out.max_gram_deviation = gram.cwiseAbs().maxCoeff();
  return out;
}

int counting_function(std::span<const double> values, double energy) {
  return static_cast<int>(std::upper_bound(values.begin(), values.end(), energy) - values.begin());
}

int spectral_shift(std::span<const double> values_h, std::span<const double> values_hp,
                   double energy) {
  if (values_h.size() != values_hp.size()) {
    throw ContractError("spectral_shift: spectra have different lengths (" +
                        std::to_string(values_h.size()) + " vs " +
                        std::to_string(values_hp.size()) + ")");
  }
  return counting_function(values_h, energy) - counting_function(values_hp, energy);
}

}  // namespace ocat
