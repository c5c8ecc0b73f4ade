// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "ocat/lattice_models.hpp"

namespace ocat {

using cplx = std::complex<double>;

/// Wavenumber k in (0, pi) with E = 2 - 2 cos k. Throws DomainError
/// outside the open band or when |sin k| < 1e-8.
double wavenumber(double energy);

/// Maps plane-wave coefficients (A, B) of A e^{ikn} + B e^{-ikn} to the left
/// of a single site at `position` with strength `value` onto those to its
/// right. Unit determinant.
Eigen::Matrix2cd site_transfer(int position, double value, double k);

/// Product of site transfers across the support of V, left to right.
/// Requires a zero background. Perturbation sites are used as positions.
Eigen::Matrix2cd transfer_matrix(const PotentialSpec& pot, double energy);

/// Stationary scattering data of the pair (H, H + V) at one energy.
///
/// The S-matrix acts on the two-channel energy shell (right-moving,
/// left-moving) and reads [[t, r'], [r, t]]. Its eigenvalues are
/// e^{2 i delta_j}, with delta_j in (-pi/2, pi/2] sorted ascending.
struct ScatteringAtEnergy {
  double energy = 0.0;
  double k = 0.0;
  cplx r;        ///< reflection, incidence from the left
  cplx t;        ///< transmission (same from both sides)
  cplx r_right;  ///< reflection, incidence from the right
  std::array<cplx, 2> s_eigenvalues{};
  std::array<double, 2> eigenphases{};
  std::array<double, 2> t_halves{};  ///< |sin delta_j| = |T eigenvalue| / 2
  double gamma = 0.0;
  double gamma1 = 0.0;
  std::vector<double> eta;  ///< eta[n-1] = pi^{-2n} sum_j |sin delta_j|^{2n}
};

/// Fills the amplitudes, S eigenvalues, eigenphases and t_halves.
ScatteringAtEnergy s_matrix(const PotentialSpec& pot, double energy);

struct Exponents {
  double gamma = 0.0;
  double gamma1 = 0.0;
  std::vector<double> eta;
};

/// gamma = pi^-2 sum_j arcsin(|sin delta_j|)^2,
/// gamma1 = pi^-2 sum_j sin^2 delta_j, eta as in ScatteringAtEnergy.
Exponents exponents(const ScatteringAtEnergy& s, int n_max);

/// s_matrix() followed by exponents(), stored in the result.
ScatteringAtEnergy scatter(const PotentialSpec& pot, double energy, int n_max);

/// Kernel of sqrt(V) delta(-Delta - E) sqrt(V) for the free continuum
/// Laplacian in dimension x.size() (1 or 3):
///   E^{d/2-1} / (2 (2 pi)^d) sqrt(V(x) V(y)) int_{S^{d-1}} e^{i sqrt(E) xi.(x-y)} dS(xi).
double birman_kernel_free(double energy, std::span<const double> x, std::span<const double> y,
                          double v_x, double v_y);

/// Matrix of birman_kernel_free over all pairs of sample points.
Eigen::MatrixXd birman_gram(double energy, const std::vector<std::vector<double>>& points,
                            std::span<const double> v_values);

struct PositivityReport {
  bool degenerate = false;    ///< V = 0: gamma vanishes identically
  bool all_positive = false;  ///< max_j |sin delta_j| > 0 and gamma > 0 everywhere
  double min_gamma = 0.0;
  double argmin_energy = 0.0;
  std::vector<double> energies;
  std::vector<double> gammas;
};

PositivityReport positivity_check(const PotentialSpec& pot, std::span<const double> energies);

/// `count` equally spaced energies strictly inside (lo, hi).
std::vector<double> open_grid(double lo, double hi, int count);

}  // namespace ocat
