// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include "ocat/overlap_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ocat/errors.hpp"

namespace ocat {

namespace {

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& s) {
  if (s.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericError("symmetric eigensolver failed on Gram matrix of order " +
                       std::to_string(s.rows()));
  }
  const Eigen::VectorXd& w = es.eigenvalues();
  return {w.data(), w.data() + w.size()};
}

}  // namespace

Eigen::MatrixXd overlap_matrix(const EigenSystem& sys_h, const EigenSystem& sys_hp, int n) {
  if (n < 0 || n > static_cast<int>(sys_h.order()) || n > static_cast<int>(sys_hp.order())) {
    throw ContractError("overlap_matrix: N = " + std::to_string(n) + " out of range");
  }
  if (sys_h.vectors.rows() != sys_hp.vectors.rows()) {
    throw ContractError("overlap_matrix: eigensystems live in different dimensions");
  }
  Eigen::MatrixXd m(n, n);
  m.noalias() = sys_h.vectors.leftCols(n).transpose() * sys_hp.vectors.leftCols(n);
  return m;
}

SignedLogDet overlap_determinant(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ContractError("overlap_determinant: matrix is not square");
  if (m.rows() == 0) return {0.0, 1};
  if (!m.allFinite()) throw ContractError("overlap_determinant: matrix has non-finite entries");

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const Eigen::MatrixXd& packed = lu.matrixLU();
  SignedLogDet out;
  out.sign = static_cast<int>(lu.permutationP().determinant());
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double u = packed(i, i);
    if (u == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    if (u < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(u));
  }
  return out;
}

std::vector<double> gram_spectrum(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return {};
  Eigen::MatrixXd g(m.rows(), m.rows());
  g.noalias() = m * m.transpose();
  return symmetric_eigenvalues(g);
}

std::vector<double> power_traces(std::span<const double> x, int n_max) {
  if (n_max < 1) throw ContractError("n_max must be >= 1");
  std::vector<double> base(x.begin(), x.end());
  for (double& b : base) b = std::clamp(b, 0.0, 1.0);
  std::vector<double> power = base;
  std::vector<double> out(static_cast<std::size_t>(n_max), 0.0);
  for (int n = 0; n < n_max; ++n) {
    double s = 0.0;
    for (std::size_t i = 0; i < power.size(); ++i) {
      s += power[i];
      power[i] *= base[i];
    }
    out[n] = s;
  }
  return out;
}

std::vector<double> series_terms(const Eigen::MatrixXd& m, int n_max) {
  auto a = gram_spectrum(m);
  for (double& x : a) x = 1.0 - x;
  return power_traces(a, n_max);
}

LogOverlapSeries log_overlap_series(std::span<const double> gram_eigenvalues) {
  LogOverlapSeries out;
  if (gram_eigenvalues.empty()) {
    out.applicable = true;
    return out;
  }
  const double a_min = *std::min_element(gram_eigenvalues.begin(), gram_eigenvalues.end());
  if (a_min < LogOverlapSeries::singular_threshold) return out;
  out.applicable = true;

  std::vector<double> base(gram_eigenvalues.size());
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = std::clamp(1.0 - gram_eigenvalues[i], 0.0, 1.0);
  std::vector<double> power = base;

  double last_term = 0.0;
  for (int n = 1; n <= LogOverlapSeries::max_terms; ++n) {
    double t = 0.0;
    for (std::size_t i = 0; i < power.size(); ++i) {
      t += power[i];
      power[i] *= base[i];
    }
    out.partial_sum += t / n;
    out.terms_used = n;
    last_term = t;
    if (t / n < LogOverlapSeries::term_cutoff) break;
  }
  // t_{m+1} <= q t_m with q = 1 - a_min, so sum_{m>n} t_m/m <= t_n q / (a_min (n+1)).
  const double q = std::clamp(1.0 - a_min, 0.0, 1.0);
  out.tail_bound = last_term * q / (a_min * (out.terms_used + 1));
  return out;
}

double anderson_integral(const Eigen::MatrixXd& m) {
  return static_cast<double>(m.rows()) - m.squaredNorm();
}

Eigen::MatrixXd cross_gram(const EigenSystem& sys_h, const EigenSystem& sys_hp, double energy) {
  if (sys_h.order() != sys_hp.order()) {
    throw ContractError("cross_gram: eigensystems have different orders");
  }
  const int n = counting_function(sys_h.values, energy);
  const int np = counting_function(sys_hp.values, energy);
  const int k = static_cast<int>(sys_hp.order()) - np;
  Eigen::MatrixXd g(n, k);
  if (n > 0 && k > 0) {
    g.noalias() = sys_h.vectors.leftCols(n).transpose() * sys_hp.vectors.rightCols(k);
  }
  return g;
}

std::vector<double> f_traces(const EigenSystem& sys_h, const EigenSystem& sys_hp, double energy,
                             int n_max) {
  if (n_max < 1) throw ContractError("n_max must be >= 1");
  const Eigen::MatrixXd g = cross_gram(sys_h, sys_hp, energy);
  if (g.size() == 0) return std::vector<double>(static_cast<std::size_t>(n_max), 0.0);

  // Nonzero spectra of G G^T and G^T G agree; use the smaller side.
  Eigen::MatrixXd s;
  if (g.rows() <= g.cols()) {
    s.noalias() = g * g.transpose();
  } else {
    s.noalias() = g.transpose() * g;
  }
  return power_traces(symmetric_eigenvalues(s), n_max);
}

EigenIdentityCheck verify_eigen_identity(const EigenSystem& sys_h, const EigenSystem& sys_hp,
                                         std::span<const SiteValue> v, int max_index) {
  if (sys_h.order() != sys_hp.order()) {
    throw ContractError("verify_eigen_identity: eigensystems have different orders");
  }
  const int order = static_cast<int>(sys_h.order());
  const int lim = max_index < 0 ? order : std::min(max_index, order);

  Eigen::MatrixXd direct(lim, lim);
  direct.noalias() = sys_h.vectors.leftCols(lim).transpose() * sys_hp.vectors.leftCols(lim);

  // <phi_j, V psi_k> only touches the support of V.
  Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(lim, lim);
  for (const auto& s : v) {
    weighted.noalias() += s.value * sys_h.vectors.row(s.index).head(lim).transpose() *
                          sys_hp.vectors.row(s.index).head(lim);
  }

  EigenIdentityCheck out;
  for (int k = 0; k < lim; ++k) {
    for (int j = 0; j < lim; ++j) {
      const double gap = sys_hp.values[k] - sys_h.values[j];
      if (std::abs(gap) < 1e-8) {
        ++out.skipped;
        continue;
      }
      ++out.compared;
      out.max_abs_deviation =
          std::max(out.max_abs_deviation, std::abs(direct(j, k) - weighted(j, k) / gap));
    }
  }
  return out;
}

OverlapReport compute_overlap_report(const EigenSystem& sys_h, const EigenSystem& sys_hp,
                                     double energy, int n_max) {
  if (n_max < 1) throw ContractError("n_max must be >= 1");
  OverlapReport r;
  r.energy = energy;
  r.particles = counting_function(sys_h.values, energy);
  r.particles_perturbed = counting_function(sys_hp.values, energy);
  r.xi = spectral_shift(sys_h.values, sys_hp.values, energy);

  const Eigen::MatrixXd m = overlap_matrix(sys_h, sys_hp, r.particles);
  const SignedLogDet det = overlap_determinant(m);
  r.overlap_singular_sq = gram_spectrum(m);
  r.series = log_overlap_series(r.overlap_singular_sq);
  if (r.series.applicable) {
    r.log_abs_overlap = det.log_abs;
    r.overlap_sign = det.sign;
  } else {
    r.log_abs_overlap = -std::numeric_limits<double>::infinity();
    r.overlap_sign = 0;
  }
  std::vector<double> complement = r.overlap_singular_sq;
  for (double& x : complement) x = 1.0 - x;
  r.series_terms = power_traces(complement, n_max);
  r.anderson = anderson_integral(m);
  r.f_terms = f_traces(sys_h, sys_hp, energy, n_max);
  return r;
}

}  // namespace ocat
