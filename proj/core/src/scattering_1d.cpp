// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include "ocat/scattering_1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ocat/errors.hpp"

namespace ocat {

using std::numbers::pi;

double wavenumber(double energy) {
  if (!(energy > 0.0 && energy < 4.0)) {
    throw DomainError("energy " + std::to_string(energy) + " outside the open band (0, 4)");
  }
  const double k = std::acos(std::clamp(1.0 - 0.5 * energy, -1.0, 1.0));
  if (std::abs(std::sin(k)) < 1e-8) {
    throw DomainError("energy " + std::to_string(energy) + " too close to a band edge");
  }
  return k;
}

Eigen::Matrix2cd site_transfer(int position, double value, double k) {
  const cplx beta = value / cplx(0.0, 2.0 * std::sin(k));
  const cplx phase = std::polar(1.0, 2.0 * k * position);
  Eigen::Matrix2cd m;
  m << 1.0 + beta, beta / phase,
      -beta * phase, 1.0 - beta;
  return m;
}

Eigen::Matrix2cd transfer_matrix(const PotentialSpec& pot, double energy) {
  if (!pot.background.is_zero()) {
    throw DomainError("scattering data are only available for a zero background");
  }
  pot.validate();
  const double k = wavenumber(energy);
  auto sites = pot.perturbation;
  std::sort(sites.begin(), sites.end(),
            [](const PerturbationSite& a, const PerturbationSite& b) { return a.site < b.site; });
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  for (const auto& s : sites) {
    if (s.value != 0.0) m = site_transfer(s.site, s.value, k) * m;
  }
  return m;
}

ScatteringAtEnergy s_matrix(const PotentialSpec& pot, double energy) {
  const Eigen::Matrix2cd m = transfer_matrix(pot, energy);
  ScatteringAtEnergy s;
  s.energy = energy;
  s.k = wavenumber(energy);
  // Left incidence: (t, 0) = M (1, r).  Right incidence: (r', 1) = M (0, t).
  s.t = 1.0 / m(1, 1);
  s.r = -m(1, 0) / m(1, 1);
  s.r_right = m(0, 1) / m(1, 1);

  // S = [[t, r'], [r, t]] has eigenvalues t +- sqrt(r r').
  const cplx root = std::sqrt(s.r * s.r_right);
  std::array<cplx, 2> lambda{s.t + root, s.t - root};
  std::array<double, 2> delta{0.5 * std::arg(lambda[0]), 0.5 * std::arg(lambda[1])};
  if (delta[1] < delta[0]) {
    std::swap(delta[0], delta[1]);
    std::swap(lambda[0], lambda[1]);
  }
  s.s_eigenvalues = lambda;
  s.eigenphases = delta;
  for (int j = 0; j < 2; ++j) s.t_halves[j] = std::abs(std::sin(delta[j]));
  return s;
}

Exponents exponents(const ScatteringAtEnergy& s, int n_max) {
  if (n_max < 0) throw ContractError("n_max must be >= 0");
  Exponents e;
  for (double h : s.t_halves) {
    const double a = std::asin(std::min(h, 1.0));
    e.gamma += a * a;
    e.gamma1 += h * h;
  }
  e.gamma /= pi * pi;
  e.gamma1 /= pi * pi;
  e.eta.assign(static_cast<std::size_t>(n_max), 0.0);
  for (double h : s.t_halves) {
    const double x2 = (h / pi) * (h / pi);
    double p = x2;
    for (int n = 0; n < n_max; ++n, p *= x2) e.eta[n] += p;
  }
  return e;
}

ScatteringAtEnergy scatter(const PotentialSpec& pot, double energy, int n_max) {
  ScatteringAtEnergy s = s_matrix(pot, energy);
  Exponents e = exponents(s, n_max);
  s.gamma = e.gamma;
  s.gamma1 = e.gamma1;
  s.eta = std::move(e.eta);
  return s;
}

double birman_kernel_free(double energy, std::span<const double> x, std::span<const double> y,
                          double v_x, double v_y) {
  if (!(energy > 0.0)) throw DomainError("Birman kernel needs E > 0");
  if (x.size() != y.size()) throw DomainError("Birman kernel: points of different dimension");
  if (v_x < 0.0 || v_y < 0.0) throw DomainError("Birman kernel: V must be non-negative");
  const double root_e = std::sqrt(energy);
  const double weight = std::sqrt(v_x) * std::sqrt(v_y);
  double dist2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dist2 += (x[i] - y[i]) * (x[i] - y[i]);

  if (x.size() == 1) {
    // S^0 = {-1, +1}: the sphere integral is 2 cos(sqrt(E)(x - y)).
    return weight / (root_e * 4.0 * pi) * 2.0 * std::cos(root_e * (x[0] - y[0]));
  }
  if (x.size() == 3) {
    const double s = root_e * std::sqrt(dist2);
    const double sinc = s < 1e-6 ? 1.0 - s * s / 6.0 : std::sin(s) / s;
    return root_e / (2.0 * std::pow(2.0 * pi, 3)) * weight * 4.0 * pi * sinc;
  }
  throw DomainError("Birman kernel implemented for dimensions 1 and 3 only, got " +
                    std::to_string(x.size()));
}

Eigen::MatrixXd birman_gram(double energy, const std::vector<std::vector<double>>& points,
                            std::span<const double> v_values) {
  if (points.size() != v_values.size()) {
    throw ContractError("birman_gram: one potential value per sample point required");
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      g(i, j) = birman_kernel_free(energy, points[i], points[j], v_values[i], v_values[j]);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

PositivityReport positivity_check(const PotentialSpec& pot, std::span<const double> energies) {
  PositivityReport rep;
  rep.degenerate = !pot.has_perturbation();
  rep.all_positive = !rep.degenerate && !energies.empty();
  rep.min_gamma = std::numeric_limits<double>::infinity();
  for (double e : energies) {
    const ScatteringAtEnergy s = scatter(pot, e, 0);
    rep.energies.push_back(e);
    rep.gammas.push_back(s.gamma);
    const double t_max = std::max(s.t_halves[0], s.t_halves[1]);
    if (!(t_max > 0.0 && s.gamma > 0.0)) rep.all_positive = false;
    if (s.gamma < rep.min_gamma) {
      rep.min_gamma = s.gamma;
      rep.argmin_energy = e;
    }
  }
  if (energies.empty()) rep.min_gamma = 0.0;
  return rep;
}

std::vector<double> open_grid(double lo, double hi, int count) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) g.push_back(lo + (hi - lo) * (i + 1) / (count + 1));
  return g;
}

}  // namespace ocat
