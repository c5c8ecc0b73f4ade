// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ocat/spectral_core.hpp"

namespace ocat {

/// Background potential V0 on the chain.
///
/// `zero` and `periodic` profiles are defined for every length; an
/// explicit profile carries one value per site and only fits chains of
/// exactly that length.
class Background {
 public:
  enum class Kind { zero, periodic, explicit_sites };

  Background() = default;

  static Background zero() { return {}; }
  static Background periodic(std::vector<double> pattern);
  static Background explicit_sites(std::vector<double> values);

  /// Parses "zero" or "periodic(p1,p2,...)".
  static Background parse(std::string_view profile);

  Kind kind() const { return kind_; }
  const std::vector<double>& values() const { return values_; }
  bool is_zero() const;

  /// V0 at 1-based site `site` of a chain of `length` sites.
  double at(int site, int length) const;

  /// Inverse of parse() for zero/periodic profiles.
  std::string describe() const;

 private:
  Kind kind_ = Kind::zero;
  std::vector<double> values_;
};

enum class Anchor {
  center,    ///< `site` is an offset from center_site(L)
  absolute,  ///< `site` is a 1-based chain index
};

struct PerturbationSite {
  int site = 0;
  double value = 0.0;
};

/// Background V0 plus the compactly supported perturbation V >= 0.
struct PotentialSpec {
  Background background;
  std::vector<PerturbationSite> perturbation;
  Anchor anchor = Anchor::center;

  /// Length-independent checks: finite, non-negative values (ValidationError)
  /// and distinct sites (ConfigError).
  void validate() const;

  bool has_perturbation() const;
};

enum class Boundary { dirichlet };

struct ModelConfig {
  int length = 2;
  Boundary boundary = Boundary::dirichlet;

  /// Constant on the free diagonal; places the free spectrum in [0, 4].
  static constexpr double diagonal_shift = 2.0;
};

/// The chain site the center anchor refers to: L/2 + 1 (1-based).
int center_site(int length);

/// One nonzero entry of V on an instantiated chain (0-based row index).
struct SiteValue {
  int index = 0;
  double value = 0.0;
};

/// V instantiated on a chain of `config.length` sites, sorted by index.
/// Throws ConfigError for sites off the chain.
std::vector<SiteValue> perturbation_on_chain(const ModelConfig& config, const PotentialSpec& pot);

/// H_L = -Delta_L + V0 (Dirichlet, diagonal 2), plus V when requested.
TridiagonalHamiltonian build_hamiltonian(const ModelConfig& config, const PotentialSpec& pot,
                                         bool with_perturbation);

}  // namespace ocat
