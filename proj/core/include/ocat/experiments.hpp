// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocat/lattice_models.hpp"
#include "ocat/scattering_1d.hpp"

namespace ocat {

struct Tolerances {
  double lower = 0.15;  ///< measured >= theory * (1 - lower)
  double match = 0.25;  ///< |measured - theory| <= match * theory
};

/// Inclusive range of chain lengths used by a fit.
struct FitWindow {
  int min_length = 0;
  int max_length = 0;
};

struct McSettings {
  long samples = 1000000;
  std::uint64_t seed = 1;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
  std::string path;  ///< empty: nothing is written
  OutputFormat format = OutputFormat::json;
};

struct RunConfig {
  PotentialSpec potential;
  double energy = 2.0;
  std::vector<int> lengths;
  int n_max = 4;
  std::optional<FitWindow> fit_window;
  Tolerances tolerances;
  McSettings mc;
  OutputSpec output;

  /// Throws ConfigError / ValidationError.
  void validate() const;

  /// The configured window, or the upper half of `lengths`.
  FitWindow effective_window() const;
};

/// Parses a JSON config. Keys may be given flat ("model.lengths") or
/// nested ({"model": {"lengths": ...}}); unknown keys are rejected with
/// a ConfigError naming the key.
RunConfig parse_run_config(std::string_view json_text);

/// Config keys accepted by parse_run_config, in dotted form.
std::span<const std::string_view> config_keys();

struct EnergyPlacement {
  double requested = 0.0;
  double used = 0.0;
  bool nudged = false;
};

/// Moves E to the middle of the gap above an eigenvalue closer than `tol`.
/// Returns E unchanged otherwise. `values` ascending.
double nudge_to_gap(std::span<const double> values, double energy, double tol = 1e-9);

/// Applies nudge_to_gap against the free Hamiltonian of the largest length.
EnergyPlacement place_fermi_energy(const RunConfig& config);

struct SweepRow {
  int length = 0;
  int particles = 0;
  int xi = 0;
  double ln_length = 0.0;
  double minus_ln_abs_overlap = 0.0;
  std::vector<double> terms;    ///< tr (P(I - Pi))^n, n = 1..n_max
  std::vector<double> f_terms;  ///< F^n, n = 1..n_max
};

struct SweepResult {
  EnergyPlacement energy;
  int n_max = 0;
  std::vector<SweepRow> rows;
};

/// One row at chain length `length` and Fermi energy `energy`.
SweepRow sweep_row(const RunConfig& config, int length, double energy);

SweepResult run_sweep(const RunConfig& config);

/// "L,N,xi,lnL,minus_ln_abs_S,term_1..term_K,F_1..F_K".
std::vector<std::string> column_names(int n_max);

/// Value of a named column; throws ContractError for unknown names.
double column_value(const SweepRow& row, std::string_view column);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  double slope_stderr = 0.0;  ///< 0 for two-point fits
  int points_used = 0;
};

/// Ordinary least squares y = slope * x + intercept.
ExponentFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of `column` against ln L over rows in `window`.
ExponentFit fit_exponent(std::span<const SweepRow> rows, std::string_view column,
                         FitWindow window);

struct TheoryPrediction {
  double gamma = 0.0;
  double gamma1 = 0.0;
  std::vector<double> eta;     ///< eta_2n, n = 1..n_max
  std::vector<double> slopes;  ///< n J_2n eta_2n, n = 1..n_max
};

TheoryPrediction predict(const ScatteringAtEnergy& scattering, int n_max);

struct Verdict {
  std::string name;
  std::string formula;  ///< how `theory` is obtained
  double measured = 0.0;
  double theory = 0.0;
  double lower = 0.0;  ///< bound interval for bound_pass
  double upper = 0.0;
  bool bound_pass = false;
  bool match_pass = false;

  bool pass() const { return bound_pass && match_pass; }
};

struct TheoryComparison {
  std::vector<Verdict> traces;  ///< one per n, column F_n
  Verdict overlap;              ///< column minus_ln_abs_S against gamma/2
  bool all_pass = false;
};

/// Slopes within this absolute distance of a vanishing prediction pass.
inline constexpr double zero_slope_tolerance = 1e-9;

TheoryComparison compare_to_theory(const std::map<std::string, ExponentFit>& fits,
                                   const TheoryPrediction& theory, int n_max,
                                   const Tolerances& tol);

struct SweepReport {
  RunConfig config;
  SweepResult sweep;
  FitWindow window;
  std::map<std::string, ExponentFit> fits;
  std::optional<TheoryPrediction> theory;  ///< absent for nonzero background
  std::optional<TheoryComparison> comparison;

  bool all_pass() const { return !comparison || comparison->all_pass; }
};

/// run_sweep + fits of every data column + compare_to_theory.
SweepReport run_pipeline(const RunConfig& config);

std::string to_csv(const SweepResult& sweep);
std::string to_json(const SweepReport& report);

/// Writes to_csv / to_json to config.output.path. No-op for an empty path.
void write_report(const SweepReport& report);

}  // namespace ocat
