// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "ocat/errors.hpp"
#include "ocat/experiments.hpp"
#include "ocat/lattice_models.hpp"
#include "ocat/overlap_engine.hpp"
#include "ocat/scattering_1d.hpp"
#include "ocat/special_functions.hpp"
#include "ocat/spectral_core.hpp"

namespace ocat::cli {

namespace {

using std::numbers::pi;
using nlohmann::json;

/// Accumulates PASS/FAIL lines for one subcommand. A quiet instance only
/// records them, for subcommands that emit JSON.
class Checks {
 public:
  explicit Checks(std::ostream& out, bool quiet = false) : out_(out), quiet_(quiet) {}

  void check(bool ok, const std::string& what) {
    if (!quiet_) out_ << (ok ? "[PASS] " : "[FAIL] ") << what << '\n';
    entries_.push_back({{"pass", ok}, {"check", what}});
    failed_ = failed_ || !ok;
  }
  void info(const std::string& what) {
    if (!quiet_) out_ << "[INFO] " << what << '\n';
  }

  const json& entries() const { return entries_; }
  int exit_code() const { return failed_ ? exit_fail : exit_pass; }

 private:
  std::ostream& out_;
  bool quiet_;
  bool failed_ = false;
  json entries_ = json::array();
};

std::string fmt(double v, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ")
     << std::abs(z.imag()) << "i";
  return os.str();
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

/// "offset:value,offset:value" relative to the chain center.
std::vector<PerturbationSite> parse_sites(const std::string& text) {
  std::vector<PerturbationSite> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("--sites entry '" + item + "' must look like offset:value");
    }
    try {
      out.push_back({std::stoi(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw ConfigError("--sites entry '" + item + "' is not numeric");
    }
  }
  return out;
}

struct PotentialFlags {
  std::optional<double> v;
  std::string sites;
  std::string background = "zero";

  void add_to(CLI::App* app, bool with_background) {
    app->add_option("--v", v, "Single-site perturbation at the chain center");
    app->add_option("--sites", sites, "Perturbation as offset:value,... relative to the center");
    if (with_background) {
      app->add_option("--background", background, "Background profile: zero | periodic(p1,...)");
    }
  }

  PotentialSpec build() const {
    if (v && !sites.empty()) throw ConfigError("use either --v or --sites, not both");
    PotentialSpec pot;
    pot.background = Background::parse(background);
    if (v) pot.perturbation.push_back({0, *v});
    if (!sites.empty()) pot.perturbation = parse_sites(sites);
    pot.validate();
    return pot;
  }
};

// ---------------------------------------------------------------- constants

int cmd_constants(std::ostream& out, int n_max) {
  Checks c(out);
  out << std::setw(4) << "n" << std::setw(22) << "J_2n" << std::setw(22) << "I_2n"
      << std::setw(22) << "n*J_2n" << '\n';
  double worst = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double j = j2n(n);
    const double i = i_closed(2 * n);
    worst = std::max(worst, rel_err(i, n * j));
    out << std::setw(4) << n << std::setw(22) << fmt(j, 15) << std::setw(22) << fmt(i, 15)
        << std::setw(22) << fmt(n * j, 15) << '\n';
  }
  out << '\n' << std::setw(4) << "n" << std::setw(22) << "I_n" << '\n';
  for (int n = 2; n <= 2 * n_max; ++n) {
    out << std::setw(4) << n << std::setw(22) << fmt(i_closed(n), 15) << '\n';
  }
  out << '\n';
  c.check(rel_err(j2n(1), 1.0) <= 1e-12, "J_2 = 1: " + fmt(j2n(1), 17));
  c.check(rel_err(j2n(2), pi * pi / 3) <= 1e-12, "J_4 = pi^2/3: " + fmt(j2n(2), 17));
  c.check(rel_err(i_closed(2), 1.0) <= 1e-12, "I_2 = 1: " + fmt(i_closed(2), 17));
  c.check(rel_err(i_closed(3), pi * pi / 4) <= 1e-12, "I_3 = pi^2/4: " + fmt(i_closed(3), 17));
  c.check(rel_err(i_closed(4), 2 * pi * pi / 3) <= 1e-12,
          "I_4 = 2 pi^2/3: " + fmt(i_closed(4), 17));
  c.check(worst <= 1e-12, "I_2n = n J_2n for n = 1.." + std::to_string(n_max) +
                              " (max rel. diff " + fmt(worst, 3) + ")");
  return c.exit_code();
}

// ------------------------------------------------------------------- verify

struct VerifyOptions {
  long hilbert_size = 10000;
  int hilbert_max_n = 4;
  long samples = 1000000;
  std::uint64_t seed = 1;
  int series_order = 200;
};

int cmd_verify(std::ostream& out, const VerifyOptions& o) {
  Checks c(out);
  for (int n = 2; n <= o.hilbert_max_n; ++n) {
    const double exact = i_closed(n);
    const HilbertMoment small = hilbert_moment(n, std::max(1L, o.hilbert_size / 100));
    const HilbertMoment mid = hilbert_moment(n, std::max(1L, o.hilbert_size / 10));
    const HilbertMoment big = hilbert_moment(n, o.hilbert_size);
    const bool monotone = small.value <= mid.value && mid.value <= big.value && big.value <= exact;
    c.check(rel_err(big.value, exact) <= 2e-3 && monotone,
            "Hilbert moment n=" + std::to_string(n) + " M=" + std::to_string(o.hilbert_size) +
                ": " + fmt(big.value) + " vs I_n " + fmt(exact) + " (rel " +
                fmt(rel_err(big.value, exact), 3) + ", M vs M/2 diff " +
                fmt(big.truncation_bound, 3) + ", monotone " + (monotone ? "yes" : "no") + ")");
  }
  for (int n = 2; n <= 4; ++n) {
    const McEstimate mc = mc_in(n, o.samples, o.seed + static_cast<std::uint64_t>(n));
    const double exact = i_closed(n);
    c.check(std::abs(mc.estimate - exact) <= 3.0 * mc.std_error,
            "Monte-Carlo I_" + std::to_string(n) + ": " + fmt(mc.estimate) + " +- " +
                fmt(mc.std_error, 3) + " vs " + fmt(exact));
  }
  for (const std::vector<double>& x : {std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 1.0, 1.0}}) {
    const auto fs = feynman_schwinger_check(x, o.samples, o.seed + 100 + x.size());
    c.check(std::abs(fs.mc_rhs - fs.lhs) <= std::max(3.0 * fs.std_error, 1e-12 * fs.lhs),
            "Feynman-Schwinger n=" + std::to_string(x.size()) + ": lhs " + fmt(fs.lhs) +
                ", rhs " + fmt(fs.mc_rhs) + " +- " + fmt(fs.std_error, 3));
  }
  for (const double x : {1.0 / (2.0 * pi), 1.0 / pi}) {
    const double exact = std::pow(std::asin(std::min(pi * x, 1.0)) / pi, 2);
    bool contained = true;
    SeriesPartial last;
    for (int order = 1; order <= o.series_order; ++order) {
      last = arcsin_sq_series(x, order);
      contained = contained && last.partial_sum - last.rounding_bound <= exact &&
                  exact <= last.partial_sum + last.tail_bound + last.rounding_bound;
    }
    c.check(contained, "arcsin^2 series at x=" + fmt(x, 6) + ": partial " + fmt(last.partial_sum) +
                           " + tail " + fmt(last.tail_bound, 3) + " contains " + fmt(exact) +
                           " for orders 1.." + std::to_string(o.series_order));
  }
  return c.exit_code();
}

// --------------------------------------------------------------- scattering

int cmd_scattering(std::ostream& out, const PotentialSpec& pot, double energy, int n_max,
                   bool as_json) {
  const ScatteringAtEnergy s = scatter(pot, energy, n_max);
  const TheoryPrediction theory = predict(s, n_max);
  const double unitarity = std::norm(s.r) + std::norm(s.t);
  if (as_json) {
    auto cj = [](cplx z) { return json::array({z.real(), z.imag()}); };
    const json doc = {{"energy", s.energy},
                      {"k", s.k},
                      {"r", cj(s.r)},
                      {"t", cj(s.t)},
                      {"r_right", cj(s.r_right)},
                      {"s_eigenvalues", {cj(s.s_eigenvalues[0]), cj(s.s_eigenvalues[1])}},
                      {"eigenphases", s.eigenphases},
                      {"t_halves", s.t_halves},
                      {"gamma", s.gamma},
                      {"gamma1", s.gamma1},
                      {"eta", s.eta},
                      {"trace_slopes", theory.slopes}};
    out << doc.dump(2) << '\n';
    return exit_pass;
  }
  out << "E            " << fmt(s.energy) << "\n"
      << "k            " << fmt(s.k) << "\n"
      << "t            " << fmt(s.t) << "\n"
      << "r            " << fmt(s.r) << "\n"
      << "r'           " << fmt(s.r_right) << "\n"
      << "|r|^2+|t|^2  " << fmt(unitarity, 17) << "\n"
      << "S eigvals    " << fmt(s.s_eigenvalues[0]) << ", " << fmt(s.s_eigenvalues[1]) << "\n"
      << "delta        " << fmt(s.eigenphases[0]) << ", " << fmt(s.eigenphases[1]) << "\n"
      << "|sin delta|  " << fmt(s.t_halves[0]) << ", " << fmt(s.t_halves[1]) << "\n"
      << "gamma        " << fmt(s.gamma) << "   [pi^-2 sum_j arcsin(|sin delta_j|)^2]\n"
      << "gamma1       " << fmt(s.gamma1) << "   [pi^-2 sum_j sin(delta_j)^2]\n";
  for (int n = 1; n <= n_max; ++n) {
    out << "eta_" << 2 * n << std::string(n < 5 ? 7 : 6, ' ') << fmt(s.eta[n - 1])
        << "   trace slope n J_2n eta_2n = " << fmt(theory.slopes[n - 1]) << "\n";
  }
  return exit_pass;
}

// ------------------------------------------------------------------ overlap

int cmd_overlap(std::ostream& out, const PotentialSpec& pot, int length, double energy,
                int n_max, bool as_json) {
  const ModelConfig model{length};
  const TridiagonalHamiltonian h = build_hamiltonian(model, pot, false);
  const TridiagonalHamiltonian hp = build_hamiltonian(model, pot, true);
  const EigenSystem sys_h = diagonalize(h);
  const EigenSystem sys_hp = diagonalize(hp);
  const OverlapReport r = compute_overlap_report(sys_h, sys_hp, energy, n_max);

  Checks c(out, as_json);
  if (!as_json) {
    out << "L = " << length << ", E = " << fmt(energy) << "\n"
        << "N_L(E)          " << r.particles << "\n"
        << "#{mu <= E}      " << r.particles_perturbed << "\n"
        << "xi_L(E)         " << r.xi << "\n"
        << "ln|S_L(E)|      " << fmt(r.log_abs_overlap) << " (sign " << r.overlap_sign << ")\n"
        << "Anderson int.   " << fmt(r.anderson) << "\n";
    if (!r.overlap_singular_sq.empty()) {
      out << "a_min, a_max    " << fmt(r.overlap_singular_sq.front()) << ", "
          << fmt(r.overlap_singular_sq.back()) << "\n";
    }
    for (int n = 1; n <= n_max; ++n) {
      out << "n=" << n << "  I^n = " << fmt(r.series_terms[n - 1])
          << "   F^n = " << fmt(r.f_terms[n - 1]) << "\n";
    }
  }
  if (r.series.applicable) {
    const double lhs = -2.0 * r.log_abs_overlap;
    const bool ok = lhs >= r.series.partial_sum - 1e-8 &&
                    lhs <= r.series.partial_sum + r.series.tail_bound + 1e-8;
    c.check(ok, "-2 ln|S| = " + fmt(lhs) + " within series " + fmt(r.series.partial_sum) +
                    " + [0, " + fmt(r.series.tail_bound, 3) + "] (" +
                    std::to_string(r.series.terms_used) + " terms)");
  } else {
    c.info("overlap numerically zero; series identity skipped");
  }
  double worst = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    worst = std::max(worst, std::abs(r.f_terms[n - 1] - r.series_terms[n - 1]) - n * r.xi);
  }
  c.check(worst <= 1e-9, "|F^n - I^n| <= n xi for n = 1.." + std::to_string(n_max));
  if (length <= 400) {
    const auto v = perturbation_on_chain(model, pot);
    const EigenIdentityCheck id = verify_eigen_identity(sys_h, sys_hp, v);
    c.check(id.max_abs_deviation < 1e-9,
            "eigenvalue-equation identity: max deviation " + fmt(id.max_abs_deviation, 3) + " over " +
                std::to_string(id.compared) + " pairs (" + std::to_string(id.skipped) + " skipped)");
  }
  if (as_json) {
    json doc = {{"L", length},
                {"E", energy},
                {"N", r.particles},
                {"N_perturbed", r.particles_perturbed},
                {"xi", r.xi},
                {"log_abs_overlap", r.log_abs_overlap},
                {"overlap_sign", r.overlap_sign},
                {"anderson_integral", r.anderson},
                {"overlap_singular_sq", r.overlap_singular_sq},
                {"series_terms", r.series_terms},
                {"F_terms", r.f_terms},
                {"series",
                 {{"applicable", r.series.applicable},
                  {"partial_sum", r.series.partial_sum},
                  {"terms_used", r.series.terms_used},
                  {"tail_bound", r.series.tail_bound}}}};
    doc["checks"] = c.entries();
    out << doc.dump(2) << '\n';
  }
  return c.exit_code();
}

// -------------------------------------------------------------------- sweep

int cmd_sweep(std::ostream& out, const std::string& config_path, const std::string& output,
              const std::string& format) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig cfg = parse_run_config(buf.str());
  if (!output.empty()) cfg.output.path = output;
  if (!format.empty()) {
    if (format != "csv" && format != "json") throw ConfigError("--format must be csv or json");
    cfg.output.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  }

  const SweepReport rep = run_pipeline(cfg);
  write_report(rep);

  out << "Fermi energy " << fmt(rep.sweep.energy.used)
      << (rep.sweep.energy.nudged ? " (nudged from " + fmt(rep.sweep.energy.requested) + ")" : "")
      << "\n";
  for (const auto& row : rep.sweep.rows) {
    out << "L=" << std::setw(6) << row.length << "  N=" << std::setw(6) << row.particles
        << "  xi=" << row.xi << "  -ln|S|=" << fmt(row.minus_ln_abs_overlap, 10)
        << "  F_1=" << fmt(row.f_terms[0], 10) << "\n";
  }
  out << "fit window [" << rep.window.min_length << ", " << rep.window.max_length << "]\n";
  for (const auto& [name, f] : rep.fits) {
    out << "  slope(" << name << ") = " << fmt(f.slope, 8) << " +- " << fmt(f.slope_stderr, 2)
        << "  (rms " << fmt(f.rms_residual, 2) << ", " << f.points_used << " points)\n";
  }
  if (!rep.comparison) {
    out << "[INFO] no scattering prediction for this configuration; verdicts skipped\n";
    return exit_pass;
  }
  const TheoryPrediction& t = *rep.theory;
  out << "gamma = " << fmt(t.gamma) << " [pi^-2 sum_j arcsin(|sin delta_j|)^2], gamma1 = "
      << fmt(t.gamma1) << " [pi^-2 sum_j sin(delta_j)^2]\n";
  Checks c(out);
  for (const auto& v : rep.comparison->traces) {
    c.check(v.bound_pass, v.name + " slope " + fmt(v.measured, 8) + " >= " + fmt(v.lower, 8) +
                              " [lower bound from " + v.formula + "]");
    c.check(v.match_pass, v.name + " slope " + fmt(v.measured, 8) + " matches " +
                              fmt(v.theory, 8) + " [" + v.formula + "]");
  }
  const Verdict& o = rep.comparison->overlap;
  c.check(o.bound_pass, "-ln|S| slope " + fmt(o.measured, 8) + " in [" + fmt(o.lower, 8) + ", " +
                            fmt(o.upper, 8) + "] [gamma1/2 (1-tol), gamma/2 (1+tol)]");
  c.check(o.match_pass, "-ln|S| slope " + fmt(o.measured, 8) + " matches gamma/2 = " +
                            fmt(o.theory, 8));
  return c.exit_code();
}

// ------------------------------------------------------------------- kernel

int cmd_kernel(std::ostream& out, double energy, int points, int grid, double v) {
  Checks c(out);
  // Sample points inside spt V = [-1, 1]^d with V = v there.
  std::vector<double> weights(static_cast<std::size_t>(points), v);
  std::vector<std::vector<double>> line;
  for (int i = 0; i < points; ++i) line.push_back({-1.0 + 2.0 * i / std::max(points - 1, 1)});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  std::vector<std::vector<double>> space;
  for (int i = 0; i < points; ++i) space.push_back({cube(rng), cube(rng), cube(rng)});

  for (const auto* pts : {&line, &space}) {
    const Eigen::MatrixXd g = birman_gram(energy, *pts, weights);
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().minCoeff();
    c.check(min_eig >= -1e-10, "Birman kernel Gram matrix, d=" + std::to_string(pts->front().size()) +
                                   ", " + std::to_string(points) + " points: min eigenvalue " +
                                   fmt(min_eig, 3));
  }

  const auto energies = open_grid(0.0, 4.0, grid);
  PotentialSpec pot;
  pot.perturbation = {{0, v}};
  const PositivityReport pos = positivity_check(pot, energies);
  c.check(pos.all_positive, "gamma(E) > 0 on " + std::to_string(grid) + " band energies for v=" +
                                fmt(v) + ": min " + fmt(pos.min_gamma, 6) + " at E=" +
                                fmt(pos.argmin_energy, 6));
  PotentialSpec free_pot;
  free_pot.perturbation = {{0, 0.0}};
  const PositivityReport none = positivity_check(free_pot, energies);
  const double max_free = *std::max_element(none.gammas.begin(), none.gammas.end());
  c.check(none.degenerate && max_free == 0.0,
          "v=0 is reported degenerate with gamma identically 0 (max " + fmt(max_free, 3) + ")");
  return c.exit_code();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthogonality-catastrophe laboratory for 1D lattice Fermi gases", "ocat"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  int constants_n = 10;
  auto* constants = app.add_subcommand("constants", "Print J_2n, I_n and check I_2n = n J_2n");
  constants->add_option("--n-max", constants_n, "Largest n")->check(CLI::Range(1, 60));

  VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run the special-function oracle suite");
  verify->add_option("--hilbert-size", verify_opts.hilbert_size, "Hilbert truncation M")
      ->check(CLI::Range(100L, 100000L));
  verify->add_option("--hilbert-max-n", verify_opts.hilbert_max_n, "Largest Hilbert moment n")
      ->check(CLI::Range(2, 12));
  verify->add_option("--samples", verify_opts.samples, "Monte-Carlo samples")
      ->check(CLI::Range(10000L, 1000000000L));
  verify->add_option("--seed", verify_opts.seed, "Monte-Carlo seed");
  verify->add_option("--series-order", verify_opts.series_order, "Largest arcsin^2 series order")
      ->check(CLI::Range(1, 100000));

  PotentialFlags scat_pot;
  double scat_energy = 2.0;
  int scat_n = 4;
  bool scat_json = false;
  auto* scattering = app.add_subcommand("scattering", "Scattering data and exponents at one energy");
  scat_pot.add_to(scattering, false);
  scattering->add_option("--energy", scat_energy, "Fermi energy in (0, 4)")->required();
  scattering->add_option("--n-max", scat_n, "Number of eta_2n terms")->check(CLI::Range(1, 200));
  scattering->add_flag("--json", scat_json, "Emit JSON");

  PotentialFlags ovl_pot;
  int ovl_length = 100;
  double ovl_energy = 2.0;
  int ovl_n = 4;
  bool ovl_json = false;
  auto* overlap = app.add_subcommand("overlap", "Ground-state overlap report for one chain");
  ovl_pot.add_to(overlap, true);
  overlap->add_option("--length", ovl_length, "Number of sites L")->required()->check(CLI::Range(2, 20000));
  overlap->add_option("--energy", ovl_energy, "Fermi energy")->required();
  overlap->add_option("--n-max", ovl_n, "Number of series and F terms")->check(CLI::Range(1, 256));
  overlap->add_flag("--json", ovl_json, "Emit JSON");

  std::string sweep_config, sweep_output, sweep_format;
  auto* sweep = app.add_subcommand("sweep", "Length sweep, ln L fits and theory verdicts");
  sweep->add_option("--config", sweep_config, "JSON config file")->required();
  sweep->add_option("--output", sweep_output, "Override output.path");
  sweep->add_option("--format", sweep_format, "Override output.format (csv | json)");

  double kernel_energy = 2.0, kernel_v = 2.0;
  int kernel_points = 40, kernel_grid = 50;
  auto* kernel = app.add_subcommand("kernel", "Birman kernel positivity and gamma(E) > 0 checks");
  kernel->add_option("--energy", kernel_energy, "Continuum energy E > 0 for the kernel");
  kernel->add_option("--points", kernel_points, "Sample points per Gram matrix")->check(CLI::Range(1, 2000));
  kernel->add_option("--grid", kernel_grid, "Band energies for the positivity scan")->check(CLI::Range(1, 100000));
  kernel->add_option("--v", kernel_v, "Single-site perturbation strength");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_usage;
  }

  try {
    if (constants->parsed()) return cmd_constants(out, constants_n);
    if (verify->parsed()) return cmd_verify(out, verify_opts);
    if (scattering->parsed()) {
      return cmd_scattering(out, scat_pot.build(), scat_energy, scat_n, scat_json);
    }
    if (overlap->parsed()) {
      return cmd_overlap(out, ovl_pot.build(), ovl_length, ovl_energy, ovl_n, ovl_json);
    }
    if (sweep->parsed()) return cmd_sweep(out, sweep_config, sweep_output, sweep_format);
    if (kernel->parsed()) {
      return cmd_kernel(out, kernel_energy, kernel_points, kernel_grid, kernel_v);
    }
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return exit_fail;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace ocat::cli
