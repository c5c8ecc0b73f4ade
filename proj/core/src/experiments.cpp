// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include "ocat/experiments.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ocat/errors.hpp"
#include "ocat/overlap_engine.hpp"
#include "ocat/special_functions.hpp"
#include "ocat/spectral_core.hpp"

namespace ocat {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 12> kConfigKeys = {
    "model.lengths",     "model.background", "model.perturbation", "model.energy",
    "series.n_max",      "fit.window",       "tolerances.lower",   "tolerances.match",
    "mc.samples",        "mc.seed",          "output.path",        "output.format",
};

constexpr std::string_view kCsvSchema = "# ocat-sweep v1";

void flatten(const json& node, const std::string& prefix, std::map<std::string, json>& out) {
  for (auto it = node.begin(); it != node.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten(*it, key, out);
    } else {
      out[key] = *it;
    }
  }
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return j.get<double>();
}

long integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return j.get<long>();
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json fit_json(const ExponentFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"rms_residual", f.rms_residual},
          {"slope_stderr", f.slope_stderr},
          {"points_used", f.points_used}};
}

json verdict_json(const Verdict& v) {
  return {{"name", v.name},         {"formula", v.formula},       {"measured", v.measured},
          {"theory", v.theory},     {"lower", v.lower},           {"upper", v.upper},
          {"bound_pass", v.bound_pass}, {"match_pass", v.match_pass}, {"pass", v.pass()}};
}

json config_json(const RunConfig& c) {
  json pert = json::array();
  for (const auto& p : c.potential.perturbation) pert.push_back({p.site, p.value});
  json background;
  if (c.potential.background.kind() == Background::Kind::explicit_sites) {
    background = c.potential.background.values();
  } else {
    background = c.potential.background.describe();
  }
  const FitWindow w = c.effective_window();
  return {{"model",
           {{"lengths", c.lengths},
            {"background", background},
            {"perturbation", pert},
            {"energy", c.energy}}},
          {"series", {{"n_max", c.n_max}}},
          {"fit", {{"window", {w.min_length, w.max_length}}}},
          {"tolerances", {{"lower", c.tolerances.lower}, {"match", c.tolerances.match}}},
          {"mc", {{"samples", c.mc.samples}, {"seed", c.mc.seed}}},
          {"output",
           {{"path", c.output.path},
            {"format", c.output.format == OutputFormat::csv ? "csv" : "json"}}}};
}

bool has_scattering_theory(const PotentialSpec& pot, double energy) {
  if (!pot.background.is_zero()) return false;
  try {
    wavenumber(energy);
  } catch (const DomainError&) {
    return false;
  }
  return true;
}

}  // namespace

std::span<const std::string_view> config_keys() { return kConfigKeys; }

void RunConfig::validate() const {
  if (lengths.size() < 2) throw ConfigError("model.lengths needs at least two lengths");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 2) throw ConfigError("model.lengths entries must be >= 2");
    if (i > 0 && lengths[i] <= lengths[i - 1]) {
      throw ConfigError("model.lengths must be strictly increasing");
    }
  }
  if (n_max < 1) throw ConfigError("series.n_max must be >= 1");
  if (!std::isfinite(energy)) throw ConfigError("model.energy must be finite");
  if (tolerances.lower < 0.0 || tolerances.match < 0.0) {
    throw ConfigError("tolerances must be non-negative");
  }
  if (mc.samples < 10000) throw ConfigError("mc.samples must be >= 10000");
  potential.validate();

  const FitWindow w = effective_window();
  if (w.min_length > w.max_length) throw ConfigError("fit.window must satisfy min <= max");
  const auto inside = std::count_if(lengths.begin(), lengths.end(), [&](int l) {
    return l >= w.min_length && l <= w.max_length;
  });
  if (inside < 2) throw ConfigError("fit.window must contain at least two lengths");
}

FitWindow RunConfig::effective_window() const {
  if (fit_window) return *fit_window;
  if (lengths.empty()) return {};
  const std::size_t start =
      std::min(lengths.size() / 2, lengths.size() >= 2 ? lengths.size() - 2 : 0);
  return {lengths[start], lengths.back()};
}

RunConfig parse_run_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");

  std::map<std::string, json> flat;
  flatten(root, "", flat);
  for (const auto& [key, value] : flat) {
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  RunConfig c;
  auto find = [&](const char* key) -> const json* {
    const auto it = flat.find(key);
    return it == flat.end() ? nullptr : &it->second;
  };

  if (const json* j = find("model.lengths")) {
    if (!j->is_array()) throw ConfigError("config key 'model.lengths' must be an array");
    for (const auto& l : *j) c.lengths.push_back(static_cast<int>(integer(l, "model.lengths")));
  } else {
    throw ConfigError("missing config key 'model.lengths'");
  }
  if (const json* j = find("model.energy")) {
    c.energy = number(*j, "model.energy");
  } else {
    throw ConfigError("missing config key 'model.energy'");
  }
  if (const json* j = find("model.background")) {
    if (j->is_string()) {
      c.potential.background = Background::parse(j->get<std::string>());
    } else if (j->is_array()) {
      std::vector<double> values;
      for (const auto& v : *j) values.push_back(number(v, "model.background"));
      c.potential.background = Background::explicit_sites(std::move(values));
    } else {
      throw ConfigError("config key 'model.background' must be a profile string or array");
    }
  }
  if (const json* j = find("model.perturbation")) {
    if (!j->is_array()) throw ConfigError("config key 'model.perturbation' must be an array");
    for (const auto& p : *j) {
      if (!p.is_array() || p.size() != 2) {
        throw ConfigError("config key 'model.perturbation' entries must be [offset, value]");
      }
      c.potential.perturbation.push_back({static_cast<int>(integer(p[0], "model.perturbation")),
                                          number(p[1], "model.perturbation")});
    }
  }
  if (const json* j = find("series.n_max")) c.n_max = static_cast<int>(integer(*j, "series.n_max"));
  if (const json* j = find("fit.window")) {
    const auto w = get_as<std::vector<int>>(*j, "fit.window");
    if (w.size() != 2) throw ConfigError("config key 'fit.window' must be [min_L, max_L]");
    c.fit_window = FitWindow{w[0], w[1]};
  }
  if (const json* j = find("tolerances.lower")) c.tolerances.lower = number(*j, "tolerances.lower");
  if (const json* j = find("tolerances.match")) c.tolerances.match = number(*j, "tolerances.match");
  if (const json* j = find("mc.samples")) c.mc.samples = integer(*j, "mc.samples");
  if (const json* j = find("mc.seed")) {
    const long seed = integer(*j, "mc.seed");
    if (seed < 0) throw ConfigError("config key 'mc.seed' must be non-negative");
    c.mc.seed = static_cast<std::uint64_t>(seed);
  }
  if (const json* j = find("output.path")) c.output.path = get_as<std::string>(*j, "output.path");
  if (const json* j = find("output.format")) {
    const auto f = get_as<std::string>(*j, "output.format");
    if (f == "csv") {
      c.output.format = OutputFormat::csv;
    } else if (f == "json") {
      c.output.format = OutputFormat::json;
    } else {
      throw ConfigError("config key 'output.format' must be 'csv' or 'json'");
    }
  }
  c.validate();
  return c;
}

double nudge_to_gap(std::span<const double> values, double energy, double tol) {
  if (values.empty()) return energy;
  const auto it = std::lower_bound(values.begin(), values.end(), energy);
  std::size_t nearest = static_cast<std::size_t>(it - values.begin());
  if (nearest == values.size() ||
      (nearest > 0 && energy - values[nearest - 1] < values[nearest] - energy)) {
    --nearest;
  }
  if (std::abs(values[nearest] - energy) >= tol) return energy;
  if (nearest + 1 < values.size()) return 0.5 * (values[nearest] + values[nearest + 1]);
  if (nearest > 0) return values[nearest] + 0.5 * (values[nearest] - values[nearest - 1]);
  return energy + 0.5;
}

EnergyPlacement place_fermi_energy(const RunConfig& config) {
  EnergyPlacement p;
  p.requested = config.energy;
  p.used = config.energy;
  if (config.lengths.empty()) return p;
  const ModelConfig model{config.lengths.back()};
  const auto values = eigenvalues(build_hamiltonian(model, config.potential, false));
  p.used = nudge_to_gap(values, config.energy);
  p.nudged = p.used != p.requested;
  return p;
}

SweepRow sweep_row(const RunConfig& config, int length, double energy) {
  const ModelConfig model{length};
  try {
    const EigenSystem sys_h = diagonalize(build_hamiltonian(model, config.potential, false));
    const EigenSystem sys_hp = diagonalize(build_hamiltonian(model, config.potential, true));
    const OverlapReport rep = compute_overlap_report(sys_h, sys_hp, energy, config.n_max);
    SweepRow row;
    row.length = length;
    row.particles = rep.particles;
    row.xi = rep.xi;
    row.ln_length = std::log(static_cast<double>(length));
    row.minus_ln_abs_overlap = -rep.log_abs_overlap;
    row.terms = rep.series_terms;
    row.f_terms = rep.f_terms;
    return row;
  } catch (const NumericError& e) {
    throw NumericError("sweep failed at L = " + std::to_string(length) + ": " + e.what());
  }
}

SweepResult run_sweep(const RunConfig& config) {
  config.validate();
  SweepResult out;
  out.energy = place_fermi_energy(config);
  out.n_max = config.n_max;
  out.rows.reserve(config.lengths.size());
  for (int length : config.lengths) out.rows.push_back(sweep_row(config, length, out.energy.used));
  return out;
}

std::vector<std::string> column_names(int n_max) {
  std::vector<std::string> names = {"L", "N", "xi", "lnL", "minus_ln_abs_S"};
  for (int n = 1; n <= n_max; ++n) names.push_back("term_" + std::to_string(n));
  for (int n = 1; n <= n_max; ++n) names.push_back("F_" + std::to_string(n));
  return names;
}

double column_value(const SweepRow& row, std::string_view column) {
  if (column == "L") return row.length;
  if (column == "N") return row.particles;
  if (column == "xi") return row.xi;
  if (column == "lnL") return row.ln_length;
  if (column == "minus_ln_abs_S") return row.minus_ln_abs_overlap;
  auto indexed = [&](std::string_view prefix, const std::vector<double>& v) -> std::optional<double> {
    if (column.substr(0, prefix.size()) != prefix) return std::nullopt;
    const std::string digits(column.substr(prefix.size()));
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return std::nullopt;
    const std::size_t n = std::stoul(digits);
    if (n < 1 || n > v.size()) return std::nullopt;
    return v[n - 1];
  };
  if (auto v = indexed("term_", row.terms)) return *v;
  if (auto v = indexed("F_", row.f_terms)) return *v;
  throw ContractError("unknown sweep column '" + std::string(column) + "'");
}

ExponentFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("fit_line: x and y differ in length");
  if (x.size() < 2) throw ContractError("fit_line: need at least two points");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw NumericError("fit_line: non-finite data point");
    }
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ContractError("fit_line: x values are all equal");

  ExponentFit f;
  f.points_used = static_cast<int>(x.size());
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ssr += r * r;
  }
  f.rms_residual = std::sqrt(ssr / n);
  if (x.size() > 2) f.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
  return f;
}

ExponentFit fit_exponent(std::span<const SweepRow> rows, std::string_view column,
                         FitWindow window) {
  std::vector<double> x, y;
  for (const auto& row : rows) {
    if (row.length < window.min_length || row.length > window.max_length) continue;
    x.push_back(row.ln_length);
    y.push_back(column_value(row, column));
  }
  if (x.size() < 2) {
    throw ContractError("fit_exponent: fewer than two rows in window [" +
                        std::to_string(window.min_length) + ", " +
                        std::to_string(window.max_length) + "]");
  }
  return fit_line(x, y);
}

TheoryPrediction predict(const ScatteringAtEnergy& scattering, int n_max) {
  const Exponents e = exponents(scattering, n_max);
  TheoryPrediction t;
  t.gamma = e.gamma;
  t.gamma1 = e.gamma1;
  t.eta = e.eta;
  for (int n = 1; n <= n_max; ++n) t.slopes.push_back(n * j2n(n) * e.eta[n - 1]);
  return t;
}

TheoryComparison compare_to_theory(const std::map<std::string, ExponentFit>& fits,
                                   const TheoryPrediction& theory, int n_max,
                                   const Tolerances& tol) {
  auto measured = [&](const std::string& name) {
    const auto it = fits.find(name);
    if (it == fits.end()) throw ContractError("compare_to_theory: missing fit for " + name);
    return it->second.slope;
  };
  auto close_to_zero = [](double x) { return std::abs(x) <= zero_slope_tolerance; };

  TheoryComparison out;
  out.all_pass = true;
  for (int n = 1; n <= n_max; ++n) {
    Verdict v;
    v.name = "F_" + std::to_string(n);
    v.formula = "n * J_2n * eta_2n(E), n = " + std::to_string(n);
    v.measured = measured(v.name);
    v.theory = theory.slopes.at(static_cast<std::size_t>(n - 1));
    v.lower = v.theory * (1.0 - tol.lower);
    v.upper = std::numeric_limits<double>::infinity();
    if (v.theory == 0.0) {
      v.bound_pass = v.measured >= -zero_slope_tolerance;
      v.match_pass = close_to_zero(v.measured);
    } else {
      v.bound_pass = v.measured >= v.lower;
      v.match_pass = std::abs(v.measured - v.theory) <= tol.match * v.theory;
    }
    out.all_pass = out.all_pass && v.pass();
    out.traces.push_back(std::move(v));
  }

  Verdict& o = out.overlap;
  o.name = "minus_ln_abs_S";
  o.formula = "gamma(E)/2, gamma = pi^-2 sum_j arcsin(|sin delta_j|)^2; bound [gamma1/2 (1-tol), gamma/2 (1+tol)]";
  o.measured = measured(o.name);
  o.theory = 0.5 * theory.gamma;
  o.lower = 0.5 * theory.gamma1 * (1.0 - tol.lower);
  o.upper = 0.5 * theory.gamma * (1.0 + tol.lower);
  if (o.theory == 0.0) {
    o.bound_pass = close_to_zero(o.measured);
    o.match_pass = close_to_zero(o.measured);
  } else {
    o.bound_pass = o.measured >= o.lower && o.measured <= o.upper;
    o.match_pass = std::abs(o.measured - o.theory) <= tol.match * o.theory;
  }
  out.all_pass = out.all_pass && o.pass();
  return out;
}

SweepReport run_pipeline(const RunConfig& config) {
  SweepReport rep;
  rep.config = config;
  rep.sweep = run_sweep(config);
  rep.window = config.effective_window();
  for (const auto& name : column_names(config.n_max)) {
    if (name == "L" || name == "N" || name == "xi" || name == "lnL") continue;
    rep.fits[name] = fit_exponent(rep.sweep.rows, name, rep.window);
  }

  const double e = rep.sweep.energy.used;
  if (has_scattering_theory(config.potential, e)) {
    rep.theory = predict(s_matrix(config.potential, e), config.n_max);
    rep.comparison = compare_to_theory(rep.fits, *rep.theory, config.n_max, config.tolerances);
  }
  return rep;
}

std::string to_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << kCsvSchema << '\n';
  const auto names = column_names(sweep.n_max);
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << '\n';
  for (const auto& row : sweep.rows) {
    os << row.length << ',' << row.particles << ',' << row.xi << ',' << format_double(row.ln_length)
       << ',' << format_double(row.minus_ln_abs_overlap);
    for (double t : row.terms) os << ',' << format_double(t);
    for (double f : row.f_terms) os << ',' << format_double(f);
    os << '\n';
  }
  return os.str();
}

std::string to_json(const SweepReport& report) {
  json rows = json::array();
  for (const auto& row : report.sweep.rows) {
    rows.push_back({{"L", row.length},
                    {"N", row.particles},
                    {"xi", row.xi},
                    {"lnL", row.ln_length},
                    {"minus_ln_abs_S", row.minus_ln_abs_overlap},
                    {"terms", row.terms},
                    {"F", row.f_terms}});
  }
  json fits = json::object();
  for (const auto& [name, f] : report.fits) fits[name] = fit_json(f);

  json theory = nullptr;
  json verdicts = json::object();
  if (report.theory) {
    theory = {{"gamma", report.theory->gamma},
              {"gamma1", report.theory->gamma1},
              {"eta", report.theory->eta},
              {"slopes", report.theory->slopes},
              {"formulas",
               {{"gamma", "pi^-2 sum_j arcsin(|sin delta_j|)^2"},
                {"gamma1", "pi^-2 sum_j sin(delta_j)^2"},
                {"eta", "pi^-2n sum_j |sin delta_j|^2n"},
                {"slopes", "n * J_2n * eta_2n(E)"}}}};
  }
  if (report.comparison) {
    for (const auto& v : report.comparison->traces) verdicts[v.name] = verdict_json(v);
    verdicts[report.comparison->overlap.name] = verdict_json(report.comparison->overlap);
    verdicts["all_pass"] = report.comparison->all_pass;
  }
  const json doc = {{"schema", "ocat-sweep v1"},
                    {"config", config_json(report.config)},
                    {"columns", column_names(report.sweep.n_max)},
                    {"rows", rows},
                    {"fit_window", {report.window.min_length, report.window.max_length}},
                    {"fits", fits},
                    {"theory", theory},
                    {"verdicts", verdicts},
                    {"nudged_energy",
                     {{"requested", report.sweep.energy.requested},
                      {"used", report.sweep.energy.used},
                      {"nudged", report.sweep.energy.nudged}}}};
  return doc.dump(2) + "\n";
}

void write_report(const SweepReport& report) {
  const auto& out = report.config.output;
  if (out.path.empty()) return;
  std::ofstream f(out.path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot open output file '" + out.path + "'");
  f << (out.format == OutputFormat::csv ? to_csv(report.sweep) : to_json(report));
  if (!f) throw ConfigError("failed writing output file '" + out.path + "'");
}

}  // namespace ocat
