// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include "ocat/lattice_models.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "ocat/errors.hpp"

namespace ocat {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Background Background::periodic(std::vector<double> pattern) {
  if (pattern.empty()) throw ConfigError("periodic background needs at least one value");
  for (double p : pattern) {
    if (!std::isfinite(p)) throw ValidationError("background values must be finite");
  }
  Background b;
  b.kind_ = Kind::periodic;
  b.values_ = std::move(pattern);
  return b;
}

Background Background::explicit_sites(std::vector<double> values) {
  for (double p : values) {
    if (!std::isfinite(p)) throw ValidationError("background values must be finite");
  }
  Background b;
  b.kind_ = Kind::explicit_sites;
  b.values_ = std::move(values);
  return b;
}

Background Background::parse(std::string_view profile) {
  profile = trim(profile);
  if (profile == "zero") return zero();
  constexpr std::string_view head = "periodic(";
  if (profile.substr(0, head.size()) == head && profile.back() == ')') {
    std::string_view body = profile.substr(head.size(), profile.size() - head.size() - 1);
    std::vector<double> pattern;
    while (!body.empty()) {
      const auto comma = body.find(',');
      pattern.push_back(parse_double(body.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return periodic(std::move(pattern));
  }
  throw ConfigError("unknown background profile '" + std::string(profile) + "'");
}

bool Background::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double Background::at(int site, int length) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::periodic:
      return values_[static_cast<std::size_t>(site - 1) % values_.size()];
    case Kind::explicit_sites:
      if (static_cast<int>(values_.size()) != length) {
        throw ConfigError("explicit background has " + std::to_string(values_.size()) +
                          " values but the chain has " + std::to_string(length) + " sites");
      }
      return values_[static_cast<std::size_t>(site - 1)];
  }
  return 0.0;
}

std::string Background::describe() const {
  if (kind_ == Kind::zero) return "zero";
  std::ostringstream os;
  os.precision(17);
  os << (kind_ == Kind::periodic ? "periodic(" : "explicit(");
  for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
  os << ')';
  return os.str();
}

void PotentialSpec::validate() const {
  std::set<int> seen;
  for (const auto& p : perturbation) {
    if (!std::isfinite(p.value)) {
      throw ValidationError("perturbation at site " + std::to_string(p.site) + " is not finite");
    }
    if (p.value < 0.0) {
      throw ValidationError("perturbation at site " + std::to_string(p.site) +
                            " is negative; V must be non-negative");
    }
    if (!seen.insert(p.site).second) {
      throw ConfigError("perturbation site " + std::to_string(p.site) + " given twice");
    }
  }
}

bool PotentialSpec::has_perturbation() const {
  return std::any_of(perturbation.begin(), perturbation.end(),
                     [](const PerturbationSite& p) { return p.value != 0.0; });
}

int center_site(int length) { return length / 2 + 1; }

std::vector<SiteValue> perturbation_on_chain(const ModelConfig& config, const PotentialSpec& pot) {
  pot.validate();
  const int base = pot.anchor == Anchor::center ? center_site(config.length) : 0;
  std::vector<SiteValue> out;
  out.reserve(pot.perturbation.size());
  for (const auto& p : pot.perturbation) {
    const int site = base + p.site;
    if (site < 1 || site > config.length) {
      throw ConfigError("perturbation site " + std::to_string(site) + " outside chain [1, " +
                        std::to_string(config.length) + "]");
    }
    out.push_back({site - 1, p.value});
  }
  std::sort(out.begin(), out.end(),
            [](const SiteValue& a, const SiteValue& b) { return a.index < b.index; });
  return out;
}

TridiagonalHamiltonian build_hamiltonian(const ModelConfig& config, const PotentialSpec& pot,
                                         bool with_perturbation) {
  if (config.length < 2) {
    throw ConfigError("chain length must be >= 2, got " + std::to_string(config.length));
  }
  // V is checked against the chain even when it is not applied.
  const auto v = perturbation_on_chain(config, pot);

  TridiagonalHamiltonian h;
  h.diag.resize(static_cast<std::size_t>(config.length));
  h.offdiag.assign(static_cast<std::size_t>(config.length - 1), -1.0);
  for (int i = 0; i < config.length; ++i) {
    h.diag[i] = ModelConfig::diagonal_shift + pot.background.at(i + 1, config.length);
  }
  if (with_perturbation) {
    for (const auto& s : v) h.diag[s.index] += s.value;
  }
  return h;
}

}  // namespace ocat
