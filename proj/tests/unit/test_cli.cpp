// Copyright 2026 The ocat Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace ocat::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "ocat_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Cli, Constants) {
  const auto r = run_cli({"constants"});
  EXPECT_EQ(r.code, exit_pass);
  EXPECT_NE(r.out.find("[PASS] J_2 = 1"), std::string::npos);
  EXPECT_NE(r.out.find("[PASS] I_4 = 2 pi^2/3: 6.57973626739"), std::string::npos);
  EXPECT_EQ(r.out.find("[FAIL]"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, exit_usage);
  EXPECT_EQ(run_cli({"nonsense"}).code, exit_usage);
  const auto bad_flag = run_cli({"constants", "--bogus"});
  EXPECT_EQ(bad_flag.code, exit_usage);
  EXPECT_NE(bad_flag.err.find("--bogus"), std::string::npos);
  EXPECT_EQ(run_cli({"scattering", "--v", "1"}).code, exit_usage);
  EXPECT_EQ(run_cli({"scattering", "--v", "1", "--energy", "4.5"}).code, exit_usage);
  EXPECT_EQ(run_cli({"scattering", "--v", "-1", "--energy", "2"}).code, exit_usage);
  EXPECT_EQ(run_cli({"overlap", "--length", "10", "--energy", "2", "--sites", "0=1"}).code,
            exit_usage);
  EXPECT_EQ(run_cli({"overlap", "--length", "10", "--energy", "2", "--sites", "40:1"}).code,
            exit_usage);
  EXPECT_EQ(run_cli({"sweep", "--config", "/nonexistent/ocat.json"}).code, exit_usage);
  EXPECT_EQ(run_cli({"--help"}).code, exit_pass);
}

TEST(Cli, ScatteringJson) {
  const auto r = run_cli({"scattering", "--v", "2", "--energy", "2", "--n-max", "2", "--json"});
  ASSERT_EQ(r.code, exit_pass);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["gamma"].get<double>(), 0.0625, 1e-12);
  EXPECT_NEAR(doc["t"][0].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(doc["t"][1].get<double>(), -0.5, 1e-12);
  EXPECT_EQ(doc["eta"].size(), 2u);
}

TEST(Cli, ScatteringText) {
  const auto r = run_cli({"scattering", "--sites", "-1:1,1:1", "--energy", "1"});
  EXPECT_EQ(r.code, exit_pass);
  EXPECT_NE(r.out.find("gamma1"), std::string::npos);
}

TEST(Cli, Overlap) {
  const auto r = run_cli({"overlap", "--length", "120", "--v", "2", "--energy", "2"});
  EXPECT_EQ(r.code, exit_pass) << r.out;
  EXPECT_NE(r.out.find("eigenvalue-equation identity"), std::string::npos);
  const auto j = run_cli({"overlap", "--length", "60", "--sites", "0:1,2:3", "--energy", "1.2",
                          "--background", "zero", "--json"});
  ASSERT_EQ(j.code, exit_pass) << j.out;
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_TRUE(doc["checks"][0]["pass"].get<bool>());
  EXPECT_EQ(doc["L"], 60);
  EXPECT_EQ(doc["F_terms"].size(), 4u);
}

TEST(Cli, Kernel) {
  const auto r = run_cli({"kernel"});
  EXPECT_EQ(r.code, exit_pass) << r.out;
  EXPECT_NE(r.out.find("d=3"), std::string::npos);
}

TEST(Cli, VerifyQuick) {
  const auto r = run_cli({"verify", "--hilbert-size", "1000", "--hilbert-max-n", "3",
                          "--samples", "20000", "--series-order", "50"});
  EXPECT_EQ(r.code, exit_pass) << r.out;
}

TEST(Cli, SweepFreeChainExitsZero) {
  const auto out = fs::temp_directory_path() / "ocat_cli_test" / "free.csv";
  const auto cfg = write_temp("free.json", R"({"model": {"lengths": [20, 40, 80],
      "perturbation": [[0, 0.0]], "energy": 1.3}, "output": {"path": ")" + out.string() +
                                               R"(", "format": "csv"}})");
  const auto r = run_cli({"sweep", "--config", cfg.string()});
  EXPECT_EQ(r.code, exit_pass) << r.out << r.err;
  EXPECT_EQ(slurp(out).rfind("# ocat-sweep v1", 0), 0u);
}

TEST(Cli, SweepMalformedConfigExitsTwo) {
  const auto cfg = write_temp("bad.json", R"({"model.lengths": [40, 20], "model.energy": 2})");
  const auto r = run_cli({"sweep", "--config", cfg.string()});
  EXPECT_EQ(r.code, exit_usage);
  EXPECT_NE(r.err.find("strictly increasing"), std::string::npos);
  const auto unk = write_temp("unknown.json",
                              R"({"model.lengths": [20, 40], "model.energy": 2, "extra": 1})");
  const auto u = run_cli({"sweep", "--config", unk.string()});
  EXPECT_EQ(u.code, exit_usage);
  EXPECT_NE(u.err.find("'extra'"), std::string::npos);
}

TEST(Cli, SweepFailedVerdictExitsOne) {
  // tolerances of zero cannot be met by a finite-size fit
  const auto cfg = write_temp("strict.json", R"({"model.lengths": [40, 80], "model.energy": 2,
      "model.perturbation": [[0, 2.0]], "tolerances.lower": 0, "tolerances.match": 0})");
  const auto r = run_cli({"sweep", "--config", cfg.string()});
  EXPECT_EQ(r.code, exit_fail);
  EXPECT_NE(r.out.find("[FAIL]"), std::string::npos);
}

TEST(Cli, SweepOutputOverridesAndDeterminism) {
  const auto dir = fs::temp_directory_path() / "ocat_cli_test";
  const auto cfg = write_temp("det.json", R"({"model.lengths": [30, 60, 90], "model.energy": 2,
      "model.perturbation": [[0, 2.0]], "series.n_max": 2})");
  const auto out = dir / "det_out.json";
  const std::vector<std::string> args{"sweep", "--config", cfg.string(), "--output", out.string(),
                                      "--format", "json"};
  ASSERT_EQ(run_cli(args).code, exit_pass);
  const std::string first = slurp(out);
  fs::remove(out);
  ASSERT_EQ(run_cli(args).code, exit_pass);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, slurp(out));
  EXPECT_EQ(nlohmann::json::parse(first)["config"]["output"]["path"], out.string());
  EXPECT_EQ(run_cli({"sweep", "--config", cfg.string(), "--format", "yaml"}).code, exit_usage);
}

}  // namespace
}  // namespace ocat::cli
