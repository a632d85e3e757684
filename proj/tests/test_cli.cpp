/*
 * Copyright 2026 The lmwave Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lmw_cli/cli.h"

namespace fs = std::filesystem;
using namespace lmw::cli;

namespace {

struct Result {
  int code;
  std::string out;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "lmw");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  const int code = run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, out.str() + err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(LMW_BINARY_DIR) / "cli_scratch" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const auto p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
  for (const auto& e : errors)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("usage and exit codes") {
  CHECK(invoke({}).code == kUsage);
  const auto help = invoke({"--help"});
  CHECK(help.code == kOk);
  CHECK(help.out.find("scaling") != std::string::npos);
  CHECK(invoke({"frobnicate"}).code == kUsage);
  CHECK(invoke({"synth", "--no-such-flag", "1"}).code == kConfigError);
}

TEST_CASE("config validation") {
  const auto dir = scratch("validate");
  auto r = validate_config(write_config(dir, R"({"d": 0.6})").string());
  CHECK_FALSE(r.config.has_value());
  CHECK(mentions(r.errors, "0<d<1/2"));

  r = validate_config(write_config(dir, R"({"K": 2, "bank": "haar"})").string());
  CHECK(mentions(r.errors, "M >= K"));

  r = validate_config(write_config(dir, "").string());
  REQUIRE(r.errors.size() == 1);
  CHECK(mentions(r.errors, "empty"));

  r = validate_config(write_config(dir, R"({"dd": 0.3})").string());
  CHECK(mentions(r.errors, "dd"));

  r = validate_config(write_config(dir, R"({"d": 0.6, "K": -1})").string());
  CHECK(r.errors.size() >= 2);

  r = validate_config(write_config(dir, R"({"d": 0.3, "G": "square", "replicates": 5})").string());
  REQUIRE(r.config.has_value());
  CHECK(r.config->d == 0.3);
  CHECK(r.config->provenance.at("d") == "config");
  CHECK(r.config->provenance.at("bank") == "default");
  CHECK(r.config->bank == "haar");

  const auto code = invoke({"synth", "--config", write_config(dir, "").string()}).code;
  CHECK(code == kConfigError);
}

TEST_CASE("flags override the config file and the environment sets the output directory") {
  auto r = resolve_config("synth", nlohmann::json{{"d", 0.3}}, nlohmann::json{{"d", 0.25}});
  REQUIRE(r.config.has_value());
  CHECK(r.config->d == 0.25);
  CHECK(r.config->provenance.at("d") == "flag");

  const auto dir = scratch("env");
  ::setenv("LMW_OUTPUT_DIR", dir.c_str(), 1);
  r = resolve_config("synth", nullptr, nlohmann::json::object());
  ::unsetenv("LMW_OUTPUT_DIR");
  REQUIRE(r.config.has_value());
  CHECK(r.config->output_dir == dir.string());
  CHECK(r.config->provenance.at("output_dir") == "env");
}

TEST_CASE("synth and spectrum artifacts are reproducible") {
  const auto dir = scratch("synth");
  const std::vector<std::string> args{"synth", "--n", "512", "--d", "0.3", "--G", "square", "--K", "1",
                                      "--seed", "4", "--out", dir.string()};
  auto r = invoke(args);
  REQUIRE(r.code == kOk);
  CHECK(r.out.find("\"status\":\"ok\"") != std::string::npos);
  const auto first = slurp(dir / "series.csv");
  CHECK(first.rfind("# {", 0) == 0);
  CHECK(first.find("\"seed\":4") != std::string::npos);
  CHECK(first.find("\nindex,x,y\n") != std::string::npos);
  REQUIRE(invoke(args).code == kOk);
  CHECK(slurp(dir / "series.csv") == first);

  r = invoke({"spectrum", "--d", "0.35", "--q", "2", "--out", dir.string()});
  REQUIRE(r.code == kOk);
  const auto spec = slurp(dir / "spectrum.csv");
  CHECK(spec.find("lambda,value,scaled") != std::string::npos);
}

TEST_CASE("filter, coefficient and limit commands") {
  const auto dir = scratch("commands");
  REQUIRE(invoke({"filters-check", "--bank", "db2", "--J", "9", "--out", dir.string()}).code == kOk);
  CHECK(fs::exists(dir / "filters.txt"));
  CHECK(slurp(dir / "transfer.csv").find("lambda,j,abs_hhat") != std::string::npos);

  REQUIRE(invoke({"coeffs", "--n", "2048", "--J", "5", "--j1", "1", "--j2", "5", "--out", dir.string()}).code == kOk);
  CHECK(slurp(dir / "coeffs.csv").find("j,k,w") != std::string::npos);
  CHECK(fs::exists(dir / "coeffs_summary.json"));

  REQUIRE(invoke({"limit-cov", "--q", "1", "--K", "1", "--m-max", "1", "--lags", "1", "--out", dir.string()}).code ==
          kOk);
  CHECK(slurp(dir / "limit_cov.csv").find("m,k,mp,kp,cov,err") != std::string::npos);

  CHECK(invoke({"limit-cov", "--q", "3", "--d", "0.3", "--out", dir.string()}).code == kConfigError);
}

TEST_CASE("scaling and estimation commands") {
  const auto dir = scratch("scaling");
  auto r = invoke({"scaling", "--n", "4096", "--replicates", "4", "--j1", "2", "--j2", "5", "--out", dir.string()});
  REQUIRE(r.code == kOk);
  const auto js = nlohmann::json::parse(slurp(dir / "scaling.json"));
  CHECK(js.contains("config"));
  CHECK(js.at("seed") == 1);
  CHECK(js.at("result").contains("slope"));
  CHECK(fs::exists(dir / "scaling.csv"));

  r = invoke({"short-range", "--d", "0.2", "--G", "square", "--n", "4096", "--replicates", "4", "--j1", "2",
              "--j2", "5", "--out", dir.string()});
  REQUIRE(r.code == kOk);
  CHECK(nlohmann::json::parse(slurp(dir / "short_range.json")).at("result").at("regime") == "short-range");

  REQUIRE(invoke({"synth", "--n", "8192", "--out", dir.string()}).code == kOk);
  r = invoke({"estimate", "--input", (dir / "series.csv").string(), "--j1", "3", "--j2", "7", "--out",
              dir.string()});
  REQUIRE(r.code == kOk);
  const auto est = nlohmann::json::parse(slurp(dir / "estimate.json")).at("result");
  CHECK(est.at("replicates") == 1);
  CHECK(est.at("estimate").get<double>() > 0.0);
}
