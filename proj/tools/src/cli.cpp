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

#include "lmw_cli/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "lmw/errors.h"
#include "lmw/filters.h"
#include "lmw/hermite.h"
#include "lmw/limit.h"
#include "lmw/mc.h"
#include "lmw/spectra.h"
#include "lmw/synth.h"
#include "lmw/transform.h"

namespace lmw::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string> kCommands{"synth",  "spectrum",    "filters-check", "coeffs",
                                         "scaling", "short-range", "limit-cov",     "estimate"};

const std::set<std::string> kKeys{"d",     "fstar",      "phi",  "normalize", "G",        "K",
                                  "bank",  "J",          "n",    "replicates", "j1",      "j2",
                                  "seed",  "q",          "lags", "m_max",     "threads", "tolerance_band",
                                  "output_dir", "input"};

std::string usage() {
  return "usage: lmw <command> [--config FILE] [options]\n"
         "\n"
         "commands:\n"
         "  synth          simulate one subordinated path (series.csv)\n"
         "  spectrum       q-fold self-convolution of the spectral density (spectrum.csv)\n"
         "  filters-check  build a wavelet bank and check its bounds (filters.txt, transfer.csv)\n"
         "  coeffs         wavelet coefficients of a simulated path (coeffs.csv)\n"
         "  scaling        Monte Carlo scaling of wavelet variances, long-range regime\n"
         "  short-range    Monte Carlo scaling, either regime\n"
         "  limit-cov      covariance block of the limit field (limit_cov.csv)\n"
         "  estimate       log-variance regression estimate of d(q0)+K\n"
         "\n"
         "Run `lmw <command> --help` for options. Artifacts go to --out, else $LMW_OUTPUT_DIR, else '.'.\n";
}

// Reads `key` from `src` into `dst`, recording provenance; type mismatches become errors.
template <class T>
void take(const json& src, const std::string& key, const std::string& origin, T& dst,
          RunConfig& cfg, std::vector<std::string>& errors) {
  if (!src.contains(key)) return;
  try {
    dst = src.at(key).get<T>();
    cfg.provenance[key] = origin;
  } catch (const json::exception&) {
    errors.push_back("key '" + key + "' has the wrong type");
  }
}

void apply(const json& src, const std::string& origin, RunConfig& c, std::vector<std::string>& errors) {
  if (!src.is_object()) {
    errors.push_back("configuration must be a JSON object");
    return;
  }
  for (const auto& [k, v] : src.items())
    if (!kKeys.count(k)) errors.push_back("unknown configuration key '" + k + "'");
  take(src, "d", origin, c.d, c, errors);
  take(src, "fstar", origin, c.fstar, c, errors);
  take(src, "phi", origin, c.phi, c, errors);
  take(src, "normalize", origin, c.normalize, c, errors);
  take(src, "G", origin, c.G, c, errors);
  take(src, "K", origin, c.K, c, errors);
  take(src, "bank", origin, c.bank, c, errors);
  take(src, "J", origin, c.J, c, errors);
  take(src, "n", origin, c.n, c, errors);
  take(src, "replicates", origin, c.replicates, c, errors);
  take(src, "j1", origin, c.j1, c, errors);
  take(src, "j2", origin, c.j2, c, errors);
  take(src, "seed", origin, c.seed, c, errors);
  take(src, "q", origin, c.q, c, errors);
  take(src, "lags", origin, c.lags, c, errors);
  take(src, "m_max", origin, c.m_max, c, errors);
  take(src, "threads", origin, c.threads, c, errors);
  take(src, "output_dir", origin, c.output_dir, c, errors);
  take(src, "input", origin, c.input, c, errors);
  if (src.contains("tolerance_band")) {
    double b = 0.0;
    take(src, "tolerance_band", origin, b, c, errors);
    c.tolerance_band = b;
  }
}

void check(RunConfig& c, std::vector<std::string>& errors) {
  const std::string& cmd = c.command;
  const bool needs_memory = cmd == "scaling" || cmd == "limit-cov" || cmd == "spectrum";
  if (!(c.d >= 0.0 && c.d < 0.5) || (needs_memory && c.d == 0.0)) {
    std::ostringstream m;
    m << "d=" << c.d << " violates 0<d<1/2 (memory parameter of the spectral density)";
    errors.push_back(m.str());
  }
  if (c.fstar != "farima" && c.fstar != "arfima1")
    errors.push_back("fstar '" + c.fstar + "' unknown (farima, arfima1)");
  if (!(std::abs(c.phi) < 1.0)) errors.push_back("phi must satisfy |phi|<1 for a bounded f*");

  int q0 = 0;
  try {
    const auto g = make_filter(c.G);
    q0 = hermite_coeffs(g.fn).rank;
  } catch (const std::exception& e) {
    errors.push_back("G '" + c.G + "': " + e.what());
  }

  int M = 0;
  try {
    M = build_family_bank(c.bank, 1).M;
  } catch (const std::exception& e) {
    errors.push_back("bank: " + std::string(e.what()));
  }
  if (c.K < 0) errors.push_back("K=" + std::to_string(c.K) + " violates K >= 0");
  if (M > 0 && c.K > M)
    errors.push_back("K=" + std::to_string(c.K) + " exceeds the M=" + std::to_string(M) +
                     " vanishing moments of bank '" + c.bank + "' (requires M >= K)");
  if (c.J < 1 || c.J > 20) errors.push_back("J=" + std::to_string(c.J) + " outside 1..20");
  if (c.j1 < 1 || c.j2 < c.j1 || c.j2 > c.J)
    errors.push_back("scale range j1=" + std::to_string(c.j1) + ", j2=" + std::to_string(c.j2) +
                     " must satisfy 1 <= j1 <= j2 <= J");
  if (cmd == "estimate" && c.j2 < c.j1 + 2)
    errors.push_back("estimate needs at least 3 scales (j2 >= j1 + 2)");
  if (c.n < 16 || c.n > (std::size_t{1} << 26)) errors.push_back("n=" + std::to_string(c.n) + " outside 16..2^26");
  if (c.replicates < 1) errors.push_back("replicates must be >= 1");
  if (c.q < 1 || c.q > 12) errors.push_back("q=" + std::to_string(c.q) + " outside 1..12");
  if (c.lags.empty()) errors.push_back("lags must be non-empty");
  for (long l : c.lags)
    if (l < 1) errors.push_back("lags must be >= 1");
  if (c.m_max < 0 || c.m_max > 6) errors.push_back("m_max outside 0..6");
  if (c.threads < 0) errors.push_back("threads must be >= 0");
  if (c.tolerance_band && !(*c.tolerance_band > 0.0)) errors.push_back("tolerance_band must be positive");

  if (c.d > 0.0 && c.d < 0.5) {
    const int qc = critical_order(c.d);
    if (cmd == "scaling" && q0 > qc)
      errors.push_back("Hermite rank q0=" + std::to_string(q0) + " exceeds q_c=" + std::to_string(qc) +
                       " (q < 1/(1-2d) fails); use short-range");
    if (cmd == "limit-cov" && c.q > qc)
      errors.push_back("q=" + std::to_string(c.q) + " violates q < 1/(1-2d) (q_c=" + std::to_string(qc) + ")");
  }
}

MemoryModel make_model(const RunConfig& c) {
  if (c.fstar == "arfima1") {
    if (c.normalize) return MemoryModel::arfima1(c.d, c.phi);
    const double phi = c.phi;
    return MemoryModel(
        c.d, [phi](double l) { return 1.0 / (1.0 - 2.0 * phi * std::cos(l) + phi * phi); },
        "arfima1-raw", false);
  }
  return MemoryModel::farima(c.d);
}

class Artifacts {
 public:
  explicit Artifacts(const RunConfig& c) : dir_(c.output_dir), header_(json{{"config", c.to_json()}, {"seed", c.seed}}) {
    fs::create_directories(dir_);
  }

  // CSV with a leading `# {config}` line.
  void csv(const std::string& name, const std::string& body) {
    write(name, "# " + header_.dump() + "\n" + body);
  }
  void text(const std::string& name, const std::string& body) { write(name, body); }
  void json_file(const std::string& name, const json& result) {
    json j = header_;
    j["result"] = result;
    write(name, j.dump(2) + "\n");
  }
  const std::vector<std::string>& paths() const { return paths_; }
  std::string header_line() const { return "# " + header_.dump() + "\n"; }

 private:
  void write(const std::string& name, const std::string& body) {
    const fs::path p = fs::path(dir_) / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << body;
    paths_.push_back(p.string());
  }
  std::string dir_;
  json header_;
  std::vector<std::string> paths_;
};

json cmd_synth(const RunConfig& c, Artifacts& out) {
  const PathConfig pc{make_model(c), make_filter(c.G), c.K, c.n, c.seed, 0};
  const auto path = sample_path(pc);
  std::ostringstream os;
  write_series_csv(os, path.x, path.y);
  out.csv("series.csv", os.str());
  double s0 = 0, s1 = 0;
  for (std::size_t i = 0; i < path.x.size(); ++i) {
    s0 += path.x[i] * path.x[i];
    if (i + 1 < path.x.size()) s1 += path.x[i] * path.x[i + 1];
  }
  return {{"n", c.n}, {"lag1_autocorrelation", s1 / s0}, {"model", pc.model.name()}};
}

json cmd_spectrum(const RunConfig& c, Artifacts& out) {
  const auto model = make_model(c);
  const auto conv = self_convolve(model, c.q);
  const double dq = memory_param(c.d, c.q);
  const double e = dq > 0.0 ? 2.0 * dq : 0.0;
  std::ostringstream os;
  os << std::setprecision(12) << "lambda,value,scaled\n";
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = conv.zero_index() + 1; i < conv.size(); ++i) {
    const double l = conv.lambda(i), v = conv.values[i], s = std::pow(l, e) * v;
    os << l << ',' << v << ',' << s << '\n';
    if (l >= 1e-3 && l <= 1e-2) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  out.csv("spectrum.csv", os.str());
  return {{"q", c.q},
          {"d_q", dq},
          {"regime", dq > 0.0 ? "long-range" : "short-range"},
          {"scaling_exponent", e},
          {"scaled_variation_1e-3_1e-2", (hi - lo) / lo},
          {"value_near_zero", conv.values[conv.zero_index() + 1]}};
}

json cmd_filters(const RunConfig& c, Artifacts& out, int& code) {
  const auto bank = build_family_bank(c.bank, c.J).with_K(c.K);
  const auto grid = default_smoothness_grid();
  const auto rep = check_uniform_smoothness(bank, grid);
  double disc = 0.0;
  for (double l : {1.0, 4.0, 8.0, 16.0, 32.0}) disc = std::max(disc, limit_transfer(bank, l).discrepancy);
  std::ostringstream fo;
  write_filter_file(fo, bank);
  fo << out.header_line();
  out.text("filters.txt", fo.str());
  std::vector<double> lam;
  for (int i = 1; i <= 512; ++i) lam.push_back(std::numbers::pi * i / 512.0);
  std::ostringstream to;
  write_transfer_csv(to, bank, lam);
  out.csv("transfer.csv", to.str());
  json supports = json::array();
  for (const auto& lv : bank.levels) supports.push_back(lv.support());
  if (!rep.stable) code = kNumericError;
  return {{"bank", c.bank},
          {"J", c.J},
          {"M", bank.M},
          {"K", bank.K},
          {"alpha", bank.alpha},
          {"c_hat", rep.c_hat},
          {"c_hat_per_level", rep.running},
          {"stable", rep.stable},
          {"growth_exponent", rep.growth_exponent},
          {"supports", supports},
          {"limit_transfer_discrepancy", disc}};
}

json cmd_coeffs(const RunConfig& c, Artifacts& out) {
  const PathConfig pc{make_model(c), make_filter(c.G), c.K, c.n, c.seed, 0};
  const auto path = sample_path(pc);
  const auto bank = build_family_bank(c.bank, c.J);
  const auto cm = coeffs_from_path(bank, path.y, JRange{c.j1, c.j2});
  std::ostringstream os;
  write_coeffs_csv(os, cm);
  out.csv("coeffs.csv", os.str());
  const json summary = json::parse(summary_json(cm));
  out.json_file("coeffs_summary.json", summary);
  return {{"levels", summary}, {"warnings", cm.warnings}};
}

json cmd_scaling(const RunConfig& c, Artifacts& out, bool short_range) {
  const PathConfig pc{make_model(c), make_filter(c.G), c.K, c.n, c.seed, 0};
  const auto bank = build_family_bank(c.bank, c.J);
  McOptions opt;
  opt.threads = c.threads;
  opt.tolerance_band = c.tolerance_band;
  opt.keep_top_coeffs = true;
  const auto rep = short_range ? short_range_experiment(pc, bank, JRange{c.j1, c.j2}, c.replicates, opt)
                               : scaling_experiment(pc, bank, JRange{c.j1, c.j2}, c.replicates, opt);
  const auto gauss = gaussianity_check(rep.top_coeffs, rep.q0);
  json r = json::parse(rep.to_json());
  r["gaussianity"] = json::parse(gauss.to_json());
  const std::string stem = short_range ? "short_range" : "scaling";
  out.json_file(stem + ".json", r);
  std::ostringstream os;
  rep.write_csv(os);
  out.csv(stem + ".csv", os.str());
  json s{{"regime", rep.regime},
         {"slope", rep.slope},
         {"ci", {rep.ci.lo, rep.ci.hi}},
         {"target", rep.target},
         {"ci_contains_target", rep.ci_contains_target}};
  if (rep.band) s["band_contains_target"] = rep.band_contains_target;
  if (rep.normalization) s["normalization_selected"] = rep.normalization->selected;
  return s;
}

json cmd_limit_cov(const RunConfig& c, Artifacts& out) {
  LimitSpec spec;
  spec.q = c.q;
  spec.d = c.d;
  spec.K = c.K;
  spec.hinf = std::make_shared<LimitTransfer>(build_family_bank(c.bank, c.J));
  std::vector<std::pair<int, long>> index;
  for (int m = 0; m <= c.m_max; ++m) {
    index.emplace_back(m, 0);
    for (long l : c.lags) index.emplace_back(m, l);
  }
  const auto block = limit_cov_block(spec, index);
  std::ostringstream os;
  write_limit_cov_csv(os, block);
  out.csv("limit_cov.csv", os.str());
  return {{"q", c.q},
          {"K", c.K},
          {"H", ss_exponent(c.q, c.d, c.K)},
          {"size", block.size()},
          {"var_00", block.at(0, 0)},
          {"min_eigenvalue", block.min_eigenvalue},
          {"psd", block.psd()}};
}

std::vector<double> read_series(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read input series " + path);
  std::string line;
  std::vector<double> y;
  int col = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (col < 0) {
      const auto it = std::find(cells.begin(), cells.end(), "y");
      if (it != cells.end()) {
        col = static_cast<int>(it - cells.begin());
        continue;
      }
      col = static_cast<int>(cells.size()) - 1;
      try {
        std::stod(cells.back());
      } catch (const std::exception&) {
        continue;
      }
    }
    y.push_back(std::stod(cells.at(static_cast<std::size_t>(col))));
  }
  return y;
}

json cmd_estimate(const RunConfig& c, Artifacts& out) {
  const auto bank = build_family_bank(c.bank, c.J);
  std::vector<CoeffMatrix> cms;
  if (!c.input.empty()) {
    cms.push_back(coeffs_from_path(bank, read_series(c.input), JRange{c.j1, c.j2}));
  } else {
    const auto filter = make_filter(c.G);
    const CirculantSynthesizer synth(make_model(c), c.n);
    const auto bk = bank.with_K(c.K);
    for (int r = 0; r < c.replicates; ++r) {
      const auto g = subordinate(filter, synth.sample(c.seed, static_cast<std::uint64_t>(r)));
      cms.push_back(coeffs_from_stationary(bk, g, JRange{c.j1, c.j2}));
    }
  }
  const auto est = estimate_memory(cms, c.j1, c.j2, c.seed);
  const json r{{"estimate", est.estimate},
               {"ci", {est.ci.lo, est.ci.hi}},
               {"scales", est.scales},
               {"replicates", cms.size()},
               {"estimand", "d(q0)+K"}};
  out.json_file("estimate.json", r);
  return r;
}

void print_summary(const std::string& cmd, const std::string& status, json body) {
  body["command"] = cmd;
  body["status"] = status;
  std::cout << body.dump() << std::endl;
}

}  // namespace

json RunConfig::to_json() const {
  json j{{"command", command}, {"d", d},       {"fstar", fstar},   {"phi", phi},     {"normalize", normalize},
         {"G", G},             {"K", K},       {"bank", bank},     {"J", J},         {"n", n},
         {"replicates", replicates}, {"j1", j1}, {"j2", j2},       {"seed", seed},   {"q", q},
         {"lags", lags},       {"m_max", m_max}, {"threads", threads}, {"input", input},
         {"provenance", provenance}};
  if (tolerance_band) j["tolerance_band"] = *tolerance_band;
  return j;
}

ConfigResult resolve_config(const std::string& command, const json& file_values, const json& overrides) {
  RunConfig c;
  c.command = command;
  for (const auto& k : kKeys) c.provenance[k] = "default";
  if (const char* env = std::getenv("LMW_OUTPUT_DIR"); env && *env) {
    c.output_dir = env;
    c.provenance["output_dir"] = "env";
  }
  ConfigResult res;
  if (!file_values.is_null()) apply(file_values, "config", c, res.errors);
  apply(overrides, "flag", c, res.errors);
  check(c, res.errors);
  if (res.errors.empty()) res.config = c;
  return res;
}

namespace {

// Parses a config file; returns an error message on failure.
std::optional<std::string> load_config(const std::string& path, json& out) {
  std::ifstream is(path);
  if (!is) return "cannot read config file '" + path + "'";
  std::stringstream ss;
  ss << is.rdbuf();
  const std::string text = ss.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return "config file '" + path + "' is empty";
  try {
    out = json::parse(text);
  } catch (const json::parse_error& e) {
    return "config file '" + path + "' is not valid JSON: " + e.what();
  }
  return std::nullopt;
}

}  // namespace

ConfigResult validate_config(const std::string& path, const std::string& command) {
  json j;
  if (auto err = load_config(path, j)) return {std::nullopt, {*err}};
  return resolve_config(command, j, json::object());
}

int run(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << usage();
    return kUsage;
  }
  const std::string first = argv[1];
  if (first == "--help" || first == "-h" || first == "help") {
    std::cout << usage();
    return kOk;
  }
  if (std::find(kCommands.begin(), kCommands.end(), first) == kCommands.end()) {
    std::cerr << "lmw: unknown command '" << first << "'\n" << usage();
    return kUsage;
  }

  CLI::App app{"lmw " + first, "lmw " + first};
  std::string config_path, out_dir, G, bank, fstar, input;
  double d = 0, phi = 0, band = 0;
  int K = 0, J = 0, j1 = 0, j2 = 0, replicates = 0, q = 0, m_max = 0, threads = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<long> lags;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory");
  struct Flag {
    CLI::Option* opt;
    std::string key;
    std::function<json()> value;
  };
  std::vector<Flag> flags{
      {app.add_option("--d", d, "memory parameter"), "d", [&] { return json(d); }},
      {app.add_option("--fstar", fstar, "short-memory factor: farima | arfima1"), "fstar", [&] { return json(fstar); }},
      {app.add_option("--phi", phi, "AR(1) coefficient for arfima1"), "phi", [&] { return json(phi); }},
      {app.add_option("--G", G, "nonlinear filter"), "G", [&] { return json(G); }},
      {app.add_option("--K", K, "integration order"), "K", [&] { return json(K); }},
      {app.add_option("--bank", bank, "haar | db2 | db3"), "bank", [&] { return json(bank); }},
      {app.add_option("--J", J, "number of filter levels"), "J", [&] { return json(J); }},
      {app.add_option("--n", n, "series length"), "n", [&] { return json(n); }},
      {app.add_option("--replicates", replicates, "Monte Carlo replicates"), "replicates", [&] { return json(replicates); }},
      {app.add_option("--j1", j1, "first scale"), "j1", [&] { return json(j1); }},
      {app.add_option("--j2", j2, "last scale"), "j2", [&] { return json(j2); }},
      {app.add_option("--seed", seed, "random seed"), "seed", [&] { return json(seed); }},
      {app.add_option("--q", q, "chaos order"), "q", [&] { return json(q); }},
      {app.add_option("--lags", lags, "lags for limit-cov"), "lags", [&] { return json(lags); }},
      {app.add_option("--m-max", m_max, "largest scale offset for limit-cov"), "m_max", [&] { return json(m_max); }},
      {app.add_option("--threads", threads, "worker threads (0: all cores)"), "threads", [&] { return json(threads); }},
      {app.add_option("--band", band, "tolerance band for the fitted slope"), "tolerance_band", [&] { return json(band); }},
      {app.add_option("--input", input, "series CSV for estimate"), "input", [&] { return json(input); }},
  };
  try {
    app.parse(argc - 1, argv + 1);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "lmw: " << e.what() << '\n';
    print_summary(first, "error", {{"errors", {e.what()}}});
    return kConfigError;
  }

  json overrides = json::object();
  for (const auto& f : flags)
    if (f.opt->count() > 0) overrides[f.key] = f.value();
  if (!out_dir.empty()) overrides["output_dir"] = out_dir;

  ConfigResult res;
  json file_values;
  if (!config_path.empty()) {
    if (auto err = load_config(config_path, file_values)) res.errors.push_back(*err);
  }
  if (res.errors.empty()) res = resolve_config(first, file_values, overrides);
  if (!res.config) {
    for (const auto& e : res.errors) std::cerr << "lmw: config error: " << e << '\n';
    print_summary(first, "error", {{"errors", res.errors}});
    return kConfigError;
  }

  const RunConfig& cfg = *res.config;
  try {
    Artifacts out(cfg);
    json body;
    int code = kOk;
    if (first == "synth") body = cmd_synth(cfg, out);
    else if (first == "spectrum") body = cmd_spectrum(cfg, out);
    else if (first == "filters-check") body = cmd_filters(cfg, out, code);
    else if (first == "coeffs") body = cmd_coeffs(cfg, out);
    else if (first == "scaling") body = cmd_scaling(cfg, out, false);
    else if (first == "short-range") body = cmd_scaling(cfg, out, true);
    else if (first == "limit-cov") body = cmd_limit_cov(cfg, out);
    else body = cmd_estimate(cfg, out);
    body["artifacts"] = out.paths();
    body["seed"] = cfg.seed;
    print_summary(first, code == kOk ? "ok" : "check-failed", body);
    return code;
  } catch (const DomainError& e) {
    std::cerr << "lmw: " << e.what() << '\n';
    print_summary(first, "error", {{"errors", {e.what()}}});
    return kConfigError;
  } catch (const PreconditionError& e) {
    std::cerr << "lmw: " << e.what() << '\n';
    print_summary(first, "error", {{"errors", {e.what()}}});
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "lmw: numeric failure: " << e.what() << '\n';
    print_summary(first, "error", {{"errors", {e.what()}}});
    return kNumericError;
  }
}

}  // namespace lmw::cli
