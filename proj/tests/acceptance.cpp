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

// Acceptance run: one line per criterion, nonzero exit when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lmw/filters.h"
#include "lmw/hermite.h"
#include "lmw/limit.h"
#include "lmw/mc.h"
#include "lmw/spectra.h"
#include "lmw/synth.h"
#include "lmw/transform.h"
#include "oracles.h"

using namespace lmw;

namespace {

int failures = 0;
std::string normalization = "missing";  // filled by the scaling table run

void report(int id, const char* title, bool pass, const std::string& detail, double seconds) {
  std::printf("[%s] %2d %-40s %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, title, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::vector<double> gaussian_noise(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (auto& x : v) x = nd(gen);
  return v;
}

void hermite_orthogonality() {
  Timer t;
  const double tol = 1e-8;
  const auto rule = gauss_hermite(200);
  double worst = 0.0, fact = 1.0;
  for (int q = 0; q <= 8; ++q) {
    if (q > 0) fact *= q;
    for (int p = 0; p <= 8; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * hermite_eval(q, rule.nodes[i]) * hermite_eval(p, rule.nodes[i]);
      worst = std::max(worst, std::abs(s - (p == q ? fact : 0.0)) / fact);
    }
  }
  report(1, "Hermite orthogonality q,q' <= 8", worst < tol, fmt("max rel err %.2e (tol %.0e)", worst, tol),
         t.seconds());
}

void synthesis_fidelity() {
  Timer t;
  const double d = 0.35, target = d / (1.0 - d), tol = 0.02;
  const CirculantSynthesizer syn(MemoryModel::farima(d), std::size_t{1} << 14);
  double acc = 0.0;
  const int reps = 50;
  for (int r = 0; r < reps; ++r) {
    const auto x = syn.sample(2026, r);
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) c0 += x[i] * x[i];
    for (std::size_t i = 1; i < x.size(); ++i) c1 += x[i] * x[i - 1];
    acc += c1 / c0;
  }
  const double rho = acc / reps;
  report(2, "FARIMA lag-1 autocorrelation", std::abs(rho - target) <= tol,
         fmt("rho1 %.4f vs %.4f (tol %.2f, 50 x 2^14)", rho, target, tol), t.seconds());
}

void spectral_classification() {
  Timer t;
  const auto g35 = self_convolve(MemoryModel::farima(0.35), 2);
  double lo = 1e300, hi = 0.0;
  for (double l = 1e-3; l <= 1e-2 * (1 + 1e-12); l *= std::pow(10.0, 0.05)) {
    const double v = std::pow(l, 0.4) * g35.at(l);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double variation = (hi - lo) / (0.5 * (hi + lo));

  const auto g20 = self_convolve(MemoryModel::farima(0.2), 2);
  const std::size_t z = g20.zero_index();
  const double at0 = g20.values[z];
  double sup = 0.0;
  for (double v : g20.values) sup = std::max(sup, v);
  const double f3 = g20.at(1e-3), f2 = g20.at(1e-2);
  // Bounded: the supremum is the value at the origin. Positive limit: the
  // approach to it flattens as l decreases.
  const bool bounded = std::isfinite(sup) && sup <= at0 * (1 + 1e-9) && at0 > 0.0;
  const bool limit = std::abs(f3 - at0) < std::abs(f2 - at0) && std::abs(f3 / at0 - 1.0) < 0.05;
  report(3, "spectral classification", variation < 0.05 && bounded && limit,
         fmt("d=0.35 variation %.2f%% (tol 5%%); d=0.2 f2(0)=%.4f sup=%.4f f2(1e-3)=%.4f", 100 * variation, at0,
             sup, f3),
         t.seconds());
}

void two_routes() {
  Timer t;
  const double tol = 1e-8;
  double worst = 0.0;
  for (int K = 0; K <= 2; ++K) {
    const auto z = gaussian_noise(1 << 14, 100 + K);
    const auto y = integrate_K(z, K);
    const auto bank = build_family_bank("db3", 8).with_K(K);
    const auto a = coeffs_from_path(bank, y);
    const auto b = coeffs_from_stationary(bank, z);
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
      const auto& la = a.levels[i];
      double scale = 0.0;
      for (double v : b.levels[i].values) scale = std::max(scale, std::abs(v));
      for (std::size_t c = 0; c < la.count(); ++c) {
        const auto k = la.k_first + static_cast<std::int64_t>(c);
        worst = std::max(worst, std::abs(la.values[c] - b.levels[i].at_k(k)) / scale);
      }
    }
  }
  report(4, "two-route coefficient equality", worst < tol, fmt("K=0,1,2 db3 max rel err %.2e (tol %.0e)", worst, tol),
         t.seconds());
}

void trend_invariance() {
  Timer t;
  const double tol = 1e-8;
  double worst = 0.0;
  for (const char* name : {"haar", "db2", "db3"}) {
    const auto bank = build_family_bank(name, 8);
    std::vector<double> y(1 << 14);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double x = static_cast<double>(i) / 1000.0;
      double p = 1.0, v = 0.0;
      for (int m = 0; m < bank.M; ++m, p *= x) v += (m + 1.5) * p;
      y[i] = v;
    }
    double ymax = 0.0;
    for (double v : y) ymax = std::max(ymax, std::abs(v));
    for (const auto& l : coeffs_from_path(bank, y).levels) {
      double l1 = 0.0;
      for (double h : bank.level(l.j).taps) l1 += std::abs(h);
      for (double v : l.values) worst = std::max(worst, std::abs(v) / (l1 * ymax));
    }
  }
  report(5, "vanishing moments and trend invariance", worst < tol,
         fmt("degree M-1 max rel coeff %.2e (tol %.0e)", worst, tol), t.seconds());
}

std::shared_ptr<const LimitTransfer> haar_limit() {
  static const auto h = std::make_shared<const LimitTransfer>(build_family_bank("haar", 8));
  return h;
}

void reduction_oracle() {
  Timer t;
  LimitSpec s2{2, 0.35, 1, haar_limit()};
  LimitSpec s3{3, 0.4, 1, haar_limit()};
  const double r2 = limit_cov(s2, 0, 0, 0, 0).value, b2 = oracle::brute_force_variance(2, 0.35, 1);
  const double r3 = limit_cov(s3, 0, 0, 0, 0).value, b3 = oracle::brute_force_variance(3, 0.4, 1);
  const double e2 = std::abs(r2 / b2 - 1.0), e3 = std::abs(r3 / b3 - 1.0);
  report(6, "change-of-variables reduction", e2 < 0.01 && e3 < 0.05,
         fmt("q=2 rel %.1e (tol 1%%), q=3 rel %.1e (tol 5%%)", e2, e3), t.seconds());
}

void self_similarity() {
  Timer t;
  const double d = 0.35;
  double worst = 0.0;
  for (auto [q, K] : {std::pair{1, 0}, {1, 1}, {2, 0}, {2, 1}}) {
    LimitSpec s{q, d, K, haar_limit()};
    const double v0 = limit_cov(s, 0, 0, 0, 0).value;
    for (int m = 1; m <= 3; ++m) {
      const double ratio = limit_cov(s, m, 0, m, 0).value / v0;
      worst = std::max(worst, std::abs(ratio / std::pow(2.0, 2.0 * m * (memory_param(d, q) + K)) - 1.0));
    }
  }
  report(7, "limit self-similarity", worst < 0.01, fmt("max rel dev %.2e over m=1..3 (tol 1%%)", worst), t.seconds());
}

struct TableRow {
  double d;
  const char* G;
  int K;
  double band;
};

void scaling_table() {
  Timer t;
  const TableRow rows[] = {{0.35, "identity", 0, 0.10}, {0.35, "identity", 1, 0.15}, {0.35, "square", 0, 0.12},
                           {0.35, "square", 1, 0.15},   {0.2, "square", 0, 0.15},    {0.2, "square", 1, 0.20}};
  const auto bank = build_family_bank("haar", 8);
  bool all = true;
  std::vector<std::vector<double>> gauss_top, chaos2_top;
  for (const auto& row : rows) {
    Timer rt;
    McOptions opt;
    opt.tolerance_band = row.band;
    opt.keep_top_coeffs = row.K == 0;
    const PathConfig cfg{MemoryModel::farima(row.d), make_filter(row.G), row.K, std::size_t{1} << 17, 17, 0};
    const auto rep = short_range_experiment(cfg, bank, {3, 7}, 100, opt);
    all = all && rep.band_contains_target;
    std::printf("       d=%.2f G=%-8s K=%d %-11s slope %.4f target %.2f band +-%.2f %s; bootstrap CI [%.4f, %.4f] %s (%.1f s)\n",
                row.d, row.G, row.K, rep.regime.c_str(), rep.slope, rep.target, row.band,
                rep.band_contains_target ? "contains" : "EXCLUDES", rep.ci.lo, rep.ci.hi,
                rep.ci_contains_target ? "contains" : "excludes", rt.seconds());
    if (row.d == 0.35 && row.K == 0 && rep.q0 == 1) gauss_top = rep.top_coeffs;
    if (row.d == 0.35 && row.K == 0 && rep.q0 == 2) {
      chaos2_top = rep.top_coeffs;
      if (rep.normalization) {
        const auto& n = *rep.normalization;
        normalization = n.selected;
        std::printf("       normalization estimate %.4f (bootstrap [%.4f, %.4f]); a=%.4f b=%.4f -> selected '%s'\n",
                    n.estimate, n.ci.lo, n.ci.hi, n.candidate_a, n.candidate_b, n.selected.c_str());
      }
    }
  }
  report(8, "scaling slope table", all, "tolerance interval slope +- band contains every target", t.seconds());

  Timer gt;
  const auto g1 = gaussianity_check(gauss_top, 1);
  const auto g2 = gaussianity_check(chaos2_top, 2);
  report(9, "Gaussianity dichotomy", g1.consistent && g2.consistent,
         fmt("q0=1 kurtosis %.3f (3 +- 0.2); q0=2 excess %.3f = %.1f se (> 3 se)", g1.kurtosis, g2.kurtosis - 3.0,
             (g2.kurtosis - 3.0) / g2.kurtosis_se),
         gt.seconds());
}

void limit_correlations() {
  Timer t;
  const PathConfig cfg{MemoryModel::farima(0.35), make_filter("identity"), 0, std::size_t{1} << 17, 23, 0};
  const auto cmp = limit_cov_comparison(cfg, build_family_bank("haar", 7), 7, {1, 2, 3, 4}, 200);
  std::string detail = "lags 1..4 at j=7:";
  for (std::size_t i = 0; i < cmp.lags.size(); ++i)
    detail += fmt(" %.3f/%.3f", cmp.empirical[i], cmp.theoretical[i]);
  detail += fmt("; max dev %.3f (tol 0.05)", cmp.max_deviation);
  report(10, "limit covariance match", cmp.max_deviation < 0.05, detail, t.seconds());
}

}  // namespace

int main() {
  hermite_orthogonality();
  synthesis_fidelity();
  spectral_classification();
  two_routes();
  trend_invariance();
  reduction_oracle();
  self_similarity();
  scaling_table();
  limit_correlations();
  report(11, "normalization disambiguation", normalization == "a" || normalization == "b",
         fmt("selected candidate '%s' (recorded in the scaling report)", normalization.c_str()), 0.0);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
