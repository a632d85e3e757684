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

#include "lmw/mc.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "lmw/errors.h"
#include "lmw/limit.h"
#include "lmw/rng.h"

namespace lmw {
namespace {

using nlohmann::json;

// Neumaier compensated sum.
class Sum {
 public:
  void add(double x) {
    const double t = s_ + x;
    c_ += std::abs(s_) >= std::abs(x) ? (s_ - t) + x : (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  nt = std::clamp(nt, 1, std::max(count, 1));
  if (nt == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

double mean_square(std::span<const double> v) {
  Sum s;
  for (double x : v) s.add(x * x);
  return s.value() / static_cast<double>(v.size());
}

std::pair<double, double> mean_sd(const std::vector<double>& v) {
  Sum s;
  for (double x : v) s.add(x);
  const double n = static_cast<double>(v.size());
  const double m = s.value() / n;
  Sum ss;
  for (double x : v) ss.add((x - m) * (x - m));
  return {m, v.size() > 1 ? std::sqrt(ss.value() / (n - 1.0)) : 0.0};
}

std::vector<std::size_t> resample(std::uint64_t seed, int b, std::size_t n) {
  const CounterRng rng(seed ^ 0x9e3779b97f4a7c15ULL, 0xb0075742ULL);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i)
    idx[i] = rng.bits(static_cast<std::uint64_t>(b) * n + i) % n;
  return idx;
}

Interval percentile(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double f = pos - static_cast<double>(i);
    return i + 1 < v.size() ? v[i] * (1 - f) + v[i + 1] * f : v[i];
  };
  return {q(0.025), q(0.975)};
}

// Slope with fixed weights, for the bootstrap.
double weighted_slope(const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<double>& w) {
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

std::vector<double> log_weights(const std::vector<ScaleStat>& scales) {
  std::vector<double> w;
  bool have_se = true;
  for (const auto& s : scales) have_se = have_se && s.se > 0.0;
  for (const auto& s : scales) {
    if (!have_se) {
      w.push_back(1.0);
      continue;
    }
    const double sl = s.se / (s.var * std::numbers::ln2);
    w.push_back(1.0 / (sl * sl));
  }
  return w;
}

// Scale statistics from per-replicate mean squares.
std::vector<ScaleStat> pool_scales(const std::vector<int>& js, const std::vector<std::size_t>& counts,
                                   const std::vector<std::vector<double>>& rv,
                                   const std::vector<std::size_t>& pick) {
  std::vector<ScaleStat> out;
  for (std::size_t s = 0; s < js.size(); ++s) {
    std::vector<double> col;
    col.reserve(pick.size());
    for (std::size_t r : pick) col.push_back(rv[r][s]);
    const auto [m, sd] = mean_sd(col);
    ScaleStat st;
    st.j = js[s];
    st.gamma = FilterBank::gamma(js[s]);
    st.count = counts[s];
    st.var = m;
    st.se = col.size() > 1 ? sd / std::sqrt(static_cast<double>(col.size()))
                           : m * std::sqrt(2.0 / static_cast<double>(counts[s]));
    out.push_back(st);
  }
  return out;
}

struct Replicates {
  std::vector<int> js;
  std::vector<std::size_t> counts;
  std::vector<std::vector<double>> var;   // [r][scale]
  std::vector<std::vector<double>> top;   // [r] coefficients at max j
  std::vector<std::string> warnings;
};

Replicates run_replicates(const PathConfig& cfg, const FilterBank& bank, JRange range,
                          int replicates, const McOptions& opt) {
  if (replicates < 1) throw SizeError("replicates must be >= 1");
  const FilterBank bk = bank.with_K(cfg.K);
  const int last = range.last > 0 ? range.last : bk.J();
  if (range.first < 1 || last > bk.J() || range.first > last)
    throw SizeError("scale range outside the bank's levels");
  Replicates out;
  for (int j = range.first; j <= last; ++j) {
    const auto [k0, k1] = interior_range(bk.factored(j), FilterBank::gamma(j), cfg.n);
    const std::size_t c = k1 >= k0 ? static_cast<std::size_t>(k1 - k0 + 1) : 0;
    if (c < opt.min_coeffs) {
      const std::string msg = "scale j=" + std::to_string(j) + " has " + std::to_string(c) +
                              " coefficients (< " + std::to_string(opt.min_coeffs) + "); dropped";
      std::clog << "lmw: warning: " << msg << '\n';
      out.warnings.push_back(msg);
      continue;
    }
    out.js.push_back(j);
    out.counts.push_back(c);
  }
  if (out.js.empty()) throw SizeError("no scale has enough interior coefficients");

  const CirculantSynthesizer synth(cfg.model, cfg.n);
  out.var.assign(static_cast<std::size_t>(replicates), {});
  if (opt.keep_top_coeffs) out.top.assign(static_cast<std::size_t>(replicates), {});
  const JRange used{out.js.front(), out.js.back()};
  parallel_for(replicates, opt.threads, [&](int r) {
    const auto x = synth.sample(cfg.seed, cfg.replicate + static_cast<std::uint64_t>(r));
    const auto g = subordinate(cfg.filter, x);
    const auto c = coeffs_from_stationary(bk, g, used);
    auto& row = out.var[static_cast<std::size_t>(r)];
    for (int j : out.js) row.push_back(mean_square(c.find(j)->values));
    if (opt.keep_top_coeffs) out.top[static_cast<std::size_t>(r)] = c.find(out.js.back())->values;
  });
  return out;
}

ScalingReport build_report(const PathConfig& cfg, const FilterBank& bank, JRange range,
                           int replicates, const McOptions& opt, bool require_long) {
  const auto expansion = hermite_coeffs(cfg.filter.fn);
  const int q0 = expansion.rank;
  if (q0 < 1) throw DomainError("nonlinear filter has no nonzero Hermite coefficient");
  const double d = cfg.model.d();
  const int qc = d > 0.0 ? critical_order(d) : 0;
  const bool long_range = d > 0.0 && q0 <= qc;
  if (require_long && !long_range)
    throw PreconditionError("scaling_experiment requires q0 <= q_c (q0=" + std::to_string(q0) +
                            ", q_c=" + std::to_string(qc) + "); use short_range_experiment");

  ScalingReport rep;
  rep.regime = long_range ? "long-range" : "short-range";
  rep.d = d;
  rep.q0 = q0;
  rep.qc = qc;
  rep.K = cfg.K;
  rep.filter = cfg.filter.name;
  rep.bank = bank.family;
  rep.n = cfg.n;
  rep.replicates = replicates;
  rep.seed = cfg.seed;
  rep.band = opt.tolerance_band;
  rep.target = long_range ? 2.0 * (memory_param(d, q0) + cfg.K) : 2.0 * cfg.K;

  auto reps = run_replicates(cfg, bank, range, replicates, opt);
  rep.warnings = reps.warnings;
  std::vector<std::size_t> all(static_cast<std::size_t>(replicates));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  rep.scales = pool_scales(reps.js, reps.counts, reps.var, all);
  if (rep.scales.size() < 2) throw SizeError("need at least two scales for a slope");
  const auto fit = fit_log_slope(rep.scales);
  rep.slope = fit.slope;
  rep.slope_se = fit.se;

  const auto w = log_weights(rep.scales);
  std::vector<double> x;
  for (const auto& s : rep.scales) x.push_back(s.j);
  std::vector<double> boot_slopes, boot_top;
  if (replicates >= 2) {
    for (int b = 0; b < opt.bootstrap; ++b) {
      const auto pick = resample(cfg.seed, b, all.size());
      const auto sc = pool_scales(reps.js, reps.counts, reps.var, pick);
      std::vector<double> y;
      for (const auto& s : sc) y.push_back(std::log2(s.var));
      boot_slopes.push_back(weighted_slope(x, y, w));
      boot_top.push_back(sc.back().var);
    }
    rep.ci = percentile(boot_slopes);
  } else {
    rep.ci = {fit.slope - 1.96 * fit.se, fit.slope + 1.96 * fit.se};
  }
  rep.ci_contains_target = rep.ci.contains(rep.target);
  if (rep.band)
    rep.band_contains_target = std::abs(rep.slope - rep.target) <= *rep.band;

  if (long_range) {
    NormalizationReport nr;
    const auto [ca, cb] = theorem_normalization(expansion.coeff(q0), cfg.model.fstar_at_zero(), q0);
    nr.candidate_a = std::abs(ca);
    nr.candidate_b = std::abs(cb);
    LimitSpec spec;
    spec.q = q0;
    spec.d = d;
    spec.K = cfg.K;
    spec.hinf = std::make_shared<LimitTransfer>(bank);
    nr.limit_var = limit_cov(spec, 0, 0, 0, 0).value;
    const auto& top = rep.scales.back();
    const double expo = 2.0 * (memory_param(d, q0) + cfg.K);
    auto est = [&](double v) { return std::sqrt(v * std::pow(top.gamma, -expo) / nr.limit_var); };
    nr.estimate = est(top.var);
    if (!boot_top.empty()) {
      std::vector<double> e;
      for (double v : boot_top) e.push_back(est(v));
      nr.ci = percentile(e);
    } else {
      nr.ci = {nr.estimate, nr.estimate};
    }
    auto near = [&](double c) { return std::abs(c / nr.estimate - 1.0) <= opt.normalization_band; };
    const bool a = near(nr.candidate_a), bsel = near(nr.candidate_b);
    if (std::abs(nr.candidate_a - nr.candidate_b) <= 1e-12 * nr.candidate_a)
      nr.selected = a ? "coincide" : "none";
    else if (a && bsel)
      nr.selected = "both";
    else if (a)
      nr.selected = "a";
    else if (bsel)
      nr.selected = "b";
    else
      nr.selected = "none";
    rep.normalization = nr;
  }
  rep.replicate_var = std::move(reps.var);
  rep.top_coeffs = std::move(reps.top);
  return rep;
}

json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

}  // namespace

SlopeFit fit_log_slope(const std::vector<ScaleStat>& scales) {
  if (scales.size() < 2) throw SizeError("slope fit needs at least two scales");
  const auto w = log_weights(scales);
  std::vector<double> x, y;
  for (const auto& s : scales) {
    if (!(s.var > 0.0)) throw NumericError("non-positive variance estimate at j=" + std::to_string(s.j));
    x.push_back(s.j);
    y.push_back(std::log2(s.var));
  }
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.se = std::sqrt(1.0 / sxx);
  return f;
}

ScalingReport scaling_experiment(const PathConfig& cfg, const FilterBank& bank, JRange range,
                                 int replicates, const McOptions& opt) {
  return build_report(cfg, bank, range, replicates, opt, true);
}

ScalingReport short_range_experiment(const PathConfig& cfg, const FilterBank& bank, JRange range,
                                     int replicates, const McOptions& opt) {
  return build_report(cfg, bank, range, replicates, opt, false);
}

std::string ScalingReport::to_json() const {
  json j;
  j["regime"] = regime;
  j["d"] = d;
  j["q0"] = q0;
  j["qc"] = qc;
  j["K"] = K;
  j["filter"] = filter;
  j["bank"] = bank;
  j["n"] = n;
  j["replicates"] = replicates;
  j["seed"] = seed;
  json sc = json::array();
  for (const auto& s : scales)
    sc.push_back({{"j", s.j}, {"gamma", s.gamma}, {"count", s.count}, {"var", s.var}, {"se", s.se}});
  j["scales"] = sc;
  j["slope"] = slope;
  j["slope_se"] = slope_se;
  j["ci"] = interval_json(ci);
  j["ci_half_width"] = 0.5 * (ci.hi - ci.lo);
  j["target"] = target;
  j["ci_contains_target"] = ci_contains_target;
  if (band) {
    j["tolerance_band"] = *band;
    j["tolerance_interval"] = json::array({slope - *band, slope + *band});
    j["band_contains_target"] = band_contains_target;
  }
  if (normalization) {
    const auto& n = *normalization;
    j["normalization"] = {{"estimate", n.estimate},
                          {"ci", interval_json(n.ci)},
                          {"candidate_a", n.candidate_a},
                          {"candidate_b", n.candidate_b},
                          {"limit_var", n.limit_var},
                          {"selected", n.selected}};
  }
  j["warnings"] = warnings;
  return j.dump();
}

void ScalingReport::write_csv(std::ostream& os) const {
  os << std::setprecision(12) << "j,gamma,count,var,se\n";
  for (const auto& s : scales)
    os << s.j << ',' << s.gamma << ',' << s.count << ',' << s.var << ',' << s.se << '\n';
}

GaussianityReport gaussianity_check(const std::vector<std::vector<double>>& coeffs, int q0) {
  GaussianityReport g;
  g.q0 = q0;
  Sum s2, s3, s4;
  std::size_t n = 0;
  std::vector<double> skews, kurts;
  for (const auto& rep : coeffs) {
    Sum r2, r3, r4;
    for (double x : rep) {
      const double x2 = x * x;
      s2.add(x2);
      s3.add(x2 * x);
      s4.add(x2 * x2);
      r2.add(x2);
      r3.add(x2 * x);
      r4.add(x2 * x2);
    }
    n += rep.size();
    if (!rep.empty() && r2.value() > 0.0) {
      const double m = static_cast<double>(rep.size());
      const double v = r2.value() / m;
      skews.push_back(r3.value() / m / std::pow(v, 1.5));
      kurts.push_back(r4.value() / m / (v * v));
    }
  }
  if (n == 0) throw SizeError("gaussianity_check: no coefficients");
  const double m2 = s2.value() / static_cast<double>(n);
  g.skewness = s3.value() / static_cast<double>(n) / std::pow(m2, 1.5);
  g.kurtosis = s4.value() / static_cast<double>(n) / (m2 * m2);
  const double R = static_cast<double>(skews.size());
  if (R >= 2) {
    g.skewness_se = mean_sd(skews).second / std::sqrt(R);
    g.kurtosis_se = mean_sd(kurts).second / std::sqrt(R);
  }
  g.consistent = q0 == 1 ? std::abs(g.kurtosis - 3.0) <= 0.2 : (g.kurtosis - 3.0) > 3.0 * g.kurtosis_se;
  return g;
}

std::string GaussianityReport::to_json() const {
  return json{{"q0", q0},
              {"skewness", skewness},
              {"skewness_se", skewness_se},
              {"kurtosis", kurtosis},
              {"kurtosis_se", kurtosis_se},
              {"consistent", consistent}}
      .dump();
}

MemoryEstimate estimate_memory(const std::vector<CoeffMatrix>& coeffs, int j1, int j2,
                               std::uint64_t seed, int bootstrap) {
  if (j2 < j1 + 2) throw SizeError("estimate_memory needs at least 3 scales (j2 >= j1 + 2)");
  if (coeffs.empty()) throw SizeError("estimate_memory: no coefficients");
  std::vector<int> js;
  std::vector<std::size_t> counts;
  for (int j = j1; j <= j2; ++j) {
    bool ok = true;
    std::size_t c = 0;
    for (const auto& m : coeffs) {
      const auto* l = m.find(j);
      ok = ok && l && !l->values.empty();
      if (l) c = l->count();
    }
    if (ok) {
      js.push_back(j);
      counts.push_back(c);
    }
  }
  if (js.size() < 3) throw SizeError("estimate_memory: fewer than 3 scales with coefficients");
  std::vector<std::vector<double>> rv(coeffs.size());
  for (std::size_t r = 0; r < coeffs.size(); ++r)
    for (int j : js) rv[r].push_back(mean_square(coeffs[r].find(j)->values));
  std::vector<std::size_t> all(coeffs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto scales = pool_scales(js, counts, rv, all);
  const auto fit = fit_log_slope(scales);
  MemoryEstimate out;
  out.estimate = 0.5 * fit.slope;
  out.scales = static_cast<int>(js.size());
  if (coeffs.size() >= 2) {
    const auto w = log_weights(scales);
    std::vector<double> x(js.begin(), js.end()), slopes;
    for (int b = 0; b < bootstrap; ++b) {
      const auto sc = pool_scales(js, counts, rv, resample(seed, b, all.size()));
      std::vector<double> y;
      for (const auto& s : sc) y.push_back(std::log2(s.var));
      slopes.push_back(0.5 * weighted_slope(x, y, w));
    }
    out.ci = percentile(slopes);
  } else {
    out.ci = {out.estimate - 0.98 * fit.se, out.estimate + 0.98 * fit.se};
  }
  return out;
}

CorrelationComparison limit_cov_comparison(const PathConfig& cfg, const FilterBank& bank, int j,
                                           const std::vector<long>& lags, int replicates,
                                           const McOptions& opt) {
  const auto expansion = hermite_coeffs(cfg.filter.fn);
  const int q0 = expansion.rank;
  const double d = cfg.model.d();
  if (!(d > 0.0) || q0 > critical_order(d))
    throw PreconditionError("limit_cov_comparison requires q0 <= q_c");
  const FilterBank bk = bank.with_K(cfg.K);
  const CirculantSynthesizer synth(cfg.model, cfg.n);

  const std::size_t nl = lags.size();
  std::vector<std::vector<double>> prod(static_cast<std::size_t>(replicates), std::vector<double>(nl + 1));
  std::vector<std::vector<std::size_t>> cnt(static_cast<std::size_t>(replicates), std::vector<std::size_t>(nl + 1));
  parallel_for(replicates, opt.threads, [&](int r) {
    const auto x = synth.sample(cfg.seed, cfg.replicate + static_cast<std::uint64_t>(r));
    const auto g = subordinate(cfg.filter, x);
    const auto c = coeffs_from_stationary(bk, g, JRange{j, j});
    const auto& w = c.levels.front().values;
    auto& p = prod[static_cast<std::size_t>(r)];
    auto& n = cnt[static_cast<std::size_t>(r)];
    for (std::size_t li = 0; li <= nl; ++li) {
      const std::size_t lag = li == 0 ? 0 : static_cast<std::size_t>(std::abs(lags[li - 1]));
      Sum s;
      std::size_t m = 0;
      for (std::size_t k = 0; k + lag < w.size(); ++k, ++m) s.add(w[k] * w[k + lag]);
      p[li] = s.value();
      n[li] = m;
    }
  });
  std::vector<double> pooled(nl + 1);
  for (std::size_t li = 0; li <= nl; ++li) {
    Sum s;
    std::size_t m = 0;
    for (std::size_t r = 0; r < prod.size(); ++r) {
      s.add(prod[r][li]);
      m += cnt[r][li];
    }
    if (m == 0) throw SizeError("lag exceeds the number of coefficients at j=" + std::to_string(j));
    pooled[li] = s.value() / static_cast<double>(m);
  }

  LimitSpec spec;
  spec.q = q0;
  spec.d = d;
  spec.K = cfg.K;
  spec.hinf = std::make_shared<LimitTransfer>(bank);
  const double v0 = limit_cov(spec, 0, 0, 0, 0).value;

  CorrelationComparison out;
  out.j = j;
  out.lags = lags;
  for (std::size_t li = 0; li < nl; ++li) {
    out.empirical.push_back(pooled[li + 1] / pooled[0]);
    out.theoretical.push_back(limit_cov(spec, 0, 0, 0, lags[li]).value / v0);
    out.max_deviation = std::max(out.max_deviation, std::abs(out.empirical.back() - out.theoretical.back()));
  }
  return out;
}

std::string CorrelationComparison::to_json() const {
  return json{{"j", j},
              {"lags", lags},
              {"empirical", empirical},
              {"theoretical", theoretical},
              {"max_deviation", max_deviation}}
      .dump();
}

}  // namespace lmw
