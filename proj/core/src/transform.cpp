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

#include "lmw/transform.h"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <ostream>

#include "json.hpp"
#include "lmw/errors.h"
#include "lmw/fft.h"

namespace lmw {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

CoeffMatrix run(const FilterBank& bank, std::span<const double> y, JRange range, bool stationary,
                const TransformOptions& opt) {
  const int last = range.last > 0 ? range.last : bank.J();
  if (range.first < 1 || last > bank.J() || range.first > last)
    throw SizeError("scale range " + std::to_string(range.first) + ".." + std::to_string(last) +
                    " outside the bank's levels 1.." + std::to_string(bank.J()));
  if (stationary && bank.K > bank.M)
    throw PreconditionError("K exceeds M (M >= K required)");
  CoeffMatrix out;
  for (int j = range.first; j <= last; ++j) {
    const FilterLevel lv = stationary ? bank.factored(j) : bank.level(j);
    CoeffLevel c = filter_level(lv, j, y, opt);
    if (c.values.empty()) {
      const std::string msg = "level j=" + std::to_string(j) + " has no interior coefficients; omitted";
      std::clog << "lmw: warning: " << msg << '\n';
      out.warnings.push_back(msg);
      continue;
    }
    out.levels.push_back(std::move(c));
  }
  if (out.levels.empty()) throw SizeError("series too short: no level has an interior coefficient");
  return out;
}

}  // namespace

const CoeffLevel* CoeffMatrix::find(int j) const {
  for (const auto& l : levels)
    if (l.j == j) return &l;
  return nullptr;
}

std::pair<std::int64_t, std::int64_t> interior_range(const FilterLevel& level, double gamma,
                                                     std::size_t n) {
  const auto g = static_cast<std::int64_t>(gamma);
  const std::int64_t lo = ceil_div(level.last(), g);
  const std::int64_t hi = floor_div(static_cast<std::int64_t>(n) - 1 + level.first(), g);
  return {lo, hi};
}

CoeffLevel filter_level(const FilterLevel& level, int j, std::span<const double> y,
                        const TransformOptions& opt) {
  CoeffLevel out;
  out.j = j;
  out.gamma = FilterBank::gamma(j);
  const auto g = static_cast<std::int64_t>(out.gamma);
  const auto [k0, k1] = interior_range(level, out.gamma, y.size());
  out.k_first = k0;
  if (k1 < k0) return out;
  const auto count = static_cast<std::size_t>(k1 - k0 + 1);
  out.values.resize(count);
  const std::size_t L = level.support();

  bool use_fft = opt.path == ConvolutionPath::Fft;
  if (opt.path == ConvolutionPath::Auto) use_fft = L * count >= opt.fft_threshold;

  if (!use_fft) {
    for (std::size_t c = 0; c < count; ++c) {
      // l = g k - o - i for tap i
      const std::int64_t base = g * (k0 + static_cast<std::int64_t>(c)) - level.offset;
      double acc = 0.0;
      for (std::size_t i = 0; i < L; ++i) acc += level.taps[i] * y[static_cast<std::size_t>(base) - i];
      out.values[c] = acc;
    }
  } else {
    const auto conv = fft::convolve(level.taps, y);
    for (std::size_t c = 0; c < count; ++c) {
      const std::int64_t s = g * (k0 + static_cast<std::int64_t>(c)) - level.offset;
      out.values[c] = conv[static_cast<std::size_t>(s)];
    }
  }
  return out;
}

CoeffMatrix coeffs_from_path(const FilterBank& bank, std::span<const double> y, JRange range,
                             const TransformOptions& opt) {
  return run(bank, y, range, false, opt);
}

CoeffMatrix coeffs_from_stationary(const FilterBank& bank, std::span<const double> g_series,
                                   JRange range, const TransformOptions& opt) {
  return run(bank, g_series, range, true, opt);
}

void write_coeffs_csv(std::ostream& os, const CoeffMatrix& c) {
  os << std::setprecision(17) << "j,k,w\n";
  for (const auto& l : c.levels)
    for (std::size_t i = 0; i < l.count(); ++i)
      os << l.j << ',' << l.k_first + static_cast<std::int64_t>(i) << ',' << l.values[i] << '\n';
}

std::vector<LevelSummary> summarize(const CoeffMatrix& c) {
  std::vector<LevelSummary> out;
  for (const auto& l : c.levels) {
    const double n = static_cast<double>(l.count());
    double mean = 0.0;
    for (double v : l.values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : l.values) ss += (v - mean) * (v - mean);
    out.push_back({l.j, l.gamma, l.count(), mean, l.count() > 1 ? ss / (n - 1.0) : 0.0});
  }
  return out;
}

std::string summary_json(const CoeffMatrix& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : summarize(c))
    arr.push_back({{"j", s.j}, {"gamma", s.gamma}, {"count", s.count}, {"mean", s.mean}, {"var", s.var}});
  return arr.dump();
}

}  // namespace lmw
