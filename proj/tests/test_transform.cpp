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

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "lmw/errors.h"
#include "lmw/filters.h"
#include "lmw/synth.h"
#include "lmw/transform.h"

using namespace lmw;

namespace {

std::vector<double> random_series(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (auto& x : v) x = nd(gen);
  return v;
}

// W_{j,k} = sum over all l with both h_j(gamma k - l) and y_l defined; nullopt at the border.
std::optional<double> naive_coeff(const FilterLevel& lv, std::int64_t g, std::int64_t k,
                                  const std::vector<double>& y) {
  double acc = 0.0;
  for (std::int64_t t = lv.first(); t <= lv.last(); ++t) {
    const std::int64_t l = g * k - t;
    if (l < 0 || l >= static_cast<std::int64_t>(y.size())) return std::nullopt;
    acc += lv.taps[static_cast<std::size_t>(t - lv.first())] * y[static_cast<std::size_t>(l)];
  }
  return acc;
}

}  // namespace

TEST_CASE("coefficients match the defining sum on the interior") {
  const auto y = random_series(3000, 1);
  const auto bank = build_family_bank("db2", 6);
  for (int j = 1; j <= 6; ++j) {
    const auto& lv = bank.level(j);
    const auto g = static_cast<std::int64_t>(FilterBank::gamma(j));
    const auto [k0, k1] = interior_range(lv, FilterBank::gamma(j), y.size());
    CHECK_FALSE(naive_coeff(lv, g, k0 - 1, y).has_value());
    CHECK_FALSE(naive_coeff(lv, g, k1 + 1, y).has_value());
    TransformOptions direct{ConvolutionPath::Direct}, fft{ConvolutionPath::Fft};
    const auto a = filter_level(lv, j, y, direct);
    const auto b = filter_level(lv, j, y, fft);
    REQUIRE(a.count() == static_cast<std::size_t>(k1 - k0 + 1));
    REQUIRE(b.count() == a.count());
    CHECK(a.gamma == FilterBank::gamma(j));
    for (std::int64_t k = k0; k <= k1; ++k) {
      const auto ref = naive_coeff(lv, g, k, y);
      REQUIRE(ref.has_value());
      CHECK(a.at_k(k) == doctest::Approx(*ref).epsilon(1e-12).scale(1.0));
      CHECK(b.at_k(k) == doctest::Approx(*ref).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("Haar first level on a ramp") {
  std::vector<double> y(64);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<double>(i);
  const auto c = coeffs_from_path(build_family_bank("haar", 2), y);
  const auto* l1 = c.find(1);
  REQUIRE(l1 != nullptr);
  CHECK(l1->k_first == 1);
  CHECK(l1->count() == 31);
  for (double v : l1->values) CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(c.find(3) == nullptr);

  std::vector<double> step(64, 0.0);
  for (std::size_t i = 0; i < 64; i += 2) step[i] = 1.0;
  const auto s = coeffs_from_path(build_family_bank("haar", 1), step);
  for (double v : s.levels[0].values) CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("path and stationary routes agree") {
  for (int K = 0; K <= 2; ++K) {
    const auto z = random_series(5000, 10 + K);
    const auto y = integrate_K(z, K);
    const auto bank = build_family_bank("db3", 7).with_K(K);
    const auto a = coeffs_from_path(bank, y);
    const auto b = coeffs_from_stationary(bank, z);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
      const auto& la = a.levels[i];
      const auto& lb = b.levels[i];
      CHECK(lb.k_first <= la.k_first);
      double scale = 0.0;
      for (double v : lb.values) scale = std::max(scale, std::abs(v));
      for (std::int64_t k = la.k_first; k < la.k_first + static_cast<std::int64_t>(la.count()); ++k)
        CHECK(std::abs(la.at_k(k) - lb.at_k(k)) < 1e-8 * scale);
    }
  }
  CHECK_THROWS_AS(coeffs_from_stationary(build_family_bank("haar", 3).with_K(1), random_series(10, 0), {1, 5}),
                  SizeError);
}

TEST_CASE("polynomial trends are annihilated") {
  for (const char* name : {"haar", "db2", "db3"}) {
    const auto bank = build_family_bank(name, 6);
    const int deg = bank.M - 1;
    std::vector<double> y(4096);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double x = static_cast<double>(i) / 100.0;
      y[i] = 3.0 - (deg >= 1 ? 2.0 * x : 0.0) + (deg >= 2 ? 0.7 * x * x : 0.0);
    }
    double ymax = 0.0;
    for (double v : y) ymax = std::max(ymax, std::abs(v));
    const auto c = coeffs_from_path(bank, y);
    for (const auto& l : c.levels) {
      double l1 = 0.0;
      for (double t : bank.level(l.j).taps) l1 += std::abs(t);
      for (double v : l.values) CHECK(std::abs(v) < 1e-8 * l1 * ymax);
    }
  }
}

TEST_CASE("adding a constant leaves integrated coefficients unchanged") {
  auto z = random_series(2000, 5);
  auto y = integrate_K(z, 1);
  const auto bank = build_family_bank("db2", 5).with_K(1);
  const auto a = coeffs_from_path(bank, y);
  for (auto& v : y) v += 12.5;
  const auto b = coeffs_from_path(bank, y);
  for (std::size_t i = 0; i < a.levels.size(); ++i)
    for (std::size_t k = 0; k < a.levels[i].count(); ++k)
      CHECK(b.levels[i].values[k] == doctest::Approx(a.levels[i].values[k]).scale(1.0).epsilon(1e-10));
}

TEST_CASE("scale ranges and short series") {
  const auto bank = build_family_bank("haar", 8);
  const auto y = random_series(100, 2);
  const auto c = coeffs_from_path(bank, y, {2, 8});
  CHECK(c.levels.front().j == 2);
  CHECK(c.levels.back().j == 6);
  CHECK(c.warnings.size() == 2);
  CHECK_THROWS_AS(coeffs_from_path(bank, y, {0, 3}), SizeError);
  CHECK_THROWS_AS(coeffs_from_path(bank, y, {1, 9}), SizeError);
  CHECK_THROWS_AS(coeffs_from_path(bank, random_series(1, 2)), SizeError);
}

TEST_CASE("coefficient exports") {
  const auto c = coeffs_from_path(build_family_bank("haar", 2), random_series(40, 4));
  std::ostringstream os;
  write_coeffs_csv(os, c);
  CHECK(os.str().rfind("j,k,w\n", 0) == 0);
  const auto s = summarize(c);
  REQUIRE(s.size() == 2);
  CHECK(s[0].count == c.levels[0].count());
  CHECK(s[1].gamma == 4.0);
  const auto js = summary_json(c);
  CHECK(js.find("\"count\"") != std::string::npos);
  CHECK(js.find("\"var\"") != std::string::npos);
}
