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
#include <random>
#include <string>

#include "doctest.h"
#include "lmw/errors.h"
#include "lmw/hermite.h"

using namespace lmw;

TEST_CASE("Hermite polynomial values") {
  CHECK(hermite_eval(0, 3.3) == 1.0);
  CHECK(hermite_eval(1, 7.3) == doctest::Approx(7.3));
  CHECK(hermite_eval(2, 2.0) == doctest::Approx(3.0));
  const double x = 1.5;
  CHECK(hermite_eval(5, x) == doctest::Approx(std::pow(x, 5) - 10 * std::pow(x, 3) + 15 * x));
  CHECK(hermite_eval(5, x) == doctest::Approx(-3.65625));
  std::vector<double> all(9);
  hermite_all(-0.7, all);
  for (int q = 0; q < 9; ++q) CHECK(all[q] == doctest::Approx(hermite_eval(q, -0.7)).epsilon(1e-14));
}

TEST_CASE("Gauss-Hermite orthogonality up to order 8") {
  const auto rule = gauss_hermite(200);
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
  double fact_q = 1.0;
  for (int q = 0; q <= 8; ++q) {
    if (q > 0) fact_q *= q;
    for (int p = 0; p <= 8; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * hermite_eval(q, rule.nodes[i]) * hermite_eval(p, rule.nodes[i]);
      if (p == q)
        CHECK(std::abs(s / fact_q - 1.0) < 1e-8);
      else
        CHECK(std::abs(s) < 1e-8 * fact_q);
    }
  }
}

TEST_CASE("Hermite coefficients of built-in filters") {
  const auto sq = hermite_coeffs(make_filter("square").fn);
  CHECK(sq.rank == 2);
  CHECK(sq.coeff(2) == doctest::Approx(2.0).epsilon(1e-12));
  for (int q = 1; q <= sq.order(); ++q)
    if (q != 2) CHECK(sq.coeff(q) == 0.0);
  CHECK(sq.leading_weight() == doctest::Approx(1.0));

  const auto cube = hermite_coeffs(make_filter("cube").fn);
  CHECK(cube.rank == 1);
  CHECK(cube.coeff(1) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(cube.coeff(3) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(cube.coeff(2) == 0.0);
  CHECK(cube.coeff(4) == 0.0);

  // E[e^{tX} H_q(X)] = t^q e^{t^2/2} at t = 1.
  const auto ex = hermite_coeffs(make_filter("centered-exp").fn);
  CHECK(ex.rank == 1);
  for (int q = 1; q <= 12; ++q) CHECK(ex.coeff(q) == doctest::Approx(std::exp(0.5)).epsilon(1e-8));

  const auto h4 = hermite_coeffs(make_filter("hermite:4").fn);
  CHECK(h4.rank == 4);
  CHECK(h4.coeff(4) == doctest::Approx(24.0).epsilon(1e-10));
}

TEST_CASE("uncentered filters are rejected") {
  try {
    hermite_coeffs([](double x) { return x * x; });
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("not centered") != std::string::npos);
    CHECK(std::string(e.what()).find("1.0") != std::string::npos);
  }
  CHECK_THROWS(make_filter("hermite:0"));
  CHECK_THROWS(make_filter("nope"));
}

TEST_CASE("Parseval identity") {
  const auto cube = hermite_coeffs(make_filter("cube").fn);
  CHECK(cube.l2 == doctest::Approx(15.0).epsilon(1e-6));  // E X^6
  const auto ex = hermite_coeffs(make_filter("centered-exp").fn);
  const double e = std::exp(1.0);
  CHECK(ex.l2 == doctest::Approx(e * e - e).epsilon(1e-3));
  CHECK(ex.tail_mass < 1e-20);
  double partial = 0.0, fact = 1.0;
  for (int q = 1; q <= ex.order(); ++q) {
    fact *= q;
    const double next = partial + ex.coeff(q) * ex.coeff(q) / fact;
    CHECK(next >= partial);
    partial = next;
  }
}

TEST_CASE("rank detection is stable in the threshold") {
  for (double tol : {1e-9, 1e-10, 1e-11}) {
    HermiteOptions opt;
    opt.rank_tol = tol;
    CHECK(hermite_coeffs(make_filter("square").fn, opt).rank == 2);
    CHECK(hermite_coeffs(make_filter("hermite:3").fn, opt).rank == 3);
    CHECK(hermite_coeffs([](double x) { return std::sin(x); }, opt).rank == 1);
  }
}

TEST_CASE("subordination") {
  const std::vector<double> x{0.0, 1.0, 2.0};
  const auto id = subordinate(make_filter("identity"), x);
  CHECK(id == x);
  const auto sq = subordinate(make_filter("square"), x);
  CHECK(sq == std::vector<double>{-1.0, 0.0, 3.0});

  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  std::vector<double> r(500);
  for (auto& v : r) v = 2.0 * nd(gen);
  const auto direct = subordinate(make_filter("cube"), r);
  const auto series = subordinate(hermite_coeffs(make_filter("cube").fn), r);
  for (std::size_t i = 0; i < r.size(); ++i)
    CHECK(series[i] == doctest::Approx(direct[i]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("expansion json round trip") {
  const auto cube = hermite_coeffs(make_filter("cube").fn);
  const auto js = cube.to_json();
  CHECK(js.find("\"rank\":1") != std::string::npos);
  const auto back = HermiteExpansion::from_json(js);
  CHECK(back.rank == 1);
  CHECK(back.order() == cube.order());
  CHECK(back.coeff(3) == doctest::Approx(6.0));
  CHECK(back.l2 == doctest::Approx(cube.l2));
}
