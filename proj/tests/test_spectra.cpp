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

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lmw/errors.h"
#include "lmw/spectra.h"

using namespace lmw;
using boost::math::quadrature::tanh_sinh;

namespace {

constexpr double kPi = std::numbers::pi;

double farima_constant(double d) {
  return std::tgamma(1 - d) * std::tgamma(1 - d) / (2 * kPi * std::tgamma(1 - 2 * d));
}

// rho(n) = Gamma(n+d) Gamma(1-d) / (Gamma(n-d+1) Gamma(d))
double farima_rho(double d, int n) {
  return std::exp(std::lgamma(n + d) + std::lgamma(1 - d) - std::lgamma(n - d + 1) - std::lgamma(d));
}

// r(n) = 2 int_0^pi cos(n l) f(l) dl with the pole handled by tanh-sinh.
double brute_autocov(const MemoryModel& m, int n) {
  tanh_sinh<double> ts;
  auto f = [&](double l) { return 2.0 * std::cos(n * l) * eval_f(m, l); };
  return ts.integrate(f, 0.0, 1.0) + ts.integrate(f, 1.0, kPi);
}

// (f * f)(lambda) by direct quadrature split at the singular points u=0 and u=lambda.
double brute_conv(const MemoryModel& m, double lambda) {
  tanh_sinh<double> ts;
  auto g = [&](double u) { return eval_f(m, u) * eval_f(m, lambda - u); };
  return ts.integrate(g, -kPi, 0.0) + ts.integrate(g, 0.0, lambda) + ts.integrate(g, lambda, kPi);
}

PeriodicGrid random_grid(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PeriodicGrid g;
  g.values.resize(n);
  for (auto& v : g.values) v = u(gen);
  return g;
}

}  // namespace

TEST_CASE("eval_f on simple models") {
  const MemoryModel white(0.0, [](double) { return 1.0 / (2 * kPi); }, "white");
  CHECK(eval_f(white, 1.0) == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-12));
  CHECK_THROWS_AS(eval_f(white, 0.0), DomainError);

  const auto m = MemoryModel::farima(0.35);
  const double c = farima_constant(0.35);
  CHECK(m.fstar_at_zero() == doctest::Approx(c).epsilon(1e-9));
  CHECK(eval_f(m, kPi) == doctest::Approx(c * std::pow(2.0, -0.7)).epsilon(1e-12));
  CHECK(eval_f(m, 0.01) == doctest::Approx(c * std::pow(0.01, -0.7)).epsilon(0.01));
  CHECK(eval_f(m, -0.3) == doctest::Approx(eval_f(m, 0.3)).epsilon(1e-14));
}

TEST_CASE("memory parameter domain") {
  CHECK_THROWS_AS(MemoryModel::farima(0.5), DomainError);
  CHECK_THROWS_AS(MemoryModel::farima(-0.1), DomainError);
  CHECK_THROWS(MemoryModel::arfima1(0.2, 1.0));
}

TEST_CASE("density integrates to one") {
  tanh_sinh<double> ts;
  for (double d : {0.1, 0.25, 0.35, 0.45}) {
    const auto m = MemoryModel::farima(d);
    CHECK(m.normalized());
    const double total = 2.0 * (ts.integrate([&](double l) { return eval_f(m, l); }, 0.0, 1.0) +
                                ts.integrate([&](double l) { return eval_f(m, l); }, 1.0, kPi));
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
  const auto ar = MemoryModel::arfima1(0.3, 0.5);
  const double total = 2.0 * (ts.integrate([&](double l) { return eval_f(ar, l); }, 0.0, 1.0) +
                              ts.integrate([&](double l) { return eval_f(ar, l); }, 1.0, kPi));
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("white noise autocovariance") {
  const MemoryModel white(0.0, [](double) { return 1.0 / (2 * kPi); }, "white");
  const auto r = autocovariance(white, 10);
  CHECK(r.normalized);
  CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-10));
  for (int n = 1; n <= 10; ++n) CHECK(std::abs(r.values[n]) < 1e-10);
}

TEST_CASE("autocovariance by quadrature matches the FARIMA closed form") {
  // A generic constant-f* model goes through the quadrature route.
  const double d = 0.35;
  const MemoryModel m(d, [](double) { return 1.0; }, "constant");
  const auto r = autocovariance(m, 64);
  CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.values[1] / r.values[0] == doctest::Approx(d / (1 - d)).epsilon(1e-7));
  for (int n : {2, 5, 17, 64}) CHECK(r.values[n] == doctest::Approx(farima_rho(d, n)).epsilon(1e-6));
  const auto closed = farima_autocovariance(d, 64);
  for (int n = 0; n <= 64; ++n) CHECK(closed[n] == doctest::Approx(farima_rho(d, n == 0 ? 0 : n)).epsilon(1e-12));
}

TEST_CASE("autocovariance of an ARFIMA(1,d,0) density against direct quadrature") {
  const auto m = MemoryModel::arfima1(0.3, 0.4);
  const auto r = autocovariance(m, 8);
  for (int n : {0, 1, 3, 8}) CHECK(r.values[n] == doctest::Approx(brute_autocov(m, n)).epsilon(1e-7));
}

TEST_CASE("long-lag autocovariance follows n^{2d-1}") {
  const double d = 0.35;
  const MemoryModel m(d, [](double) { return 1.0; }, "constant");
  const auto r = autocovariance(m, 4096);
  std::vector<double> scaled;
  for (int n = 256; n <= 4096; n *= 2) scaled.push_back(r.values[n] * std::pow(n, 1 - 2 * d));
  for (double s : scaled) {
    CHECK(s > 0.0);
    CHECK(s == doctest::Approx(scaled.back()).epsilon(0.05));
  }
}

TEST_CASE("periodic convolution of constants, symmetry and linearity") {
  PeriodicGrid a, b;
  a.values.assign(1024, 2.0);
  b.values.assign(1024, 3.0);
  const auto c = periodic_convolve(a, b);
  for (double v : c.values) CHECK(v == doctest::Approx(2 * kPi * 6.0).epsilon(1e-12));

  const auto x = random_grid(2048, 1), y = random_grid(2048, 2), z = random_grid(2048, 3);
  const auto xy = periodic_convolve(x, y), yx = periodic_convolve(y, x);
  for (std::size_t i = 0; i < 2048; ++i) CHECK(xy.values[i] == doctest::Approx(yx.values[i]).epsilon(1e-12));

  PeriodicGrid sum;
  sum.values.resize(2048);
  for (std::size_t i = 0; i < 2048; ++i) sum.values[i] = y.values[i] + 2.5 * z.values[i];
  const auto lhs = periodic_convolve(x, sum), xz = periodic_convolve(x, z);
  for (std::size_t i = 0; i < 2048; ++i)
    CHECK(lhs.values[i] == doctest::Approx(xy.values[i] + 2.5 * xz.values[i]).epsilon(1e-12));

  CHECK_THROWS_AS(periodic_convolve(random_grid(1024, 4), random_grid(2048, 5)), SizeError);
}

TEST_CASE("self-convolution against direct quadrature and grid refinement") {
  const auto m = MemoryModel::farima(0.35);
  const auto one = self_convolve(m, 1, 1 << 14);
  CHECK(one.values[one.zero_index() + 100] == doctest::Approx(eval_f(m, one.lambda(one.zero_index() + 100))));

  const auto coarse = self_convolve(m, 2, 1 << 15), fine = self_convolve(m, 2, 1 << 16);
  for (double lam : {0.25, 0.5, 1.0, 2.5}) {
    const double ref = brute_conv(m, lam);
    CHECK(coarse.at(lam) == doctest::Approx(ref).epsilon(0.005));
    CHECK(fine.at(lam) == doctest::Approx(ref).epsilon(0.005));
  }
  const double h = 2 * kPi / (1 << 15);
  double worst = 0.0;
  for (std::size_t i = coarse.zero_index() + 10; i < coarse.size(); ++i) {
    const double lam = coarse.lambda(i);
    if (lam < 10 * h) continue;
    worst = std::max(worst, std::abs(fine.at(lam) / coarse.values[i] - 1.0));
  }
  CHECK(worst < 0.01);
}

TEST_CASE("second-order convolution in the long-memory regime") {
  const auto m = MemoryModel::farima(0.35);
  const auto g = self_convolve(m, 2);
  REQUIRE(g.singular_exponent.has_value());
  CHECK(*g.singular_exponent == doctest::Approx(0.4).epsilon(1e-12));
  double lo = INFINITY, hi = 0.0, sup = 0.0;
  for (std::size_t i = g.zero_index() + 1; i < g.size(); ++i) {
    const double lam = g.lambda(i), s = std::pow(lam, 0.4) * g.values[i];
    sup = std::max(sup, s);
    if (lam >= 1e-3 && lam <= 1e-2) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  CHECK((hi - lo) / lo < 0.05);
  CHECK(std::isfinite(sup));
}

TEST_CASE("second-order convolution in the short-memory regime") {
  const auto m = MemoryModel::farima(0.2);
  const auto g = self_convolve(m, 2);
  CHECK(g.singular_exponent.value_or(0.0) == 0.0);
  const std::size_t z = g.zero_index();
  const double near0 = g.values[z + 1];
  CHECK(near0 > 0.0);
  double sup = 0.0;
  for (std::size_t i = z + 1; i < g.size(); ++i) sup = std::max(sup, g.values[i]);
  CHECK(sup == doctest::Approx(near0).epsilon(1e-9));
  CHECK(g.values[z + 8] == doctest::Approx(near0).epsilon(0.02));
}

TEST_CASE("boundedness near zero follows the critical order") {
  for (double d : {0.1, 0.2, 0.3, 0.4}) {
    for (int q : {1, 2, 3}) {
      const auto g = self_convolve(MemoryModel::farima(d), q, 1 << 15);
      const std::size_t z = g.zero_index();
      const double ratio = g.values[z + 4] / g.values[z + 64];
      const bool long_memory = q <= critical_order(d);
      INFO("d=" << d << " q=" << q << " ratio=" << ratio);
      CHECK(long_memory == (memory_param(d, q) > 0.0));
      CHECK(long_memory == (ratio > 1.4));
      CHECK(long_memory == (g.singular_exponent.value_or(0.0) > 0.0));
    }
  }
}

TEST_CASE("critical order and memory parameter") {
  CHECK(critical_order(0.35) == 3);
  CHECK(critical_order(0.2) == 1);
  CHECK(critical_order(0.25) == 1);
  CHECK(critical_order(0.4) == 4);
  CHECK_THROWS_AS(critical_order(0.5), DomainError);
  CHECK_THROWS_AS(critical_order(0.0), DomainError);
  CHECK(memory_param(0.3, 1) == doctest::Approx(0.3));
  CHECK(memory_param(0.35, 2) == doctest::Approx(0.2));
  CHECK(memory_param(0.2, 2) == doctest::Approx(-0.1));
}

TEST_CASE("grid csv export") {
  PeriodicGrid g = random_grid(1024, 9);
  std::ostringstream os;
  g.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "lambda,value");
  int rows = 0;
  double last = 0.0;
  while (std::getline(is, line)) {
    ++rows;
    last = std::stod(line.substr(0, line.find(',')));
  }
  CHECK(rows == 1024);
  CHECK(last == doctest::Approx(kPi));
}
