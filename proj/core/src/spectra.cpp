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

#include "lmw/spectra.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "lmw/errors.h"
#include "lmw/fft.h"
#include "lmw/quadrature.h"

namespace lmw {
namespace {

constexpr double kPi = std::numbers::pi;

void check_memory(double d) {
  if (!(d >= 0.0 && d < 0.5)) throw DomainError("memory parameter must satisfy 0<d<1/2 (got " + std::to_string(d) + ")");
}

double wrap(double lambda) {
  // Map to (-pi, pi].
  double x = std::remainder(lambda, 2.0 * kPi);
  if (x <= -kPi) x += 2.0 * kPi;
  return x;
}

// |1 - e^{-il}|^{-2d} = |2 sin(l/2)|^{-2d}.
double fractional_factor(double lambda, double d) {
  if (d == 0.0) return 1.0;
  return std::pow(std::abs(2.0 * std::sin(0.5 * lambda)), -2.0 * d);
}

// J(X) = int_0^X u^a cos(u) du for -1 < a <= 0.
double cosine_power_integral(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (x <= 40.0) {
    const double u1 = std::min(x, 1.0);
    // Series on [0, u1]: sum_k (-1)^k u1^{2k+a+1} / ((2k)! (2k+a+1)).
    double series = 0.0, fact = 1.0, upow = std::pow(u1, a + 1.0);
    for (int k = 0; k < 30; ++k) {
      if (k > 0) {
        fact *= (2.0 * k - 1.0) * (2.0 * k);
        upow *= u1 * u1;
      }
      const double term = upow / (fact * (2.0 * k + a + 1.0));
      series += (k % 2 == 0) ? term : -term;
      if (term < 1e-18) break;
    }
    if (x <= 1.0) return series;
    const auto rest = quad::gk15([a](double u) { return std::pow(u, a) * std::cos(u); }, 1.0, x,
                                 static_cast<int>(std::ceil(x - 1.0)));
    return series + rest.value;
  }
  // J(inf) - Re int_X^inf u^a e^{iu} du, the latter by its asymptotic series.
  const double j_inf = std::tgamma(1.0 + a) * std::cos(0.5 * kPi * (1.0 + a));
  const std::complex<double> i1(0.0, 1.0);
  std::complex<double> term = 1.0, sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    sum += term;
    const std::complex<double> next = term * i1 * (a - k) / x;
    if (std::abs(next) < 1e-18 || std::abs(next) > std::abs(term)) break;
    term = next;
  }
  const std::complex<double> tail = i1 * std::exp(i1 * x) * std::pow(x, a) * sum;
  return j_inf - tail.real();
}

void fix_near_zero(PeriodicGrid& g, double beta) {
  const std::size_t i0 = g.zero_index();
  const double h = g.step();
  if (beta > 0.0) {
    double acc = 0.0;
    int count = 0;
    for (std::size_t k = 4; k <= 16; ++k) {
      acc += g.values[i0 + k] * std::pow(k * h, beta) + g.values[i0 - k] * std::pow(k * h, beta);
      count += 2;
    }
    const double c = acc / count;
    for (std::size_t k = 1; k < 4; ++k) g.values[i0 + k] = g.values[i0 - k] = c * std::pow(k * h, -beta);
    g.values[i0] = c * std::pow(0.5 * h, -beta) / (1.0 - beta);
  } else {
    const double edge = 0.5 * (g.values[i0 + 4] + g.values[i0 - 4]);
    for (std::size_t k = 0; k < 4; ++k) g.values[i0 + k] = g.values[i0 - k] = edge;
  }
}

}  // namespace

MemoryModel MemoryModel::farima(double d, std::size_t grid) {
  check_memory(d);
  MemoryModel m;
  m.d_ = d;
  const double c = std::tgamma(1.0 - d) * std::tgamma(1.0 - d) / (2.0 * kPi * std::tgamma(1.0 - 2.0 * d));
  m.fstar_ = [c](double) { return c; };
  m.farima_ = true;
  m.name_ = "farima";
  m.finish(grid, false);
  return m;
}

MemoryModel MemoryModel::arfima1(double d, double phi, std::size_t grid) {
  if (!(std::abs(phi) < 1.0)) throw DomainError("AR coefficient must satisfy |phi|<1");
  return MemoryModel(
      d, [phi](double l) { return 1.0 / (1.0 - 2.0 * phi * std::cos(l) + phi * phi); },
      "arfima1:" + std::to_string(phi), true, grid);
}

MemoryModel::MemoryModel(double d, Density fstar, std::string name, bool normalize, std::size_t grid)
    : d_(d), fstar_(std::move(fstar)), name_(std::move(name)) {
  check_memory(d);
  if (!fstar_) throw std::invalid_argument("MemoryModel: empty f* evaluator");
  finish(grid, normalize);
}

void MemoryModel::finish(std::size_t grid, bool normalize) {
  if (grid < 1024 || grid % 2 != 0) throw SizeError("MemoryModel: grid size must be even and >= 2^10");
  fstar0_ = fstar_(0.0);
  if (!(fstar0_ > 0.0) || !std::isfinite(fstar0_)) throw DomainError("f* must be finite and positive at 0");
  for (int k = 10; k <= 30; k += 10) {
    const double l = std::ldexp(1.0, -k);
    if (std::abs(fstar_(l) - fstar0_) > 1e-3 * fstar0_ * std::pow(2.0, 10 - k) + 1e-12 * fstar0_)
      throw DomainError("f* must be continuous at 0");
  }
  auto values = std::make_shared<std::vector<double>>(grid);
  const double h = 2.0 * kPi / static_cast<double>(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double v = fstar_(-kPi + h * static_cast<double>(i));
    if (!std::isfinite(v) || v < 0.0) throw DomainError("f* must be bounded and non-negative on (-pi,pi]");
    (*values)[i] = v;
  }
  const double dd = d_;
  const Density raw = fstar_;
  auto f = [dd, raw](double u) { return fractional_factor(u, dd) * (raw(u) + raw(-u)); };
  quad::ShellOptions opt;
  opt.rel_tol = 1e-13;
  const double integral = quad::integrate_endpoint(f, kPi, opt).value;
  if (normalize) {
    scale_ = 1.0 / integral;
    for (auto& v : *values) v *= scale_;
    fstar0_ *= scale_;
    const double s = scale_;
    auto fs = [dd, raw, s](double u) { return fractional_factor(u, dd) * s * (raw(u) + raw(-u)); };
    integral_ = quad::integrate_endpoint(fs, kPi, opt).value;
  } else {
    integral_ = integral;
  }
  grid_ = std::move(values);
}

double MemoryModel::fstar(double lambda) const { return scale_ * fstar_(lambda); }

bool MemoryModel::normalized(double tol) const { return std::abs(integral_ - 1.0) <= tol; }

double PeriodicGrid::step() const { return 2.0 * kPi / static_cast<double>(values.size()); }

double PeriodicGrid::lambda(std::size_t i) const { return -kPi + step() * static_cast<double>(i); }

double PeriodicGrid::at(double lambda) const {
  const std::size_t n = values.size();
  const double x = (wrap(lambda) + kPi) / step();
  const double fl = std::floor(x);
  const double t = x - fl;
  const std::size_t i = static_cast<std::size_t>(fl) % n;
  return (1.0 - t) * values[i] + t * values[(i + 1) % n];
}

void PeriodicGrid::write_csv(std::ostream& os) const {
  os << "lambda,value\n";
  const std::size_t n = values.size();
  char buf[64];
  for (std::size_t i = 1; i <= n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", -kPi + step() * static_cast<double>(i), values[i % n]);
    os << buf;
  }
}

double eval_f(const MemoryModel& model, double lambda) {
  const double l = wrap(lambda);
  if (l == 0.0) throw DomainError("eval_f: pole at lambda = 0");
  return fractional_factor(l, model.d()) * model.fstar(l);
}

std::vector<double> farima_autocovariance(double d, std::size_t n_max) {
  check_memory(d);
  std::vector<double> r(n_max + 1);
  r[0] = 1.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    r[n] = r[n - 1] * (dn - 1.0 + d) / (dn - d);
  }
  return r;
}

Autocovariance autocovariance(const MemoryModel& model, std::size_t n_max) {
  const double d = model.d();
  const double c = model.fstar_at_zero();
  const std::size_t n_grid = std::max(model.grid_size(), fft::next_pow2(16 * (n_max + 1)));
  const std::size_t half = n_grid / 2;
  const double h = 2.0 * kPi / static_cast<double>(n_grid);

  // Bounded remainder R = f - c|l|^{-2d} on [0, pi]; R(0) = 0.
  std::vector<double> rem(half + 1);
  rem[0] = 0.0;
  for (std::size_t i = 1; i <= half; ++i) {
    const double l = h * static_cast<double>(i);
    const double pole = (d == 0.0) ? c : c * std::pow(l, -2.0 * d);
    rem[i] = fractional_factor(l, d) * model.fstar(l) - pole;
  }
  const auto y = fft::dct1(rem);

  Autocovariance out;
  out.values.resize(n_max + 1);
  const double a = -2.0 * d;
  for (std::size_t n = 0; n <= n_max; ++n) {
    double pole_part;
    if (n == 0) {
      pole_part = 2.0 * c * std::pow(kPi, 1.0 + a) / (1.0 + a);
    } else {
      const double dn = static_cast<double>(n);
      pole_part = 2.0 * c * std::pow(dn, -1.0 - a) * cosine_power_integral(a, dn * kPi);
    }
    out.values[n] = pole_part + h * y[n];
  }
  out.normalized = std::abs(out.values[0] - 1.0) <= 1e-6;
  return out;
}

PeriodicGrid periodic_convolve(const PeriodicGrid& g1, const PeriodicGrid& g2) {
  const std::size_t n = g1.size();
  if (n != g2.size()) throw SizeError("periodic_convolve: grid sizes differ");
  if (n < 2 || n % 2 != 0) throw SizeError("periodic_convolve: grid size must be even");
  auto f1 = fft::forward_real(g1.values);
  const auto f2 = fft::forward_real(g2.values);
  for (std::size_t i = 0; i < f1.size(); ++i) f1[i] *= f2[i];
  const auto circ = fft::inverse_real(f1, n);
  const double scale = g1.step() / static_cast<double>(n);
  PeriodicGrid out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = scale * circ[(k + n / 2) % n];
  if (g1.singular_exponent && g2.singular_exponent)
    out.singular_exponent = std::max(*g1.singular_exponent + *g2.singular_exponent - 1.0, 0.0);
  else if (g1.singular_exponent)
    out.singular_exponent = g1.singular_exponent;
  else if (g2.singular_exponent)
    out.singular_exponent = g2.singular_exponent;
  return out;
}

PeriodicGrid density_grid(const MemoryModel& model, std::size_t n) {
  if (n < 1024 || n % 2 != 0) throw SizeError("density_grid: size must be even and >= 2^10");
  PeriodicGrid g;
  g.values.resize(n);
  const double h = 2.0 * kPi / static_cast<double>(n);
  const bool cached = (n == model.grid_size());
  const auto fs = model.fstar_grid();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == n / 2) continue;
    const double l = -kPi + h * static_cast<double>(i);
    g.values[i] = fractional_factor(l, model.d()) * (cached ? fs[i] : model.fstar(l));
  }
  const double d = model.d();
  g.values[n / 2] = model.fstar_at_zero() * std::pow(0.5 * h, -2.0 * d) / (1.0 - 2.0 * d);
  if (d > 0.0) g.singular_exponent = 2.0 * d;
  return g;
}

PeriodicGrid self_convolve(const MemoryModel& model, int q, std::size_t n) {
  if (q < 1) throw DomainError("self_convolve: q must be >= 1");
  const PeriodicGrid f = density_grid(model, n);
  PeriodicGrid g = f;
  for (int k = 2; k <= q; ++k) {
    g = periodic_convolve(g, f);
    const double beta = std::max(2.0 * memory_param(model.d(), k), 0.0);
    g.singular_exponent = beta;
    fix_near_zero(g, beta);
  }
  return g;
}

int critical_order(double d) {
  if (!(d > 0.0 && d < 0.5)) throw DomainError("critical_order requires 0<d<1/2 (got " + std::to_string(d) + ")");
  const double x = 1.0 / (1.0 - 2.0 * d);
  const double rx = std::round(x);
  if (std::abs(x - rx) <= 1e-12 * rx) return static_cast<int>(rx) - 1;
  return static_cast<int>(std::floor(x));
}

double memory_param(double d, int q) { return q * d + 0.5 * (1.0 - q); }

}  // namespace lmw
