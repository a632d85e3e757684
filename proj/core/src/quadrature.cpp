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

#include "lmw/quadrature.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lmw::quad {
namespace {

// Nodes/weights from QUADPACK (qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct ShellSum {
  double value = 0.0;
  double abs = 0.0;
  double error = 0.0;
};

// Integral of f over [a, b] (0 < a < b), in log coordinates when the shell is
// narrow enough, otherwise in equal linear panels.
ShellSum shell(const Integrand& f, double a, double b, double max_width) {
  ShellSum out;
  const double width = b - a;
  if (width <= max_width) {
    const double la = std::log(a), lb = std::log(b);
    const Integrand g = [&](double x) {
      const double u = std::exp(x);
      return f(u) * u;
    };
    const Integrand ga = [&](double x) {
      const double u = std::exp(x);
      return std::abs(f(u)) * u;
    };
    const auto e = gk15(g, la, lb);
    out.value = e.value;
    out.error = e.error;
    out.abs = gk15(ga, la, lb).value;
    return out;
  }
  const int panels = static_cast<int>(std::min(std::ceil(width / max_width), 16384.0));
  const double h = width / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, hi = (p + 1 == panels) ? b : lo + h;
    // Single pass computes both signed and absolute GK15 sums.
    const double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    const double fc = f(c);
    double rk = fc * kWgk[7], rg = fc * kWg[3], ra = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
      const double dx = hw * kXgk[j];
      const double f1 = f(c - dx), f2 = f(c + dx);
      rk += kWgk[j] * (f1 + f2);
      ra += kWgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
    }
    out.value += rk * hw;
    out.abs += ra * hw;
    out.error += std::abs((rk - rg) * hw);
  }
  return out;
}

double fitted_slope(const std::vector<double>& masses, std::size_t window) {
  // Least-squares slope of log2(mass) against shell index over the last
  // `window` shells. Zero masses are treated as strongly decaying.
  const std::size_t n = std::min(window, masses.size());
  if (n < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = masses[masses.size() - n + i];
    const double y = std::log2(std::max(m, 1e-300));
    const double x = static_cast<double>(i);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

// Walks shells away from the pivot in one direction. `edge(k)` returns the
// shell [lo, hi] for step k = 0, 1, 2, ...
template <class Edge>
ShellResult walk(const Integrand& f, const ShellOptions& opt, Edge edge, bool upper, double base_abs = 0.0) {
  ShellResult res;
  std::vector<double> masses;
  double prev_ratio = -1.0;
  for (int k = 0; k < opt.max_shells; ++k) {
    const auto [lo, hi] = edge(k);
    const ShellSum s = shell(f, lo, hi, opt.max_panel_width);
    res.value += s.value;
    res.abs_value += s.abs;
    res.error += s.error;
    masses.push_back(s.abs);
    ++res.shells;
    if (k + 1 < opt.min_shells) continue;

    const double scale = std::max(res.abs_value + base_abs, 1e-300);
    if (s.abs == 0.0 && masses.size() >= 2 && masses[masses.size() - 2] == 0.0) break;

    if (upper && opt.upper_tail_bound) {
      const double bound = opt.upper_tail_bound(hi);
      const double tol = opt.tail_rel_tol > 0.0 ? opt.tail_rel_tol : opt.rel_tol;
      if (bound <= tol * scale) {
        res.error += bound;
        break;
      }
      continue;
    }
    // Geometric extrapolation of the remaining shells.
    const double prev = masses[masses.size() - 2];
    if (prev <= 0.0) continue;
    const double ratio = s.abs / prev;
    const bool stable = prev_ratio > 0.0 && std::abs(ratio - prev_ratio) < 0.05 * (1.0 - std::min(ratio, 0.999)) + 1e-3;
    prev_ratio = ratio;
    if (ratio < 0.98 && stable) {
      const double tail_abs = s.abs * ratio / (1.0 - ratio);
      if (tail_abs <= opt.rel_tol * scale) {
        const double tail_signed = s.value * ratio / (1.0 - ratio);
        res.value += tail_signed;
        res.error += 0.1 * std::abs(tail_signed);
        break;
      }
    } else if (s.abs <= 1e-3 * opt.rel_tol * scale && ratio < 1.0) {
      break;
    }
    if (k + 1 == opt.max_shells) res.converged = false;
  }
  if (res.shells >= opt.max_shells) res.converged = false;
  const double slope = fitted_slope(masses, 8);
  if (upper)
    res.upper_slope = slope;
  else
    res.lower_slope = -slope;
  return res;
}

}  // namespace

Estimate gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * kWgk[7], rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = hw * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    rk += kWgk[j] * s;
    if (j % 2 == 1) rg += kWg[j / 2] * s;
  }
  return {rk * hw, std::abs((rk - rg) * hw)};
}

Estimate gk15(const Integrand& f, double a, double b, int panels) {
  if (panels < 1) throw std::invalid_argument("gk15: panels must be >= 1");
  Estimate total;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const auto e = gk15(f, a + p * h, (p + 1 == panels) ? b : a + (p + 1) * h);
    total.value += e.value;
    total.error += e.error;
  }
  return total;
}

ShellResult integrate_endpoint(const Integrand& f, double length, const ShellOptions& opt) {
  if (!(length > 0.0)) throw std::invalid_argument("integrate_endpoint: length must be positive");
  auto edge = [&](int k) {
    const double hi = std::ldexp(length, -k);
    return std::pair{0.5 * hi, hi};
  };
  ShellResult r = walk(f, opt, edge, false);
  return r;
}

ShellResult integrate_half_line(const Integrand& f, const ShellOptions& opt) {
  auto down = [&](int k) {
    const double hi = std::ldexp(opt.pivot, -k);
    return std::pair{0.5 * hi, hi};
  };
  auto up = [&](int k) {
    const double lo = std::ldexp(opt.pivot, k);
    return std::pair{lo, 2.0 * lo};
  };
  const ShellResult lo = walk(f, opt, down, false);
  const ShellResult hi = walk(f, opt, up, true, lo.abs_value);
  ShellResult r;
  r.value = lo.value + hi.value;
  r.abs_value = lo.abs_value + hi.abs_value;
  r.error = lo.error + hi.error;
  r.converged = lo.converged && hi.converged;
  r.lower_slope = lo.lower_slope;
  r.upper_slope = hi.upper_slope;
  r.shells = lo.shells + hi.shells;
  return r;
}

}  // namespace lmw::quad
