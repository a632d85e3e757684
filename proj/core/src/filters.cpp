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

#include "lmw/filters.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "lmw/errors.h"
#include "lmw/fft.h"

namespace lmw {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr std::size_t kCascadeGrid = std::size_t{1} << 18;
constexpr double kTapThreshold = 1e-12;

const std::vector<FilterFamily>& families() {
  static const std::vector<FilterFamily> table = [] {
    const double s3 = std::sqrt(3.0);
    const double n4 = 4.0 * kSqrt2;
    return std::vector<FilterFamily>{
        {"haar", {1.0 / kSqrt2, 1.0 / kSqrt2}, 1.0},
        {"db2", {(1 + s3) / n4, (3 + s3) / n4, (3 - s3) / n4, (1 - s3) / n4}, 1.2},
        {"db3",
         {0.3326705529500825, 0.8068915093110924, 0.4598775021184914, -0.1350110200102546,
          -0.0854412738820267, 0.0352262918857095},
         1.5},
    };
  }();
  return table;
}

cplx dft_taps(std::span<const double> taps, std::int64_t offset, double lambda) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    const double t = static_cast<double>(offset + static_cast<std::int64_t>(i));
    acc += taps[i] * std::polar(1.0, -lambda * t);
  }
  return acc;
}

// Drops leading and trailing zeros, adjusting the offset.
FilterLevel trimmed(int j, std::int64_t offset, std::vector<double> taps) {
  std::size_t lo = 0, hi = taps.size();
  while (lo < hi && taps[lo] == 0.0) ++lo;
  while (hi > lo && taps[hi - 1] == 0.0) --hi;
  FilterLevel out;
  out.j = j;
  out.offset = offset + static_cast<std::int64_t>(lo);
  out.taps.assign(taps.begin() + static_cast<std::ptrdiff_t>(lo),
                  taps.begin() + static_cast<std::ptrdiff_t>(hi));
  return out;
}

}  // namespace

const FilterFamily& filter_family(std::string_view name) {
  for (const auto& f : families())
    if (f.name == name) return f;
  throw DomainError("unknown filter family '" + std::string(name) + "' (haar, db2, db3)");
}

const FilterLevel& FilterBank::level(int j) const {
  if (j < 1 || j > J())
    throw SizeError("filter level " + std::to_string(j) + " outside 1.." + std::to_string(J()));
  return levels[static_cast<std::size_t>(j - 1)];
}

FilterBank FilterBank::with_K(int k) const {
  if (k < 0) throw PreconditionError("K must be >= 0");
  if (k > M)
    throw PreconditionError("integration order K=" + std::to_string(k) +
                            " exceeds the vanishing moments (M >= K required, M=" +
                            std::to_string(M) + ")");
  FilterBank out = *this;
  out.K = k;
  return out;
}

FilterLevel FilterBank::factored(int j) const { return factor_K(level(j), K); }

FilterBank build_mra_bank(std::span<const double> lowpass, int J, double alpha,
                          std::string family) {
  if (lowpass.size() < 2) throw SizeError("lowpass filter needs at least two taps");
  if (J < 1) throw SizeError("number of levels J must be >= 1");
  double g0 = 0.0;
  for (double g : lowpass) {
    if (!std::isfinite(g)) throw DomainError("lowpass taps must be finite");
    g0 += g;
  }
  if (std::abs(g0 - kSqrt2) > 1e-8) {
    std::ostringstream msg;
    msg << "lowpass filter is not conjugate-mirror normalized: sum g = " << std::setprecision(12)
        << g0 << ", expected sqrt(2)";
    throw DomainError(msg.str());
  }

  const std::size_t L = lowpass.size();
  std::vector<double> high(L);
  for (std::size_t l = 0; l < L; ++l)
    high[l] = ((l % 2) ? -1.0 : 1.0) * lowpass[L - 1 - l];

  const std::size_t max_support = ((std::size_t{1} << J) - 1) * (L - 1) + 1;
  const std::size_t N = std::max(kCascadeGrid, fft::next_pow2(2 * max_support));

  std::vector<cplx> gpad(N, 0.0), hpad(N, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    gpad[l] = lowpass[l];
    hpad[l] = high[l];
  }
  const auto ghat = fft::forward(gpad);
  const auto hhat = fft::forward(hpad);

  FilterBank bank;
  bank.family = std::move(family);
  bank.alpha = alpha;
  bank.lowpass = std::vector<double>(lowpass.begin(), lowpass.end());

  std::vector<cplx> prod(N, 1.0), level(N);
  for (int j = 1; j <= J; ++j) {
    const std::size_t scale = std::size_t{1} << (j - 1);
    for (std::size_t k = 0; k < N; ++k) level[k] = hhat[(scale * k) & (N - 1)] * prod[k];
    auto time = fft::inverse(level);
    const std::size_t support = ((std::size_t{1} << j) - 1) * (L - 1) + 1;
    std::vector<double> taps(support);
    for (std::size_t t = 0; t < support; ++t) {
      const double v = time[t].real() / static_cast<double>(N);
      taps[t] = std::abs(v) < kTapThreshold ? 0.0 : v;
    }
    bank.levels.push_back(trimmed(j, 0, std::move(taps)));
    for (std::size_t k = 0; k < N; ++k) prod[k] *= ghat[(scale * k) & (N - 1)];
  }

  int m = std::numeric_limits<int>::max();
  for (const auto& lv : bank.levels) m = std::min(m, vanishing_moments(lv));
  bank.M = m;
  return bank;
}

FilterBank build_family_bank(std::string_view family, int J) {
  const auto& f = filter_family(family);
  return build_mra_bank(f.lowpass, J, f.alpha, f.name);
}

cplx dft_filter(const FilterLevel& level, double lambda) {
  return dft_taps(level.taps, level.offset, lambda);
}

int vanishing_moments(std::span<const double> taps, double rel_tol) {
  bool any = false;
  for (double t : taps) any = any || t != 0.0;
  if (!any) throw SizeError("vanishing_moments: all taps are zero");
  // Moments are shift invariant in the count of vanishing orders; centering
  // keeps the powers well scaled.
  const double c = 0.5 * static_cast<double>(taps.size() - 1);
  int M = 0;
  for (std::size_t m = 0; m < taps.size(); ++m) {
    double s = 0.0, a = 0.0;
    for (std::size_t i = 0; i < taps.size(); ++i) {
      const double w = taps[i] * std::pow(static_cast<double>(i) - c, static_cast<double>(m));
      s += w;
      a += std::abs(w);
    }
    if (a == 0.0 || std::abs(s) >= rel_tol * a) break;
    ++M;
  }
  return M;
}

int vanishing_moments(const FilterLevel& level, double rel_tol) {
  return vanishing_moments(level.taps, rel_tol);
}

FilterLevel factor_K(const FilterLevel& level, int K) {
  if (K < 0) throw PreconditionError("K must be >= 0");
  if (K == 0) return level;
  const int m = vanishing_moments(level);
  if (K > m)
    throw PreconditionError("factor_K: K=" + std::to_string(K) + " exceeds M=" +
                            std::to_string(m) + " vanishing moments (M >= K required)");
  double scale = 0.0;
  for (double t : level.taps) scale = std::max(scale, std::abs(t));
  std::vector<double> cur = level.taps;
  for (int r = 0; r < K; ++r) {
    std::vector<double> next(cur.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) next[i] = (acc += cur[i]);
    if (std::abs(next.back()) > 1e-10 * std::max(scale, 1.0) * static_cast<double>(cur.size()))
      throw NumericError("factor_K: trailing partial sum does not vanish");
    next.pop_back();
    if (next.empty()) throw NumericError("factor_K: support exhausted");
    cur = std::move(next);
  }
  return FilterLevel{level.j, level.offset, std::move(cur)};
}

std::vector<double> default_smoothness_grid() {
  std::vector<double> grid;
  const int n = 4000;
  const double lo = std::log(1e-5), hi = std::log(std::numbers::pi);
  for (int i = 0; i < n; ++i) grid.push_back(std::exp(lo + (hi - lo) * i / (n - 1)));
  return grid;
}

SmoothnessReport check_uniform_smoothness(const FilterBank& bank, std::span<const double> grid) {
  SmoothnessReport rep;
  const double e = bank.M + bank.alpha;
  for (int j = 1; j <= bank.J(); ++j) {
    const auto& lv = bank.level(j);
    const double g = FilterBank::gamma(j);
    double sup = 0.0;
    for (double lam : grid) {
      const double a = std::abs(lam);
      if (a == 0.0) continue;
      const double gl = g * a;
      const double ratio = std::abs(dft_filter(lv, lam)) *
                           std::exp(e * std::log1p(gl) - bank.M * std::log(gl)) / std::sqrt(g);
      sup = std::max(sup, ratio);
    }
    rep.per_level.push_back(sup);
    rep.c_hat = std::max(rep.c_hat, sup);
    rep.running.push_back(rep.c_hat);
  }
  const std::size_t n = rep.running.size();
  if (n >= 2) rep.stable = rep.running[n - 1] < 1.1 * rep.running[n - 2];
  if (n >= 3) {
    // Least-squares slope of log2(per_level) over the upper half of the levels.
    const std::size_t first = n / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
    for (std::size_t i = first; i < n; ++i) {
      const double x = static_cast<double>(i + 1), y = std::log2(rep.per_level[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      cnt += 1;
    }
    const double den = cnt * sxx - sx * sx;
    if (den > 0) rep.growth_exponent = (cnt * sxy - sx * sy) / den;
  }
  if (!rep.stable)
    std::clog << "lmw: warning: uniform smoothness bound not stable in J (measured growth "
                 "exponent "
              << rep.growth_exponent << ", declared alpha " << bank.alpha << ")\n";
  return rep;
}

namespace {

cplx cascade_product(std::span<const double> low, std::span<const double> high, double lambda,
                     int factors) {
  // psi_hat(l) = 2^{-1/2} hhat(l/2) prod_{i>=2} ghat(l/2^i)/sqrt(2)
  cplx acc = dft_taps(high, 0, 0.5 * lambda) / kSqrt2;
  double w = 0.25 * lambda;
  for (int i = 0; i < factors; ++i, w *= 0.5) acc *= dft_taps(low, 0, w) / kSqrt2;
  return acc;
}

// (1 - e^{-iw})^M dft(f, w): keeps relative accuracy of a filter with M
// vanishing moments as w -> 0.
cplx factored_dft(const FilterLevel& f, int M, double w) {
  const cplx one_minus = cplx(0.0, 2.0 * std::sin(0.5 * w)) * std::polar(1.0, -0.5 * w);
  return std::pow(one_minus, M) * dft_taps(f.taps, f.offset, w);
}

std::vector<double> mirror(std::span<const double> low) {
  const std::size_t L = low.size();
  std::vector<double> h(L);
  for (std::size_t l = 0; l < L; ++l) h[l] = ((l % 2) ? -1.0 : 1.0) * low[L - 1 - l];
  return h;
}

}  // namespace

LimitTransferValue limit_transfer(const FilterBank& bank, double lambda) {
  if (bank.J() < 1) throw SizeError("limit_transfer: empty bank");
  const int J = bank.J();
  const double g = FilterBank::gamma(J);
  LimitTransferValue out;
  out.rescaled = dft_filter(bank.level(J), lambda / g) / std::sqrt(g);
  if (bank.lowpass) {
    const auto high = mirror(*bank.lowpass);
    out.product = cascade_product(*bank.lowpass, high, lambda, 25);
    out.discrepancy = std::abs(out.rescaled - *out.product);
    if (out.discrepancy > 1e-2) {
      out.warning = true;
      std::clog << "lmw: warning: limit transfer not converged at lambda=" << lambda
                << " (discrepancy " << out.discrepancy << ", J=" << J << ")\n";
    }
  }
  return out;
}

LimitTransfer::LimitTransfer(const FilterBank& bank, int product_factors)
    : factors_(product_factors), M_(bank.M), alpha_(bank.alpha) {
  if (bank.J() < 1) throw SizeError("LimitTransfer: empty bank");
  if (bank.lowpass) {
    mra_ = true;
    lowpass_ = *bank.lowpass;
    highpass_ = mirror(lowpass_);
    high_factored_ = factor_K(FilterLevel{1, 0, highpass_}, M_);
    support_ = static_cast<double>(lowpass_.size() - 1);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t t = 0; t < lowpass_.size(); ++t) {
      m1 += lowpass_[t] * static_cast<double>(t) / kSqrt2;
      m2 += lowpass_[t] * static_cast<double>(t * t) / kSqrt2;
    }
    mu1_ = m1;
    mu_var_ = m2 - m1 * m1;
  } else {
    top_j_ = bank.J();
    top_ = factor_K(bank.level(top_j_), M_);
    support_ = static_cast<double>(top_.support()) / FilterBank::gamma(top_j_);
  }
  // Measured constant of |hhat_inf(l)| <= C |l|^M / (1 + |l|)^{alpha + M}.
  const int n = 3000;
  const double lo = std::log(1e-3), hi = std::log(1e4);
  for (int i = 0; i < n; ++i) {
    const double l = std::exp(lo + (hi - lo) * i / (n - 1));
    const double r = std::abs((*this)(l)) * std::exp((alpha_ + M_) * std::log1p(l) - M_ * std::log(l));
    bound_ = std::max(bound_, r);
  }
}

cplx LimitTransfer::operator()(double lambda) const {
  if (!mra_) {
    const double g = FilterBank::gamma(top_j_);
    return factored_dft(top_, M_, lambda / g) / std::sqrt(g);
  }
  if (factors_ != 0) return cascade_product(lowpass_, highpass_, lambda, factors_);
  // Untruncated product: direct factors while the angle is large, principal
  // square roots of e^{-iw} once |w| < 1, and the closed-form second-order
  // log expansion of the remaining factors once w (L-1) < 1e-5.
  cplx acc = factored_dft(high_factored_, M_, 0.5 * lambda) / kSqrt2;
  double w = 0.25 * lambda;
  const double L1 = static_cast<double>(lowpass_.size() - 1);
  auto factor = [&](cplx z) {
    cplx s = 0.0;
    for (std::size_t t = lowpass_.size(); t-- > 0;) s = s * z + lowpass_[t];
    return s / kSqrt2;
  };
  while (std::abs(w) >= 1.0) {
    acc *= factor(std::polar(1.0, -w));
    w *= 0.5;
  }
  cplx z = std::polar(1.0, -w);
  while (std::abs(w) * L1 >= 1e-5) {
    acc *= factor(z);
    z = std::sqrt(z);
    w *= 0.5;
  }
  return acc * std::exp(cplx(-0.5 * (4.0 / 3.0) * w * w * mu_var_, -2.0 * w * mu1_));
}

void write_filter_file(std::ostream& os, const FilterBank& bank) {
  os << std::setprecision(17);
  os << bank.K << ' ' << bank.M << ' ' << bank.alpha << ' ' << bank.J() << '\n';
  os << "gamma_rule=pow2\n";
  for (const auto& lv : bank.levels) {
    os << lv.j << ' ' << lv.offset;
    for (double t : lv.taps) os << ' ' << t;
    os << '\n';
  }
}

FilterBank read_filter_file(std::istream& is) {
  FilterBank bank;
  std::string line;
  int J = 0;
  if (!std::getline(is, line)) throw SizeError("filter file: missing header line");
  {
    std::istringstream hs(line);
    if (!(hs >> bank.K >> bank.M >> bank.alpha >> J))
      throw SizeError("filter file: header must be `K M alpha J`");
  }
  if (!std::getline(is, line) || line.find("gamma_rule=pow2") == std::string::npos)
    throw SizeError("filter file: second line must be `gamma_rule=pow2`");
  if (J < 1) throw SizeError("filter file: J must be >= 1");
  if (!(bank.alpha > 0.5)) throw DomainError("filter file: alpha must exceed 1/2");
  for (int j = 1; j <= J; ++j) {
    if (!std::getline(is, line)) throw SizeError("filter file: missing level " + std::to_string(j));
    std::istringstream ls(line);
    FilterLevel lv;
    if (!(ls >> lv.j >> lv.offset) || lv.j != j)
      throw SizeError("filter file: level line " + std::to_string(j) + " malformed");
    double t;
    while (ls >> t) {
      if (!std::isfinite(t)) throw DomainError("filter file: non-finite tap");
      lv.taps.push_back(t);
    }
    if (lv.taps.empty()) throw SizeError("filter file: level " + std::to_string(j) + " has no taps");
    const int m = vanishing_moments(lv);
    if (m < bank.M)
      throw DomainError("filter file: level " + std::to_string(j) + " has " + std::to_string(m) +
                        " vanishing moments, header declares M=" + std::to_string(bank.M));
    bank.levels.push_back(std::move(lv));
  }
  if (bank.K > bank.M) throw PreconditionError("filter file: K exceeds M (M >= K required)");
  return bank;
}

void write_transfer_csv(std::ostream& os, const FilterBank& bank, std::span<const double> grid) {
  os << std::setprecision(10) << "lambda,j,abs_hhat\n";
  for (const auto& lv : bank.levels)
    for (double lam : grid) os << lam << ',' << lv.j << ',' << std::abs(dft_filter(lv, lam)) << '\n';
}

}  // namespace lmw
