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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lmw {

using cplx = std::complex<double>;

/// Finite filter h(offset), ..., h(offset + taps.size() - 1).
struct FilterLevel {
  int j = 0;
  std::int64_t offset = 0;
  std::vector<double> taps;

  std::size_t support() const { return taps.size(); }
  std::int64_t first() const { return offset; }
  std::int64_t last() const { return offset + static_cast<std::int64_t>(taps.size()) - 1; }
};

/// Conjugate-mirror lowpass filter shipped with the library.
struct FilterFamily {
  std::string name;
  std::vector<double> lowpass;  // g with sum g = sqrt(2)
  double alpha;                 // declared Fourier decay exponent of the wavelet
};

/// "haar", "db2" (4 taps) or "db3" (6 taps).
const FilterFamily& filter_family(std::string_view name);

/// Wavelet filters {h_j} at scales j = 1..J with gamma_j = 2^j.
class FilterBank {
 public:
  std::string family = "custom";
  std::vector<FilterLevel> levels;  // levels[j-1] is scale j
  int M = 0;                        // vanishing moments
  double alpha = 1.0;
  int K = 0;                        // integration order handled by the stationary route
  std::optional<std::vector<double>> lowpass;  // set for MRA banks

  int J() const { return static_cast<int>(levels.size()); }
  const FilterLevel& level(int j) const;
  static double gamma(int j) { return std::ldexp(1.0, j); }
  /// Limit scale ratio gamma_{j+m}/gamma_j; exactly 2^m for the pow2 rule.
  static double gamma_bar(int m) { return std::ldexp(1.0, m); }

  /// Copy with integration order K; throws PreconditionError when K > M.
  FilterBank with_K(int k) const;
  /// h_j^{(K)} for the bank's K.
  FilterLevel factored(int j) const;
};

/// Non-decimated MRA cascade
///   hhat_j(l) = hhat(2^{j-1} l) prod_{i=0}^{j-2} ghat(2^i l),
/// with h(l) = (-1)^l g(L-1-l). The products are formed on a 2^18-point
/// frequency grid and the taps recovered by inverse FFT.
FilterBank build_mra_bank(std::span<const double> lowpass, int J, double alpha = 1.0,
                          std::string family = "custom");

/// build_mra_bank for a shipped family, with its declared alpha.
FilterBank build_family_bank(std::string_view family, int J);

/// hhat(l) = sum_t h(t) e^{-i l t}.
cplx dft_filter(const FilterLevel& level, double lambda);

/// Largest M with |sum h(l) l^m| < rel_tol * sum |h(l) l^m| for m < M.
/// Throws SizeError for all-zero taps.
int vanishing_moments(const FilterLevel& level, double rel_tol = 1e-6);
int vanishing_moments(std::span<const double> taps, double rel_tol = 1e-6);

/// h^{(K)} with hhat = (1 - e^{-il})^K hhat^{(K)}, by K running sums.
/// Throws PreconditionError when the taps have fewer than K vanishing moments.
FilterLevel factor_K(const FilterLevel& level, int K);

struct SmoothnessReport {
  double c_hat = 0.0;               // max over all levels
  std::vector<double> per_level;    // sup over level j alone
  std::vector<double> running;      // max over levels 1..j
  bool stable = true;               // last step grew by less than 10%
  double growth_exponent = 0.0;     // fitted b in per_level ~ gamma_j^b
};

/// C_hat = max_{j, l} |hhat_j(l)| (1 + g_j|l|)^{M+alpha} / (g_j^{1/2} |g_j l|^M).
SmoothnessReport check_uniform_smoothness(const FilterBank& bank, std::span<const double> grid);
std::vector<double> default_smoothness_grid();

struct LimitTransferValue {
  cplx rescaled;                // gamma_J^{-1/2} hhat_J(l / gamma_J)
  std::optional<cplx> product;  // closed-form cascade product (MRA banks)
  double discrepancy = 0.0;
  bool warning = false;         // discrepancy above 1e-2
};

LimitTransferValue limit_transfer(const FilterBank& bank, double lambda);

/// Evaluator of the limit transfer function hhat_inf on the real line, with
/// the decay constants needed by singular quadrature.
class LimitTransfer {
 public:
  /// product_factors = 0 evaluates the untruncated cascade product.
  explicit LimitTransfer(const FilterBank& bank, int product_factors = 0);

  cplx operator()(double lambda) const;
  int M() const { return M_; }
  double alpha() const { return alpha_; }
  /// C in |hhat_inf(l)| <= C |l|^M / (1 + |l|)^{alpha + M}, measured.
  double bound() const { return bound_; }
  /// Width of the time-domain support of h_inf (oscillation scale).
  double support() const { return support_; }

 private:
  std::vector<double> lowpass_, highpass_;
  FilterLevel top_;  // factored by (1 - e^{-il})^M
  FilterLevel high_factored_;
  int top_j_ = 0;
  int factors_ = 0;
  double mu1_ = 0.0, mu_var_ = 0.0;
  bool mra_ = false;
  int M_ = 0;
  double alpha_ = 1.0;
  double bound_ = 0.0;
  double support_ = 1.0;
};

/// Text format: `K M alpha J`, `gamma_rule=pow2`, then `j offset tap tap ...` per level.
void write_filter_file(std::ostream& os, const FilterBank& bank);
FilterBank read_filter_file(std::istream& is);

/// CSV `lambda,j,abs_hhat` over the grid for every level.
void write_transfer_csv(std::ostream& os, const FilterBank& bank, std::span<const double> grid);

}  // namespace lmw
