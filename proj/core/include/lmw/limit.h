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

#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include "lmw/filters.h"

namespace lmw {

/// Parameters of the limit field Y^{(q,K)}_{m,k}.
struct LimitSpec {
  int q = 1;
  double d = 0.0;
  int K = 0;
  std::shared_ptr<const LimitTransfer> hinf;
  std::function<double(int)> gamma_bar = [](int m) { return std::ldexp(1.0, m); };

  /// Throws DomainError / PreconditionError when (q, d, K, M) is inadmissible.
  void validate() const;
  /// Exponent q - 1 - 2qd - 2K of |s| in the reduced covariance integral.
  double exponent() const { return q - 1.0 - 2.0 * q * d - 2.0 * K; }
};

struct LimitOptions {
  double rel_tol = 1e-8;   // shell quadrature tolerance
  double tail_rel = 1e-6;  // tail remainder relative to the accumulated value
  double panel_scale = 1.0;  // < 1 refines the oscillation panels
};

struct LimitValue {
  double value = 0.0;
  double error = 0.0;
};

/// prod_{i=2}^q int_R |t|^{q-i-2d(q-i+1)} |1-t|^{-2d} dt.
/// Throws DomainError when q >= 1/(1-2d) or d outside (0, 1/2).
LimitValue gamma_factor(int q, double d, double rel_tol = 1e-10);

struct Membership {
  bool finite = false;
  double value = 0.0;
  double error = 0.0;
};

/// int_R |theta_hat(xi)|^2 |xi|^{q-1-2dq-2K} dxi with divergence detection.
Membership membership_S(const std::function<std::complex<double>(double)>& theta_hat, int q,
                        double d, int K);

/// Cov(Y_{m,k}, Y_{m',k'}).
LimitValue limit_cov(const LimitSpec& spec, int m, long k, int mp, long kp,
                     const LimitOptions& opt = {});

/// Covariance block over an index list of (m, k).
struct LimitCov {
  std::vector<std::pair<int, long>> index;
  std::vector<double> cov;  // row-major, symmetric
  std::vector<double> err;
  double min_eigenvalue = 0.0;
  double trace = 0.0;

  std::size_t size() const { return index.size(); }
  double at(std::size_t a, std::size_t b) const { return cov[a * size() + b]; }
  double error_at(std::size_t a, std::size_t b) const { return err[a * size() + b]; }
  /// Eigenvalues >= -1e-8 trace.
  bool psd() const { return min_eigenvalue >= -1e-8 * trace; }
};

LimitCov limit_cov_block(const LimitSpec& spec, const std::vector<std::pair<int, long>>& index,
                         const LimitOptions& opt = {});

/// CSV `m,k,mp,kp,cov,err`.
void write_limit_cov_csv(std::ostream& os, const LimitCov& block);

/// H = K + qd - q/2.
double ss_exponent(int q, double d, int K);

/// (c_{q0} f*(0)^{q0/2}, (c_{q0}/q0!) f*(0)^{q0/2}).
std::pair<double, double> theorem_normalization(double c_q0, double fstar0, int q0);

}  // namespace lmw
