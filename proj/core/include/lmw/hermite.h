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

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lmw {

/// Probabilists' Hermite polynomial H_q(x), via H_{q+1} = x H_q - q H_{q-1}.
double hermite_eval(int q, double x);

/// H_0(x), ..., H_{out.size()-1}(x).
void hermite_all(double x, std::span<double> out);

/// Gauss rule for the standard normal weight e^{-x^2/2}/sqrt(2 pi); weights sum to 1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(int n);

/// A named instantaneous transform G applied to the Gaussian input.
struct NonlinearFilter {
  std::string name;
  std::function<double(double)> fn;
};

/// Built-ins: "identity", "square" (x^2-1), "cube" (x^3), "centered-exp"
/// (e^x - e^{1/2}), and "hermite:q" for H_q.
NonlinearFilter make_filter(std::string_view name);

/// Chaos expansion G(X) = sum_{q=1}^{Q} (c_q / q!) H_q(X).
struct HermiteExpansion {
  std::vector<double> coeffs;  // coeffs[q-1] = c_q
  int rank = 0;                // Hermite rank q0
  double l2 = 0.0;             // sum c_q^2 / q!
  double tail_mass = 0.0;      // c_Q^2 / Q!
  double c0 = 0.0;             // E G(X) as seen by the quadrature

  int order() const { return static_cast<int>(coeffs.size()); }
  double coeff(int q) const;
  /// c_{q0} / q0!
  double leading_weight() const;

  /// {"rank": q0, "coeffs": [c_1, ...], "l2": ...}
  std::string to_json() const;
  static HermiteExpansion from_json(std::string_view text);
};

struct HermiteOptions {
  int order = 25;
  int nodes = 200;
  double center_tol = 1e-8;   // |c_0| allowed, relative to sqrt(E G^2)
  double rank_tol = 1e-10;    // c_q/sqrt(q!) below rank_tol * max is snapped to zero
};

/// c_q = E[G(X) H_q(X)] by Gauss-Hermite quadrature. Throws DomainError when
/// G is not centered.
HermiteExpansion hermite_coeffs(const std::function<double(double)>& g, const HermiteOptions& opt = {});

/// Pointwise G(x_n).
std::vector<double> subordinate(const NonlinearFilter& g, std::span<const double> x);

/// Truncated chaos sum sum_q (c_q/q!) H_q(x_n).
std::vector<double> subordinate(const HermiteExpansion& e, std::span<const double> x);

}  // namespace lmw
