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
#include <limits>

namespace lmw::quad {

using Integrand = std::function<double(double)>;

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Gauss-Kronrod 7/15 on [a, b]; error is |K15 - G7|.
Estimate gk15(const Integrand& f, double a, double b);

/// Composite GK15 over `panels` equal sub-intervals of [a, b].
Estimate gk15(const Integrand& f, double a, double b, int panels);

/// Options for the dyadic-shell integrators below.
struct ShellOptions {
  double rel_tol = 1e-10;
  int max_shells = 400;  // per side
  int min_shells = 6;    // per side, before any stopping rule applies
  /// Shells wider than this are split into equal panels (controls oscillation).
  double max_panel_width = std::numeric_limits<double>::infinity();
  /// Optional rigorous bound on int_S^inf |F|. When set it replaces the
  /// geometric extrapolation on the upper side.
  std::function<double(double)> upper_tail_bound;
  /// Relative tolerance applied to upper_tail_bound (0: use rel_tol).
  double tail_rel_tol = 0.0;
  /// Shell boundaries are pivot * 2^k.
  double pivot = 1.0;
};

struct ShellResult {
  double value = 0.0;      // signed integral including tail corrections
  double abs_value = 0.0;  // integral of |F| over the computed shells
  double error = 0.0;      // quadrature + truncation estimate
  bool converged = true;   // false if a side ran out of shells without decaying
  double lower_slope = 0;  // fitted d log2(shell mass) / dk approaching 0 (>0: decaying)
  double upper_slope = 0;  // same approaching infinity (<0: decaying)
  int shells = 0;
};

/// int_0^L F(u) du where F may carry an integrable power singularity at 0.
/// Shells [L 2^{-k-1}, L 2^{-k}] are integrated in log coordinates; once the
/// shell masses decay geometrically the remainder is summed in closed form.
ShellResult integrate_endpoint(const Integrand& f, double length, const ShellOptions& opt = {});

/// int_0^inf F(u) du for F with power-law behaviour at 0 and at infinity.
ShellResult integrate_half_line(const Integrand& f, const ShellOptions& opt = {});

}  // namespace lmw::quad
