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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lmw/filters.h"
#include "lmw/hermite.h"
#include "lmw/spectra.h"
#include "lmw/synth.h"
#include "lmw/transform.h"

namespace lmw {

struct McOptions {
  int threads = 0;              // 0: hardware concurrency
  int bootstrap = 1000;         // resamples of replicates
  std::size_t min_coeffs = 30;  // scales with fewer interior coefficients are dropped
  /// Pinned half-width of the tolerance interval around the fitted slope.
  std::optional<double> tolerance_band;
  /// Relative band around the normalization estimate used to select a candidate.
  double normalization_band = 0.2;
  bool keep_top_coeffs = false;  // retain max-scale coefficients for gaussianity_check
};

struct ScaleStat {
  int j = 0;
  double gamma = 0.0;
  std::size_t count = 0;  // interior coefficients per replicate
  double var = 0.0;       // replicate average of the per-path mean square
  double se = 0.0;        // standard error across replicates
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct NormalizationReport {
  double estimate = 0.0;     // sqrt(Var(W_j) gamma_j^{-2(d(q0)+K)} / Var(Y_{0,0})) at max j
  Interval ci;               // bootstrap over replicates
  double candidate_a = 0.0;  // c_q0 f*(0)^{q0/2}
  double candidate_b = 0.0;  // (c_q0/q0!) f*(0)^{q0/2}
  double limit_var = 0.0;    // Var(Y_{0,0})
  std::string selected;      // "a", "b", "coincide", "none" or "both"
};

struct ScalingReport {
  std::string regime;  // "long-range" or "short-range"
  double d = 0.0;
  int q0 = 0;
  int qc = 0;
  int K = 0;
  std::string filter;
  std::string bank;
  std::size_t n = 0;
  int replicates = 0;
  std::uint64_t seed = 0;

  std::vector<ScaleStat> scales;
  double slope = 0.0;
  double slope_se = 0.0;  // weighted least squares
  Interval ci;            // bootstrap percentile interval
  double target = 0.0;
  std::optional<double> band;
  bool ci_contains_target = false;
  bool band_contains_target = false;
  std::optional<NormalizationReport> normalization;
  std::vector<std::string> warnings;

  /// [replicate][scale] per-path mean squares.
  std::vector<std::vector<double>> replicate_var;
  /// Max-scale coefficients per replicate (when requested).
  std::vector<std::vector<double>> top_coeffs;

  std::string to_json() const;
  /// CSV `j,gamma,count,var,se`.
  void write_csv(std::ostream& os) const;
};

/// Weighted least squares of log2 var against j with weights 1/Var(log2 var).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double se = 0.0;
};
SlopeFit fit_log_slope(const std::vector<ScaleStat>& scales);

/// Long-range regime (q0 <= q_c): target 2(d(q0)+K). Throws PreconditionError otherwise.
ScalingReport scaling_experiment(const PathConfig& cfg, const FilterBank& bank, JRange range,
                                 int replicates, const McOptions& opt = {});

/// Either regime, detected from q0 and q_c: target 2K when q0 > q_c.
ScalingReport short_range_experiment(const PathConfig& cfg, const FilterBank& bank, JRange range,
                                     int replicates, const McOptions& opt = {});

struct GaussianityReport {
  double skewness = 0.0;
  double kurtosis = 0.0;
  double skewness_se = 0.0;
  double kurtosis_se = 0.0;
  int q0 = 0;
  bool consistent = false;  // q0=1: |kurt-3| <= 0.2; q0>=2: excess > 3 se
  std::string to_json() const;
};

/// Pooled moments of coefficients, one array per replicate.
GaussianityReport gaussianity_check(const std::vector<std::vector<double>>& coeffs, int q0);

struct MemoryEstimate {
  double estimate = 0.0;  // slope / 2, estimating d(q0) + K
  Interval ci;
  int scales = 0;
};

/// Log-variance regression over j1..j2 on one or more replicates.
MemoryEstimate estimate_memory(const std::vector<CoeffMatrix>& coeffs, int j1, int j2,
                               std::uint64_t seed = 0, int bootstrap = 1000);

struct CorrelationComparison {
  int j = 0;
  std::vector<long> lags;
  std::vector<double> empirical;
  std::vector<double> theoretical;
  double max_deviation = 0.0;
  std::string to_json() const;
};

/// Corr(W_{j,k}, W_{j,k+lag}) pooled over k and replicates vs the limit field.
CorrelationComparison limit_cov_comparison(const PathConfig& cfg, const FilterBank& bank, int j,
                                           const std::vector<long>& lags, int replicates,
                                           const McOptions& opt = {});

}  // namespace lmw
