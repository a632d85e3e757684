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
#include <span>
#include <string>
#include <vector>

#include "lmw/filters.h"

namespace lmw {

/// Interior wavelet coefficients W_{j,k}, k = k_first .. k_first + count - 1.
struct CoeffLevel {
  int j = 0;
  double gamma = 0.0;
  std::int64_t k_first = 0;
  std::vector<double> values;

  std::size_t count() const { return values.size(); }
  double at_k(std::int64_t k) const { return values.at(static_cast<std::size_t>(k - k_first)); }
};

struct CoeffMatrix {
  std::vector<CoeffLevel> levels;
  std::vector<std::string> warnings;

  const CoeffLevel* find(int j) const;
};

struct JRange {
  int first = 1;
  int last = 0;  // 0: up to the bank's J
};

enum class ConvolutionPath { Auto, Direct, Fft };

struct TransformOptions {
  ConvolutionPath path = ConvolutionPath::Auto;
  /// Auto switches to FFT convolution when support * count reaches this.
  std::size_t fft_threshold = std::size_t{1} << 24;
};

/// Interior k range for a filter level on a series of length n:
/// ceil((o + L - 1)/g) .. floor((n - 1 + o)/g). Empty when first > last.
std::pair<std::int64_t, std::int64_t> interior_range(const FilterLevel& level, double gamma,
                                                     std::size_t n);

/// W_{j,k} = sum_l h_j(gamma_j k - l) y_l for a single level.
CoeffLevel filter_level(const FilterLevel& level, int j, std::span<const double> y,
                        const TransformOptions& opt = {});

/// Coefficients of the observed (possibly integrated) path with the bank's h_j.
CoeffMatrix coeffs_from_path(const FilterBank& bank, std::span<const double> y, JRange range = {},
                             const TransformOptions& opt = {});

/// Same coefficients from the stationary series Delta^K y using h_j^{(K)}.
CoeffMatrix coeffs_from_stationary(const FilterBank& bank, std::span<const double> g_series,
                                   JRange range = {}, const TransformOptions& opt = {});

/// CSV `j,k,w`.
void write_coeffs_csv(std::ostream& os, const CoeffMatrix& c);

struct LevelSummary {
  int j;
  double gamma;
  std::size_t count;
  double mean;
  double var;
};

std::vector<LevelSummary> summarize(const CoeffMatrix& c);

/// JSON array of {j, gamma, count, mean, var}.
std::string summary_json(const CoeffMatrix& c);

}  // namespace lmw
