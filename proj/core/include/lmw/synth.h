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
#include <memory>
#include <span>
#include <vector>

#include "lmw/hermite.h"
#include "lmw/spectra.h"

namespace lmw {

struct SynthOptions {
  double negative_tol = 1e-8;  // relative to the largest embedding eigenvalue
  int max_doublings = 5;
};

/// Exact-in-law stationary Gaussian synthesis by circulant embedding.
///
/// The embedding (eigenvalues of the circulant extension of r(0..N/2)) is
/// computed once; each call to sample() draws an independent path keyed by
/// (seed, replicate).
class CirculantSynthesizer {
 public:
  CirculantSynthesizer(const MemoryModel& model, std::size_t n, SynthOptions opt = {});

  std::vector<double> sample(std::uint64_t seed, std::uint64_t replicate) const;

  std::size_t length() const { return n_; }
  std::size_t embedding_size() const { return sqrt_eig_->size(); }
  /// Sum of negative eigenvalue mass that was clipped to zero (0 when none).
  double clipped_mass() const { return clipped_; }
  /// Autocovariance r(0..n-1) that the samples reproduce.
  std::span<const double> covariance() const { return cov_; }

 private:
  std::size_t n_;
  std::shared_ptr<const std::vector<double>> sqrt_eig_;
  std::vector<double> cov_;
  double clipped_ = 0.0;
};

/// One stationary Gaussian path of length n with the model's autocovariance.
std::vector<double> synth_gaussian(const MemoryModel& model, std::size_t n, std::uint64_t seed,
                                   std::uint64_t replicate);

/// K-fold cumulative sum with zero initial conditions.
std::vector<double> integrate_K(std::span<const double> series, int K);

/// K-fold backward difference (Y_l - Y_{l-1}) with Y_{-1} = 0; inverse of integrate_K.
std::vector<double> difference_K(std::span<const double> series, int K);

struct PathConfig {
  MemoryModel model;
  NonlinearFilter filter;
  int K = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
};

struct SamplePath {
  std::vector<double> x;  // Gaussian input
  std::vector<double> y;  // Delta^K y = G(x)
};

SamplePath sample_path(const PathConfig& cfg);

/// CSV `index,x,y`.
void write_series_csv(std::ostream& os, std::span<const double> x, std::span<const double> y);

}  // namespace lmw
