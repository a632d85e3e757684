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

#include "lmw/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <ostream>

#include "lmw/errors.h"
#include "lmw/fft.h"
#include "lmw/rng.h"

namespace lmw {

CirculantSynthesizer::CirculantSynthesizer(const MemoryModel& model, std::size_t n, SynthOptions opt) : n_(n) {
  if (n < 2) throw SizeError("synthesis: series length must be >= 2");
  std::size_t m = fft::next_pow2(2 * n);
  for (int attempt = 0; attempt <= opt.max_doublings; ++attempt, m *= 2) {
    const std::size_t half = m / 2;
    const std::vector<double> r =
        model.is_farima() ? farima_autocovariance(model.d(), half) : autocovariance(model, half).values;
    std::vector<double> c(m);
    for (std::size_t k = 0; k < m; ++k) c[k] = r[std::min(k, m - k)];
    const auto spec = fft::forward_real(c);
    std::vector<double> eig(m);
    for (std::size_t k = 0; k < m; ++k) eig[k] = spec[std::min(k, m - k)].real();
    const double top = *std::max_element(eig.begin(), eig.end());
    const double bottom = *std::min_element(eig.begin(), eig.end());
    if (bottom < -opt.negative_tol * top) {
      if (attempt == opt.max_doublings)
        throw NumericError("circulant embedding is not non-negative definite after maximal enlargement");
      continue;
    }
    auto root = std::make_shared<std::vector<double>>(m);
    for (std::size_t k = 0; k < m; ++k) {
      if (eig[k] < 0.0) {
        clipped_ -= eig[k];
        eig[k] = 0.0;
      }
      (*root)[k] = std::sqrt(eig[k] / static_cast<double>(m));
    }
    if (clipped_ > 0.0)
      std::clog << "lmw: warning: clipped negative embedding eigenvalues (mass " << clipped_ << ")\n";
    sqrt_eig_ = std::move(root);
    cov_.assign(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
    return;
  }
}

std::vector<double> CirculantSynthesizer::sample(std::uint64_t seed, std::uint64_t replicate) const {
  const std::size_t m = sqrt_eig_->size();
  const CounterRng rng(seed, replicate);
  std::vector<double> z(2 * m);
  rng.normals(0, z);
  std::vector<fft::cplx> w(m);
  for (std::size_t k = 0; k < m; ++k) w[k] = (*sqrt_eig_)[k] * fft::cplx(z[2 * k], z[2 * k + 1]);
  const auto y = fft::forward(w);
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = y[i].real();
  return out;
}

std::vector<double> synth_gaussian(const MemoryModel& model, std::size_t n, std::uint64_t seed,
                                   std::uint64_t replicate) {
  return CirculantSynthesizer(model, n).sample(seed, replicate);
}

std::vector<double> integrate_K(std::span<const double> series, int K) {
  if (K < 0) throw DomainError("integrate_K: K must be >= 0");
  std::vector<double> out(series.begin(), series.end());
  for (int k = 0; k < K; ++k) {
    double acc = 0.0;
    for (double& v : out) {
      acc += v;
      v = acc;
    }
  }
  return out;
}

std::vector<double> difference_K(std::span<const double> series, int K) {
  if (K < 0) throw DomainError("difference_K: K must be >= 0");
  std::vector<double> out(series.begin(), series.end());
  for (int k = 0; k < K; ++k) {
    double prev = 0.0;
    for (double& v : out) {
      const double cur = v;
      v = cur - prev;
      prev = cur;
    }
  }
  return out;
}

SamplePath sample_path(const PathConfig& cfg) {
  SamplePath p;
  p.x = synth_gaussian(cfg.model, cfg.n, cfg.seed, cfg.replicate);
  p.y = integrate_K(subordinate(cfg.filter, p.x), cfg.K);
  return p;
}

void write_series_csv(std::ostream& os, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw SizeError("write_series_csv: x and y lengths differ");
  os << "index,x,y\n";
  char buf[96];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, x[i], y[i]);
    os << buf;
  }
}

}  // namespace lmw
