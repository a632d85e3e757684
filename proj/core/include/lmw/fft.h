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
#include <span>
#include <vector>

namespace lmw::fft {

using cplx = std::complex<double>;

// Thin wrappers over FFTW. Plan creation is serialized internally, so these
// are safe to call from concurrent replicate workers.

/// In-place-style forward DFT: out[k] = sum_n in[n] exp(-2 pi i k n / N).
std::vector<cplx> forward(std::span<const cplx> in);

/// Unnormalized inverse DFT: out[n] = sum_k in[k] exp(+2 pi i k n / N).
std::vector<cplx> inverse(std::span<const cplx> in);

/// Real-to-complex forward transform; returns N/2+1 bins.
std::vector<cplx> forward_real(std::span<const double> in);

/// Complex-to-real unnormalized inverse of forward_real for length n.
std::vector<double> inverse_real(std::span<const cplx> half, std::size_t n);

/// Type-I DCT (FFTW REDFT00), unnormalized:
/// y_k = x_0 + (-1)^k x_{n-1} + 2 sum_{j=1}^{n-2} x_j cos(pi j k / (n-1)).
std::vector<double> dct1(std::span<const double> in);

/// Linear (acyclic) convolution of two real sequences via zero-padded FFT.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace lmw::fft
