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

#include "lmw/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace lmw::fft {
namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct Plan {
  fftw_plan p = nullptr;
  explicit Plan(fftw_plan plan) : p(plan) {
    if (!p) throw std::runtime_error("fftw: plan creation failed");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(plan_mutex());
    fftw_destroy_plan(p);
  }
  void run() const { fftw_execute(p); }
};

template <class T>
struct Buffer {
  T* data;
  explicit Buffer(std::size_t n) : data(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)))) {
    if (!data) throw std::bad_alloc();
  }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  ~Buffer() { fftw_free(data); }
};

std::vector<cplx> complex_dft(std::span<const cplx> in, int sign) {
  const std::size_t n = in.size();
  if (n == 0) return {};
  Buffer<fftw_complex> buf(n);
  fftw_plan raw;
  {
    std::lock_guard lock(plan_mutex());
    raw = fftw_plan_dft_1d(static_cast<int>(n), buf.data, buf.data, sign, FFTW_ESTIMATE);
  }
  Plan plan(raw);
  for (std::size_t i = 0; i < n; ++i) {
    buf.data[i][0] = in[i].real();
    buf.data[i][1] = in[i].imag();
  }
  plan.run();
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {buf.data[i][0], buf.data[i][1]};
  return out;
}

}  // namespace

std::vector<cplx> forward(std::span<const cplx> in) { return complex_dft(in, FFTW_FORWARD); }

std::vector<cplx> inverse(std::span<const cplx> in) { return complex_dft(in, FFTW_BACKWARD); }

std::vector<cplx> forward_real(std::span<const double> in) {
  const std::size_t n = in.size();
  if (n == 0) return {};
  Buffer<double> rin(n);
  Buffer<fftw_complex> cout(n / 2 + 1);
  fftw_plan raw;
  {
    std::lock_guard lock(plan_mutex());
    raw = fftw_plan_dft_r2c_1d(static_cast<int>(n), rin.data, cout.data, FFTW_ESTIMATE);
  }
  Plan plan(raw);
  std::copy(in.begin(), in.end(), rin.data);
  plan.run();
  std::vector<cplx> out(n / 2 + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {cout.data[i][0], cout.data[i][1]};
  return out;
}

std::vector<double> inverse_real(std::span<const cplx> half, std::size_t n) {
  if (n == 0) return {};
  if (half.size() != n / 2 + 1) throw std::invalid_argument("inverse_real: expected n/2+1 bins");
  Buffer<fftw_complex> cin(n / 2 + 1);
  Buffer<double> rout(n);
  fftw_plan raw;
  {
    std::lock_guard lock(plan_mutex());
    raw = fftw_plan_dft_c2r_1d(static_cast<int>(n), cin.data, rout.data, FFTW_ESTIMATE);
  }
  Plan plan(raw);
  for (std::size_t i = 0; i < half.size(); ++i) {
    cin.data[i][0] = half[i].real();
    cin.data[i][1] = half[i].imag();
  }
  plan.run();
  return std::vector<double>(rout.data, rout.data + n);
}

std::vector<double> dct1(std::span<const double> in) {
  const std::size_t n = in.size();
  if (n < 2) throw std::invalid_argument("dct1: need at least two points");
  Buffer<double> buf(n);
  fftw_plan raw;
  {
    std::lock_guard lock(plan_mutex());
    raw = fftw_plan_r2r_1d(static_cast<int>(n), buf.data, buf.data, FFTW_REDFT00, FFTW_ESTIMATE);
  }
  Plan plan(raw);
  std::copy(in.begin(), in.end(), buf.data);
  plan.run();
  return std::vector<double>(buf.data, buf.data + n);
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_len);
  std::vector<double> pa(n, 0.0), pb(n, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  auto fa = forward_real(pa);
  const auto fb = forward_real(pb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  auto out = inverse_real(fa, n);
  out.resize(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : out) v *= scale;
  return out;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace lmw::fft
