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

#include "lmw/rng.h"

#include <cmath>
#include <numbers>

namespace lmw {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t replicate)
    : key_(mix64(mix64(seed) ^ (replicate * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL))) {}

std::uint64_t CounterRng::bits(std::uint64_t i) const {
  // Two rounds decorrelate neighbouring counters and neighbouring keys.
  return mix64(mix64(key_ + i * 0x9e3779b97f4a7c15ULL) ^ key_);
}

double CounterRng::uniform(std::uint64_t i) const {
  // 53 high bits, shifted by half an ulp so 0 is never produced.
  return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
}

void CounterRng::normals(std::uint64_t first, std::span<double> out) const {
  std::uint64_t idx = first;
  std::size_t k = 0;
  if (idx % 2 == 1 && k < out.size()) {
    const double u1 = uniform(idx - 1), u2 = uniform(idx);
    out[k++] = std::sqrt(-2.0 * std::log(u1)) * std::sin(2.0 * std::numbers::pi * u2);
    ++idx;
  }
  while (k < out.size()) {
    const double u1 = uniform(idx), u2 = uniform(idx + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    out[k++] = r * std::cos(2.0 * std::numbers::pi * u2);
    if (k < out.size()) out[k++] = r * std::sin(2.0 * std::numbers::pi * u2);
    idx += 2;
  }
}

}  // namespace lmw
