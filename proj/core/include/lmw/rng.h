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
#include <span>

namespace lmw {

/// Counter-based random stream keyed by (seed, replicate).
///
/// The i-th output is a pure function of (seed, replicate, i): no hidden
/// state is shared between streams, so replicates can be generated in any
/// order or on any thread and still reproduce bit-for-bit.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t replicate);

  /// 64 random bits for counter value i.
  std::uint64_t bits(std::uint64_t i) const;

  /// Uniform on the open interval (0, 1).
  double uniform(std::uint64_t i) const;

  /// Fill `out` with standard normals drawn from counters [first, first + out.size()).
  /// Uses the Box-Muller pair (2i, 2i+1) for outputs 2i and 2i+1.
  void normals(std::uint64_t first, std::span<double> out) const;

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

}  // namespace lmw
