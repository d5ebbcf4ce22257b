// Copyright 2026 The WDP Accountant Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WDP_COUNTER_RNG_H_
#define WDP_COUNTER_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace wdp {

// Counter-based generator built on the SplitMix64 finalizer. Each
// (seed, stream) pair names an independent sequence, so per-step streams
// can be drawn in any order or in parallel and still agree with a serial
// run. Output is bit-identical across platforms for the integer and
// uniform draws.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream)
      : key_(Mix(seed ^ Mix(stream + 0x632be59bd9b4e019ULL))) {}

  uint64_t NextU64() {
    ++counter_;
    return Mix(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform on the open interval (0, 1).
  double NextUniform() {
    return (static_cast<double>(NextU64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection keeps it unbiased.
  uint64_t NextBelow(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = NextU64();
    } while (x >= limit);
    return x % n;
  }

  // Box-Muller, one normal per call (the sine branch is discarded so the
  // counter position does not depend on call history).
  double NextNormal() {
    const double u1 = NextUniform();
    const double u2 = NextUniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Weibull(shape, scale) by inversion.
  double NextWeibull(double shape, double scale) {
    return scale * std::pow(-std::log(NextUniform()), 1.0 / shape);
  }

 private:
  static uint64_t Mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace wdp

#endif  // WDP_COUNTER_RNG_H_
