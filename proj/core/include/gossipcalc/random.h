// Copyright 2026 The gossipcalc Authors
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

#ifndef GOSSIPCALC_RANDOM_H_
#define GOSSIPCALC_RANDOM_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace gossipcalc {

// SplitMix64 finalizer. Pinned here (rather than relying on std::hash) so
// that derived seeds are identical on every platform.
constexpr std::uint64_t Mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for trial `index` of an experiment run with `master_seed`.
constexpr std::uint64_t DeriveSeed(std::uint64_t master_seed,
                                   std::uint64_t index) noexcept {
  return Mix64(Mix64(master_seed) ^ Mix64(index + 0x632be59bd9b4e019ULL));
}

// Inverse CDF of the exponential distribution: -ln(u) / rate for u in (0, 1].
inline double ExponentialFromUniform(double u, double rate) {
  return -std::log(u) / rate;
}

// Seeded pseudorandom stream. Only the raw 64-bit engine output is used;
// every derived variate is computed here so that results do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(Mix64(seed)) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on (0, 1]; never returns 0, so -log(u) is always finite.
  double UniformOpenClosed() {
    return static_cast<double>((NextU64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0, 1).
  double UniformClosedOpen() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by multiply-high, without rejection. The
  // bias is at most bound / 2^64.
  std::size_t UniformIndex(std::size_t bound) {
    __extension__ using Wide = unsigned __int128;
    const auto product = static_cast<Wide>(NextU64()) * bound;
    return static_cast<std::size_t>(product >> 64);
  }

  // Exponential variate of the given rate by inverse CDF.
  double Exponential(double rate) {
    return ExponentialFromUniform(UniformOpenClosed(), rate);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gossipcalc

#endif  // GOSSIPCALC_RANDOM_H_
