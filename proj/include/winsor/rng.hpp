// Copyright 2026 The Winsor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WINSOR_RNG_HPP_
#define WINSOR_RNG_HPP_

#include <cstdint>
#include <limits>

namespace winsor {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator: the i-th output is mix64(key + i * golden), so a
// stream is fully determined by its key and any number of independent streams
// can be derived without shared state. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  // Child stream keyed by (this key, index).
  CounterRng substream(std::uint64_t index) const {
    return CounterRng(mix64(key_ ^ mix64(index * kGolden + 0x2545f4914f6cdd1dULL)));
  }

  // Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform01() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

  std::uint64_t key() const { return key_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Stream for replication `rep` of a study seeded with `master_seed`.
inline CounterRng replication_stream(std::uint64_t master_seed,
                                     std::uint64_t rep) {
  return CounterRng(mix64(master_seed) ^ mix64(rep + 0x632be59bd9b4e019ULL));
}

}  // namespace winsor

#endif  // WINSOR_RNG_HPP_
