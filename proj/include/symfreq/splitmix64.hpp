/*
 * Copyright 2026 The symfreq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SYMFREQ_SPLITMIX64_HPP
#define SYMFREQ_SPLITMIX64_HPP

#include <cstdint>

namespace symfreq {

/// SplitMix64 (Steele, Lea & Flood 2014; Vigna's reference splitmix64.c).
///
/// state_{k+1} = state_k + 0x9E3779B97F4A7C15 (mod 2^64)
/// z = state_{k+1}
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB
/// output = z ^ (z >> 31)
///
/// Because the state advances by a constant, jumping ahead k outputs is a
/// single multiply-add, which is what lets generated streams be sliced at
/// arbitrary offsets. Reference outputs: seed 0 -> 0xE220A8397B1DCDAF,
/// 0x6E789E6AA1B965F4, 0x06C45D188009454F; seed 1234567 ->
/// 6457827717110365317, 3203168211198807973, 9817491932198370423.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  /// Generator positioned as if `skip` outputs had already been drawn.
  static constexpr SplitMix64 at(std::uint64_t seed, std::uint64_t skip) noexcept {
    return SplitMix64(seed + skip * kGamma);
  }

  constexpr std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace symfreq

#endif  // SYMFREQ_SPLITMIX64_HPP
