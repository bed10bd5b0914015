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

#ifndef SYMFREQ_GENERATORS_HPP
#define SYMFREQ_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "symfreq/alphabet.hpp"
#include "symfreq/error.hpp"
#include "symfreq/measure.hpp"
#include "symfreq/rational.hpp"
#include "symfreq/splitmix64.hpp"
#include "symfreq/stream.hpp"

namespace symfreq {

/// Shared plumbing for unbounded, symbol-addressed generators. `Derived`
/// supplies seek(offset), positioning at an absolute symbol offset, and
/// fill(out), producing exactly out.size() further symbols.
template <class Derived>
class GeneratedStream : public SymbolStream {
 public:
  std::size_t read(std::span<SymbolCode> out) final {
    std::size_t want = out.size();
    if (end_) want = static_cast<std::size_t>(std::min<std::uint64_t>(want, *end_ - pos_));
    if (want == 0) return 0;
    self().fill(out.first(want));
    pos_ += want;
    return want;
  }

  std::optional<std::uint64_t> known_length() const final {
    if (!end_) return std::nullopt;
    return *end_ - origin_;
  }

  std::optional<std::uint64_t> extent() const final { return known_length(); }

  std::unique_ptr<SymbolStream> slice(std::uint64_t begin,
                                      std::optional<std::uint64_t> end) const final {
    auto copy = std::make_unique<Derived>(static_cast<const Derived&>(*this));
    std::uint64_t b = origin_ + begin;
    std::optional<std::uint64_t> e;
    if (end) e = origin_ + std::max(*end, begin);
    if (end_) {
      b = std::min(b, *end_);
      e = std::min(e.value_or(*end_), *end_);
    }
    copy->origin_ = b;
    copy->pos_ = b;
    copy->end_ = e;
    copy->seek(b);
    return copy;
  }

 protected:
  GeneratedStream() = default;

 private:
  Derived& self() { return static_cast<Derived&>(*this); }

  std::uint64_t origin_ = 0;
  std::uint64_t pos_ = 0;
  std::optional<std::uint64_t> end_;
};

/// Concatenation of the base-m representations of 1, 2, 3, ... without
/// leading zeros.
class ChampernowneStream final : public GeneratedStream<ChampernowneStream> {
 public:
  explicit ChampernowneStream(const Alphabet& alphabet) : alphabet_(alphabet) { seek(0); }

  const Alphabet& alphabet() const noexcept override { return alphabet_; }

  void seek(std::uint64_t offset) {
    // Numbers with d digits occupy d * (m-1) * m^(d-1) symbols.
    const uint128 m = alphabet_.size();
    uint128 first = 1;  // smallest d-digit number, m^(d-1)
    uint128 rest = offset;
    unsigned d = 1;
    for (;;) {
      const uint128 span = uint128(d) * (m - 1) * first;
      if (rest < span) break;
      rest -= span;
      first *= m;
      ++d;
    }
    uint128 value = first + rest / d;
    digit_ = static_cast<std::size_t>(rest % d);
    digits_.assign(d, 0);
    for (unsigned i = d; i-- > 0;) {
      digits_[i] = static_cast<SymbolCode>(value % m);
      value /= m;
    }
  }

  void fill(std::span<SymbolCode> out) {
    std::size_t i = 0;
    while (i < out.size()) {
      if (digit_ == digits_.size()) increment();
      const std::size_t take = std::min(out.size() - i, digits_.size() - digit_);
      std::copy_n(digits_.begin() + static_cast<std::ptrdiff_t>(digit_), take, out.begin() + i);
      digit_ += take;
      i += take;
    }
  }

 private:
  void increment() {
    const auto top = static_cast<SymbolCode>(alphabet_.size() - 1);
    std::size_t i = digits_.size();
    while (i > 0 && digits_[i - 1] == top) digits_[--i] = 0;
    if (i == 0) {
      digits_.insert(digits_.begin(), 1);
    } else {
      ++digits_[i - 1];
    }
    digit_ = 0;
  }

  Alphabet alphabet_;
  std::vector<SymbolCode> digits_;  // current number, most significant first
  std::size_t digit_ = 0;           // next digit of the current number to emit
};

/// A nonempty pattern repeated forever.
class PeriodicStream final : public GeneratedStream<PeriodicStream> {
 public:
  PeriodicStream(const Alphabet& alphabet, std::vector<SymbolCode> pattern)
      : alphabet_(alphabet), pattern_(std::move(pattern)) {
    if (pattern_.empty()) throw Error(Errc::invalid_pattern, "periodic pattern is empty");
    const std::size_t bad = detail::first_invalid(pattern_, alphabet.size());
    if (bad != pattern_.size()) {
      throw Error(Errc::invalid_pattern, "pattern symbol " + std::to_string(pattern_[bad]) +
                                             " at index " + std::to_string(bad) +
                                             " is outside the base-" +
                                             std::to_string(alphabet.size()) + " alphabet");
    }
  }

  const Alphabet& alphabet() const noexcept override { return alphabet_; }
  std::span<const SymbolCode> pattern() const noexcept { return pattern_; }

  void seek(std::uint64_t offset) { phase_ = static_cast<std::size_t>(offset % pattern_.size()); }

  void fill(std::span<SymbolCode> out) {
    std::size_t i = 0;
    while (i < out.size()) {
      const std::size_t take = std::min(out.size() - i, pattern_.size() - phase_);
      std::copy_n(pattern_.begin() + static_cast<std::ptrdiff_t>(phase_), take, out.begin() + i);
      i += take;
      phase_ = (phase_ + take) % pattern_.size();
    }
  }

 private:
  Alphabet alphabet_;
  std::vector<SymbolCode> pattern_;
  std::size_t phase_ = 0;
};

/// I.i.d. symbols drawn from a target measure.
///
/// Symbol k of the stream is decided by the (k+1)-th SplitMix64 output u
/// for the seed: it is the smallest i with u < ceil(C_i * 2^64 / D), where
/// C_i is the cumulative numerator through symbol i and D the target's
/// denominator. Each symbol's probability is therefore within 2^-64 of its
/// target, and exact when D is a power of two.
class BernoulliStream final : public GeneratedStream<BernoulliStream> {
 public:
  BernoulliStream(const Measure& target, std::uint64_t seed)
      : alphabet_(target.alphabet()), seed_(seed), rng_(seed) {
    const uint128 den = target.denominator();
    thresholds_.reserve(target.size());
    uint128 cumulative = 0;
    for (auto num : target.numerators()) {
      cumulative += num;
      thresholds_.push_back(((cumulative << 64) + den - 1) / den);
    }
  }

  const Alphabet& alphabet() const noexcept override { return alphabet_; }

  void seek(std::uint64_t offset) { rng_ = SplitMix64::at(seed_, offset); }

  void fill(std::span<SymbolCode> out) {
    for (auto& s : out) {
      const uint128 u = rng_.next();
      s = static_cast<SymbolCode>(
          std::upper_bound(thresholds_.begin(), thresholds_.end(), u) - thresholds_.begin());
    }
  }

 private:
  Alphabet alphabet_;
  std::uint64_t seed_;
  SplitMix64 rng_;
  std::vector<uint128> thresholds_;
};

inline ChampernowneStream gen_champernowne(const Alphabet& alphabet) {
  return ChampernowneStream(alphabet);
}

inline PeriodicStream gen_periodic(const Alphabet& alphabet, std::vector<SymbolCode> pattern) {
  return PeriodicStream(alphabet, std::move(pattern));
}

inline BernoulliStream gen_bernoulli(const Measure& target, std::uint64_t seed) {
  return BernoulliStream(target, seed);
}

inline BernoulliStream gen_bernoulli(const Alphabet& alphabet, std::span<const Rational> target,
                                     std::uint64_t seed) {
  return BernoulliStream(Measure::from_components(alphabet, target), seed);
}

}  // namespace symfreq

#endif  // SYMFREQ_GENERATORS_HPP
