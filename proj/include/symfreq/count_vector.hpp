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

#ifndef SYMFREQ_COUNT_VECTOR_HPP
#define SYMFREQ_COUNT_VECTOR_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "symfreq/alphabet.hpp"
#include "symfreq/error.hpp"

namespace symfreq {

namespace detail {

inline std::uint64_t checked_sum(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(Errc::overflow, "symbol count exceeds 2^64 - 1");
  }
  return r;
}

// Index of the first code >= m, or symbols.size() when all are valid.
inline std::size_t first_invalid(std::span<const SymbolCode> symbols, std::uint64_t m) noexcept {
  if (m > std::numeric_limits<SymbolCode>::max()) return symbols.size();
  const auto limit = static_cast<SymbolCode>(m);
  SymbolCode hi = 0;
  for (SymbolCode v : symbols) hi = std::max(hi, v);
  if (hi < limit) return symbols.size();
  return static_cast<std::size_t>(
      std::find_if(symbols.begin(), symbols.end(), [limit](SymbolCode v) { return v >= limit; }) -
      symbols.begin());
}

// Histogram kernel. Small alphabets use four interleaved tables so that runs
// of the same symbol do not serialize on one counter.
inline void tally(std::span<const SymbolCode> symbols, std::span<std::uint64_t> counts) noexcept {
  constexpr std::size_t kLanes = 4;
  if (counts.size() > 256 || symbols.size() < 4096) {
    for (SymbolCode v : symbols) ++counts[v];
    return;
  }
  std::array<std::array<std::uint64_t, 256>, kLanes> lanes{};
  const std::size_t body = symbols.size() - symbols.size() % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    ++lanes[0][symbols[i]];
    ++lanes[1][symbols[i + 1]];
    ++lanes[2][symbols[i + 2]];
    ++lanes[3][symbols[i + 3]];
  }
  for (std::size_t i = body; i < symbols.size(); ++i) ++lanes[0][symbols[i]];
  for (std::size_t s = 0; s < counts.size(); ++s) {
    counts[s] += lanes[0][s] + lanes[1][s] + lanes[2][s] + lanes[3][s];
  }
}

}  // namespace detail

/// Per-symbol occurrence counts over a prefix of length n.
class CountVector {
 public:
  explicit CountVector(const Alphabet& alphabet)
      : alphabet_(alphabet), counts_(static_cast<std::size_t>(alphabet.size()), 0) {}

  CountVector(const Alphabet& alphabet, std::vector<std::uint64_t> counts)
      : alphabet_(alphabet), counts_(std::move(counts)) {
    if (counts_.size() != alphabet.size()) {
      throw Error(Errc::invalid_argument, "count vector has " + std::to_string(counts_.size()) +
                                              " entries for a base-" +
                                              std::to_string(alphabet.size()) + " alphabet");
    }
    for (auto c : counts_) n_ = detail::checked_sum(n_, c);
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t count(Symbol s) const noexcept { return counts_[s.value()]; }
  std::uint64_t n() const noexcept { return n_; }

  /// Appends `symbols` to the counted prefix. An invalid code throws
  /// Errc::invalid_symbol positioned at its offset from the start of the
  /// prefix, leaving the vector unchanged.
  void add(std::span<const SymbolCode> symbols) {
    const std::size_t bad = detail::first_invalid(symbols, alphabet_.size());
    if (bad != symbols.size()) {
      throw Error(Errc::invalid_symbol,
                  "symbol " + std::to_string(symbols[bad]) + " at offset " +
                      std::to_string(n_ + bad) + " is outside the base-" +
                      std::to_string(alphabet_.size()) + " alphabet",
                  n_ + bad);
    }
    const std::uint64_t grown = detail::checked_sum(n_, symbols.size());
    detail::tally(symbols, counts_);
    n_ = grown;
  }

  CountVector& operator+=(const CountVector& other) {
    if (!(alphabet_ == other.alphabet_)) {
      throw Error(Errc::incompatible_counter, "cannot combine counts over base " +
                                                  std::to_string(alphabet_.size()) + " and base " +
                                                  std::to_string(other.alphabet_.size()));
    }
    const std::uint64_t total = detail::checked_sum(n_, other.n_);
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    n_ = total;
    return *this;
  }

  friend CountVector operator+(CountVector lhs, const CountVector& rhs) { return lhs += rhs; }

  friend bool operator==(const CountVector&, const CountVector&) = default;

 private:
  Alphabet alphabet_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_ = 0;
};

/// Counts the first n symbols of `sequence`.
inline CountVector count_prefix(const Alphabet& alphabet, std::span<const SymbolCode> sequence,
                                std::uint64_t n) {
  if (n > sequence.size()) {
    throw Error(Errc::prefix_out_of_range, "prefix length " + std::to_string(n) +
                                               " exceeds sequence length " +
                                               std::to_string(sequence.size()));
  }
  const std::size_t bad = detail::first_invalid(sequence, alphabet.size());
  if (bad != sequence.size()) {
    throw Error(Errc::invalid_symbol,
                "symbol " + std::to_string(sequence[bad]) + " at offset " + std::to_string(bad) +
                    " is outside the base-" + std::to_string(alphabet.size()) + " alphabet",
                bad);
  }
  CountVector counts(alphabet);
  counts.add(sequence.first(static_cast<std::size_t>(n)));
  return counts;
}

}  // namespace symfreq

#endif  // SYMFREQ_COUNT_VECTOR_HPP
