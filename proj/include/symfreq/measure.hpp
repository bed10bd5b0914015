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

#ifndef SYMFREQ_MEASURE_HPP
#define SYMFREQ_MEASURE_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symfreq/alphabet.hpp"
#include "symfreq/count_vector.hpp"
#include "symfreq/error.hpp"
#include "symfreq/rational.hpp"

namespace symfreq {

/// A point of the probability simplex over an alphabet, stored exactly as
/// numerators over one shared denominator. Numerators always sum to the
/// denominator.
///
/// The representation is not reduced: an empirical measure keeps the raw
/// counts over n so that serialized rows show what was counted. Equality
/// compares the points, so (2/4, 2/4) == (1/2, 1/2).
class Measure {
 public:
  Measure(const Alphabet& alphabet, std::vector<std::uint64_t> numerators,
          std::uint64_t denominator)
      : alphabet_(alphabet), numerators_(std::move(numerators)), denominator_(denominator) {
    if (numerators_.size() != alphabet.size()) {
      throw Error(Errc::invalid_measure, "measure has " + std::to_string(numerators_.size()) +
                                             " components for a base-" +
                                             std::to_string(alphabet.size()) + " alphabet");
    }
    if (denominator_ == 0) throw Error(Errc::invalid_measure, "measure denominator is zero");
    uint128 total = 0;
    for (auto v : numerators_) total += v;
    if (total != denominator_) {
      throw Error(Errc::invalid_measure, "measure components do not sum to 1");
    }
  }

  /// Builds a measure from exact components, which must be nonnegative and
  /// sum to exactly 1. The shared denominator is the lcm of the component
  /// denominators.
  static Measure from_components(const Alphabet& alphabet, std::span<const Rational> components) {
    if (components.size() != alphabet.size()) {
      throw Error(Errc::invalid_measure, "expected " + std::to_string(alphabet.size()) +
                                             " components, got " +
                                             std::to_string(components.size()));
    }
    Rational total;
    std::uint64_t lcm = 1;
    for (const auto& c : components) {
      if (c.is_negative()) throw Error(Errc::invalid_measure, "negative component " + c.str());
      total += c;
      const auto den = static_cast<uint128>(c.den());
      const uint128 next = lcm / detail::gcd128(lcm, den) * den;
      if (next > std::numeric_limits<std::uint64_t>::max()) {
        throw Error(Errc::invalid_measure, "common denominator exceeds 2^64 - 1");
      }
      lcm = static_cast<std::uint64_t>(next);
    }
    if (total != Rational(1)) {
      throw Error(Errc::invalid_measure, "components sum to " + total.str() + ", not 1");
    }
    std::vector<std::uint64_t> numerators;
    numerators.reserve(components.size());
    for (const auto& c : components) {
      numerators.push_back(static_cast<std::uint64_t>(c.num() * (lcm / c.den())));
    }
    return Measure(alphabet, std::move(numerators), lcm);
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::span<const std::uint64_t> numerators() const noexcept { return numerators_; }
  std::uint64_t denominator() const noexcept { return denominator_; }
  std::size_t size() const noexcept { return numerators_.size(); }

  Rational component(std::size_t i) const { return Rational(numerators_.at(i), denominator_); }
  Rational component(Symbol s) const { return component(s.value()); }

  std::vector<Rational> components() const {
    std::vector<Rational> out;
    out.reserve(numerators_.size());
    for (std::size_t i = 0; i < numerators_.size(); ++i) out.push_back(component(i));
    return out;
  }

  friend bool operator==(const Measure& p, const Measure& q) {
    if (!(p.alphabet_ == q.alphabet_)) return false;
    for (std::size_t i = 0; i < p.numerators_.size(); ++i) {
      if (uint128(p.numerators_[i]) * q.denominator_ != uint128(q.numerators_[i]) * p.denominator_) {
        return false;
      }
    }
    return true;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::uint64_t> numerators_;
  std::uint64_t denominator_;
};

using EmpiricalMeasure = Measure;

/// counts[i] / n for one symbol. Undefined on the empty prefix.
inline Rational symbol_frequency(const CountVector& counts, Symbol symbol) {
  if (counts.n() == 0) {
    throw Error(Errc::undefined_frequency, "frequency undefined at n=0");
  }
  if (!counts.alphabet().contains(symbol.value())) {
    throw Error(Errc::invalid_symbol, "symbol " + std::to_string(symbol.value()) +
                                          " is outside the base-" +
                                          std::to_string(counts.alphabet().size()) + " alphabet");
  }
  return Rational(counts.count(symbol), counts.n());
}

inline Measure empirical_measure(const CountVector& counts) {
  if (counts.n() == 0) {
    throw Error(Errc::undefined_frequency, "frequency undefined at n=0");
  }
  return Measure(counts.alphabet(), {counts.counts().begin(), counts.counts().end()}, counts.n());
}

inline Measure measure_uniform(const Alphabet& alphabet) {
  return Measure(alphabet, std::vector<std::uint64_t>(static_cast<std::size_t>(alphabet.size()), 1),
                 alphabet.size());
}

enum class Metric { total_variation, sup_deviation };

inline Rational measure_distance(const Measure& p, const Measure& q, Metric metric) {
  if (!(p.alphabet() == q.alphabet())) {
    throw Error(Errc::incompatible_measure,
                "measures over base " + std::to_string(p.alphabet().size()) + " and base " +
                    std::to_string(q.alphabet().size()));
  }
  Rational acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Rational gap = abs(p.component(i) - q.component(i));
    if (metric == Metric::total_variation) {
      acc += gap;
    } else if (gap > acc) {
      acc = gap;
    }
  }
  return metric == Metric::total_variation ? acc / Rational(2) : acc;
}

/// Shannon entropy in the given base (default: the alphabet size, which maps
/// the simplex onto [0, 1]). Zero components contribute nothing.
inline double measure_entropy(const Measure& p, std::optional<std::uint64_t> base = std::nullopt) {
  const std::uint64_t b = base.value_or(p.alphabet().size());
  if (b < 2) throw Error(Errc::invalid_argument, "entropy base must be at least 2");
  const auto den = static_cast<double>(p.denominator());
  double h = 0.0;
  for (auto num : p.numerators()) {
    if (num == 0) continue;
    const double pi = static_cast<double>(num) / den;
    h -= pi * std::log(pi);
  }
  h /= std::log(static_cast<double>(b));
  // Rounding can push the uniform point a hair past the maximum.
  if (b == p.alphabet().size() && h > 1.0) h = 1.0;
  return h;
}

}  // namespace symfreq

#endif  // SYMFREQ_MEASURE_HPP
