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

#ifndef SYMFREQ_ALPHABET_HPP
#define SYMFREQ_ALPHABET_HPP

#include <cstdint>
#include <limits>
#include <string>

#include "symfreq/error.hpp"

namespace symfreq {

/// Raw symbol value as it travels through hot loops. Validity against an
/// alphabet is checked where symbols enter the library, not per use.
using SymbolCode = std::uint32_t;

class Alphabet;

/// A symbol known to be valid for the alphabet that produced it.
class Symbol {
 public:
  SymbolCode value() const noexcept { return value_; }

  friend bool operator==(Symbol, Symbol) = default;

 private:
  friend class Alphabet;
  explicit Symbol(SymbolCode v) noexcept : value_(v) {}
  SymbolCode value_;
};

/// The m-ary alphabet {0, 1, ..., m-1} with m >= 2.
class Alphabet {
 public:
  static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 32;

  explicit Alphabet(std::uint64_t m) : m_(m) {
    if (m < 2 || m > kMaxSize) {
      throw Error(Errc::invalid_alphabet,
                  "alphabet size must be in [2, 2^32], got " + std::to_string(m));
    }
  }

  std::uint64_t size() const noexcept { return m_; }

  bool contains(std::uint64_t value) const noexcept { return value < m_; }

  Symbol symbol(std::uint64_t value) const {
    if (!contains(value)) {
      throw Error(Errc::invalid_symbol, "symbol " + std::to_string(value) +
                                            " is outside the base-" + std::to_string(m_) +
                                            " alphabet");
    }
    return Symbol(static_cast<SymbolCode>(value));
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::uint64_t m_;
};

/// Signed entry point so that nonsense sizes such as -1 are reported as
/// invalid alphabets rather than wrapping.
inline Alphabet alphabet_new(std::int64_t m) {
  if (m < 2) {
    throw Error(Errc::invalid_alphabet, "alphabet size must be at least 2, got " + std::to_string(m));
  }
  return Alphabet(static_cast<std::uint64_t>(m));
}

}  // namespace symfreq

#endif  // SYMFREQ_ALPHABET_HPP
