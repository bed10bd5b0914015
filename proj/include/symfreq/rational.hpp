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

#ifndef SYMFREQ_RATIONAL_HPP
#define SYMFREQ_RATIONAL_HPP

#include <algorithm>
#include <bit>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "symfreq/error.hpp"

namespace symfreq {

using int128 = __int128;
using uint128 = unsigned __int128;

namespace detail {

// Binary gcd with a branch-free inner step.
inline std::uint64_t gcd64(std::uint64_t u, std::uint64_t v) noexcept {
  if (u == 0) return v;
  if (v == 0) return u;
  const int shift = std::countr_zero(u | v);
  u >>= std::countr_zero(u);
  v >>= std::countr_zero(v);
  while (u != v) {
    const std::uint64_t lo = std::min(u, v);
    const std::uint64_t diff = u > v ? u - v : v - u;
    u = lo;
    v = diff >> std::countr_zero(diff);
  }
  return u << shift;
}

inline uint128 gcd128(uint128 a, uint128 b) noexcept {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline uint128 magnitude(int128 v) noexcept {
  return v < 0 ? uint128(0) - static_cast<uint128>(v) : static_cast<uint128>(v);
}

inline bool fits63(int128 v) noexcept { return (magnitude(v) >> 63) == 0; }

inline std::string to_decimal_string(uint128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline std::string to_decimal_string(int128 v) {
  return v < 0 ? "-" + to_decimal_string(magnitude(v)) : to_decimal_string(magnitude(v));
}

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(Errc::overflow, "rational arithmetic exceeds 128-bit range");
  }
  return r;
}

inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(Errc::overflow, "rational arithmetic exceeds 128-bit range");
  }
  return r;
}

inline constexpr int128 kInt128Max = static_cast<int128>(~uint128(0) >> 1);

// Floor quotient and nonnegative remainder for den > 0.
inline std::pair<int128, int128> floor_divmod(int128 num, int128 den) noexcept {
  int128 q = num / den;
  int128 r = num % den;
  if (r < 0) {
    q -= 1;
    r += den;
  }
  return {q, r};
}

// Compares a/b with c/d (b, d > 0) without forming cross products, by
// walking the continued fraction expansions in lockstep.
inline std::strong_ordering compare_fractions(int128 a, int128 b, int128 c, int128 d) noexcept {
  bool flipped = false;
  for (;;) {
    auto [qa, ra] = floor_divmod(a, b);
    auto [qc, rc] = floor_divmod(c, d);
    if (qa != qc) {
      auto ord = qa <=> qc;
      return flipped ? 0 <=> ord : ord;
    }
    if (ra == 0 || rc == 0) {
      auto ord = (ra == 0 && rc == 0) ? std::strong_ordering::equal
                 : ra == 0            ? std::strong_ordering::less
                                      : std::strong_ordering::greater;
      return flipped ? 0 <=> ord : ord;
    }
    // ra/b < rc/d  <=>  b/ra > d/rc
    a = std::exchange(b, ra);
    c = std::exchange(d, rc);
    flipped = !flipped;
  }
}

}  // namespace detail

/// Exact rational number kept in lowest terms with a positive denominator.
///
/// Numerator and denominator are 128-bit; every operation that would leave
/// that range throws Errc::overflow instead of rounding. Comparisons never
/// overflow.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) : num_(static_cast<int128>(value)) {}  // NOLINT(google-explicit-constructor)

  template <std::integral N, std::integral D>
  Rational(N num, D den) : Rational(make(static_cast<int128>(num), static_cast<int128>(den))) {}

  /// Builds num/den from 128-bit parts, reducing to lowest terms.
  static Rational make(int128 num, int128 den) {
    if (den == 0) throw Error(Errc::invalid_argument, "zero denominator");
    if (num == std::numeric_limits<int128>::min() || den == std::numeric_limits<int128>::min()) {
      throw Error(Errc::overflow, "rational arithmetic exceeds 128-bit range");
    }
    if (den < 0) {
      num = -num;
      den = -den;
    }
    Rational r;
    if (num == 0) return r;
    if (detail::fits63(num) && detail::fits63(den)) {
      const auto n64 = static_cast<std::int64_t>(num);
      const auto d64 = static_cast<std::int64_t>(den);
      const auto g = static_cast<std::int64_t>(detail::gcd64(static_cast<std::uint64_t>(n64 < 0 ? -n64 : n64),
                                                            static_cast<std::uint64_t>(d64)));
      r.num_ = n64 / g;
      r.den_ = d64 / g;
      return r;
    }
    const uint128 g = detail::gcd128(detail::magnitude(num), static_cast<uint128>(den));
    r.num_ = num / static_cast<int128>(g);
    r.den_ = den / static_cast<int128>(g);
    return r;
  }

  /// Parses "p", "-p" or "p/q" (decimal digits only).
  static Rational parse(std::string_view text) {
    const auto fail = [&] {
      return Error(Errc::invalid_argument, "malformed rational '" + std::string(text) + "'");
    };
    const auto parse_int = [&](std::string_view s) {
      if (s.empty()) throw fail();
      int128 v = 0;
      for (char ch : s) {
        if (ch < '0' || ch > '9') throw fail();
        v = detail::checked_add(detail::checked_mul(v, 10), ch - '0');
      }
      return v;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
      negative = true;
      body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    int128 num = parse_int(body.substr(0, slash));
    int128 den = slash == std::string_view::npos ? 1 : parse_int(body.substr(slash + 1));
    if (den == 0) throw fail();
    return make(negative ? -num : num, den);
  }

  int128 num() const noexcept { return num_; }
  int128 den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_negative() const noexcept { return num_ < 0; }
  bool is_integer() const noexcept { return den_ == 1; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "p" for integers, "p/q" otherwise, always in lowest terms.
  std::string str() const {
    std::string s = detail::to_decimal_string(num_);
    if (den_ != 1) {
      s += '/';
      s += detail::to_decimal_string(den_);
    }
    return s;
  }

  Rational operator-() const {
    Rational r;
    r.num_ = detail::checked_mul(num_, -1);
    r.den_ = den_;
    return r;
  }

  friend Rational abs(const Rational& r) { return r.num_ < 0 ? -r : r; }

  friend Rational operator+(const Rational& x, const Rational& y) {
    if (x.den_ == y.den_) return make(detail::checked_add(x.num_, y.num_), x.den_);
    if (detail::fits63(x.num_) && detail::fits63(y.num_) && detail::fits63(x.den_) && detail::fits63(y.den_)) {
      // Knuth's addition: only gcds of the small factors are needed, and
      // products of 63-bit values cannot overflow.
      const auto xd = static_cast<std::uint64_t>(x.den_);
      const auto yd = static_cast<std::uint64_t>(y.den_);
      const std::uint64_t g = detail::gcd64(xd, yd);
      Rational r;
      if (g == 1) {
        r.num_ = x.num_ * y.den_ + y.num_ * x.den_;
        r.den_ = x.den_ * y.den_;
        return r;
      }
      const int128 t = x.num_ * static_cast<int128>(yd / g) + y.num_ * static_cast<int128>(xd / g);
      const std::uint64_t g2 = detail::gcd64(static_cast<std::uint64_t>(detail::magnitude(t) % g), g);
      r.num_ = g2 == 1 ? t : t / static_cast<int128>(g2);
      r.den_ = static_cast<int128>(xd / g) * static_cast<int128>(yd / g2);
      return r;
    }
    const int128 g = static_cast<int128>(detail::gcd128(static_cast<uint128>(x.den_),
                                                        static_cast<uint128>(y.den_)));
    const int128 xs = y.den_ / g;
    const int128 ys = x.den_ / g;
    const int128 num =
        detail::checked_add(detail::checked_mul(x.num_, xs), detail::checked_mul(y.num_, ys));
    return make(num, detail::checked_mul(x.den_, xs));
  }

  friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

  friend Rational operator*(const Rational& x, const Rational& y) {
    if (x.num_ == 0 || y.num_ == 0) return Rational{};
    const auto g1 = static_cast<int128>(
        detail::gcd128(detail::magnitude(x.num_), static_cast<uint128>(y.den_)));
    const auto g2 = static_cast<int128>(
        detail::gcd128(detail::magnitude(y.num_), static_cast<uint128>(x.den_)));
    Rational r;
    r.num_ = detail::checked_mul(x.num_ / g1, y.num_ / g2);
    r.den_ = detail::checked_mul(x.den_ / g2, y.den_ / g1);
    return r;
  }

  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw Error(Errc::invalid_argument, "division by zero");
    Rational inv;
    inv.num_ = y.num_ < 0 ? -y.den_ : y.den_;
    inv.den_ = y.num_ < 0 ? -y.num_ : y.num_;
    return x * inv;
  }

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend bool operator==(const Rational& x, const Rational& y) noexcept {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) noexcept {
    if (x.den_ == y.den_) return x.num_ <=> y.num_;
    int128 lhs;
    int128 rhs;
    if (!__builtin_mul_overflow(x.num_, y.den_, &lhs) &&
        !__builtin_mul_overflow(y.num_, x.den_, &rhs)) {
      return lhs <=> rhs;
    }
    return detail::compare_fractions(x.num_, x.den_, y.num_, y.den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  int128 num_ = 0;
  int128 den_ = 1;
};

}  // namespace symfreq

#endif  // SYMFREQ_RATIONAL_HPP
