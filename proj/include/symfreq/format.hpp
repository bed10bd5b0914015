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

#ifndef SYMFREQ_FORMAT_HPP
#define SYMFREQ_FORMAT_HPP

// Human-facing decimal rendering. Both functions produce printf("%.*g")
// shaped text: fixed notation for exponents in [-4, digits), scientific
// otherwise, trailing zeros removed. Rounding is round-half-even on the
// exact value.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdlib>
#include <string>
#include <system_error>

#include "symfreq/rational.hpp"

namespace symfreq {

namespace detail {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt to_big(int128 v) {
  const uint128 mag = magnitude(v);
  BigInt out = static_cast<std::uint64_t>(mag >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(mag);
  return v < 0 ? BigInt(-out) : out;
}

inline BigInt pow10(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

inline std::string strip_fraction_zeros(std::string s) {
  if (s.find('.') == std::string::npos) return s;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

}  // namespace detail

inline std::string format_decimal(const Rational& value, int digits = 12) {
  if (digits < 1) throw Error(Errc::invalid_argument, "at least one significant digit required");
  if (value.is_zero()) return "0";

  const detail::BigInt num = abs(detail::to_big(value.num()));
  const detail::BigInt den = detail::to_big(value.den());

  // Decimal exponent e with 10^e <= value < 10^(e+1).
  int exponent = 0;
  if (num >= den) {
    detail::BigInt q = num / den;
    while (q >= 10) {
      q /= 10;
      ++exponent;
    }
  } else {
    detail::BigInt scaled = num;
    while (scaled < den) {
      scaled *= 10;
      --exponent;
    }
  }

  // mantissa = round(value * 10^(digits - 1 - exponent)), half to even.
  const int shift = digits - 1 - exponent;
  detail::BigInt top = num;
  detail::BigInt bottom = den;
  if (shift >= 0) {
    top *= detail::pow10(static_cast<unsigned>(shift));
  } else {
    bottom *= detail::pow10(static_cast<unsigned>(-shift));
  }
  detail::BigInt mantissa = top / bottom;
  const detail::BigInt twice_rem = (top % bottom) * 2;
  if (twice_rem > bottom || (twice_rem == bottom && (mantissa & 1) == 1)) ++mantissa;
  if (mantissa == detail::pow10(static_cast<unsigned>(digits))) {
    mantissa /= 10;
    ++exponent;
  }

  std::string ds = mantissa.str();
  std::string out = value.is_negative() ? "-" : "";
  if (exponent < -4 || exponent >= digits) {
    std::string m = ds.substr(0, 1);
    if (ds.size() > 1) m += "." + ds.substr(1);
    out += detail::strip_fraction_zeros(m);
    out += exponent < 0 ? "e-" : "e+";
    const int mag = std::abs(exponent);
    if (mag < 10) out += '0';
    out += std::to_string(mag);
  } else if (exponent >= 0) {
    std::string m = ds.substr(0, static_cast<std::size_t>(exponent) + 1);
    if (ds.size() > static_cast<std::size_t>(exponent) + 1) {
      m += "." + ds.substr(static_cast<std::size_t>(exponent) + 1);
    }
    out += detail::strip_fraction_zeros(m);
  } else {
    out += detail::strip_fraction_zeros(
        "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + ds);
  }
  return out;
}

inline std::string format_double(double value, int digits = 12) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
  if (res.ec != std::errc{}) throw Error(Errc::invalid_argument, "unformattable value");
  return std::string(buf, res.ptr);
}

}  // namespace symfreq

#endif  // SYMFREQ_FORMAT_HPP
