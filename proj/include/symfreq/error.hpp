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

#ifndef SYMFREQ_ERROR_HPP
#define SYMFREQ_ERROR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symfreq {

enum class Errc {
  invalid_alphabet,
  invalid_symbol,
  invalid_argument,
  prefix_out_of_range,
  undefined_frequency,
  incompatible_measure,
  incompatible_counter,
  invalid_measure,
  invalid_pattern,
  invalid_schedule,
  insufficient_input,
  decode_error,
  io_error,
  empty_series,
  insufficient_rows,
  overflow,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_alphabet: return "invalid-alphabet";
    case Errc::invalid_symbol: return "invalid-symbol";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::prefix_out_of_range: return "prefix-out-of-range";
    case Errc::undefined_frequency: return "undefined-frequency";
    case Errc::incompatible_measure: return "incompatible-measure";
    case Errc::incompatible_counter: return "incompatible-counter";
    case Errc::invalid_measure: return "invalid-measure";
    case Errc::invalid_pattern: return "invalid-pattern";
    case Errc::invalid_schedule: return "invalid-schedule";
    case Errc::insufficient_input: return "insufficient-input";
    case Errc::decode_error: return "decode-error";
    case Errc::io_error: return "io-error";
    case Errc::empty_series: return "empty-series";
    case Errc::insufficient_rows: return "insufficient-rows";
    case Errc::overflow: return "overflow";
  }
  return "unknown";
}

/// The single exception type thrown by the library.
///
/// `position()` carries the location the error refers to when there is one:
/// the absolute symbol offset for invalid symbols, the absolute byte offset
/// for decode errors, and the first unreachable prefix length for
/// insufficient input.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::uint64_t> position = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        position_(position) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::uint64_t> position() const noexcept { return position_; }

 private:
  Errc code_;
  std::optional<std::uint64_t> position_;
};

}  // namespace symfreq

#endif  // SYMFREQ_ERROR_HPP
