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

#ifndef SYMFREQ_STREAM_HPP
#define SYMFREQ_STREAM_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symfreq/alphabet.hpp"
#include "symfreq/count_vector.hpp"
#include "symfreq/error.hpp"

namespace symfreq {

/// Pull-based source of symbols, finite or unbounded.
///
/// Streams are single-consumer. Besides sequential reads a stream may
/// support slicing: opening an independent stream over a range of its
/// addressable units. Units are symbols for generators and in-memory
/// sequences, and bytes for decoded files (see symbol_addressed()). Slices
/// are always relative to the stream's origin, never to its read position.
class SymbolStream {
 public:
  virtual ~SymbolStream() = default;

  virtual const Alphabet& alphabet() const noexcept = 0;

  /// Writes up to out.size() symbols and returns how many were written.
  /// Zero means the stream is exhausted. May throw Errc::decode_error; a
  /// read that hits a bad unit first returns the symbols before it.
  virtual std::size_t read(std::span<SymbolCode> out) = 0;

  /// Exact symbol count when known without reading.
  virtual std::optional<std::uint64_t> known_length() const { return std::nullopt; }

  /// Number of addressable units, or nullopt when unbounded.
  virtual std::optional<std::uint64_t> extent() const { return std::nullopt; }

  virtual bool symbol_addressed() const { return true; }

  /// Independent stream over units [begin, end) of this stream's origin;
  /// nullopt end means "to the end". Returns nullptr when unsupported.
  virtual std::unique_ptr<SymbolStream> slice(std::uint64_t /*begin*/,
                                              std::optional<std::uint64_t> /*end*/) const {
    return nullptr;
  }
};

/// A finite in-memory sequence. Symbols are validated on construction.
class VectorStream final : public SymbolStream {
 public:
  VectorStream(const Alphabet& alphabet, std::vector<SymbolCode> symbols)
      : VectorStream(alphabet, std::make_shared<const std::vector<SymbolCode>>(std::move(symbols)),
                     0, std::nullopt) {
    const std::size_t bad = detail::first_invalid(*data_, alphabet.size());
    if (bad != data_->size()) {
      throw Error(Errc::invalid_symbol,
                  "symbol " + std::to_string((*data_)[bad]) + " at offset " + std::to_string(bad) +
                      " is outside the base-" + std::to_string(alphabet.size()) + " alphabet",
                  bad);
    }
  }

  const Alphabet& alphabet() const noexcept override { return alphabet_; }

  std::size_t read(std::span<SymbolCode> out) override {
    const std::size_t take = std::min<std::size_t>(out.size(), end_ - pos_);
    std::copy_n(data_->begin() + static_cast<std::ptrdiff_t>(pos_), take, out.begin());
    pos_ += take;
    return take;
  }

  std::optional<std::uint64_t> known_length() const override { return end_ - begin_; }
  std::optional<std::uint64_t> extent() const override { return end_ - begin_; }

  std::unique_ptr<SymbolStream> slice(std::uint64_t begin,
                                      std::optional<std::uint64_t> end) const override {
    const std::uint64_t len = end_ - begin_;
    const std::uint64_t b = std::min(begin, len);
    const std::uint64_t e = std::clamp(end.value_or(len), b, len);
    return std::unique_ptr<SymbolStream>(
        new VectorStream(alphabet_, data_, static_cast<std::size_t>(begin_ + b),
                         static_cast<std::size_t>(begin_ + e)));
  }

 private:
  VectorStream(const Alphabet& alphabet, std::shared_ptr<const std::vector<SymbolCode>> data,
               std::size_t begin, std::optional<std::size_t> end)
      : alphabet_(alphabet),
        data_(std::move(data)),
        begin_(begin),
        end_(end.value_or(data_->size())),
        pos_(begin) {}

  Alphabet alphabet_;
  std::shared_ptr<const std::vector<SymbolCode>> data_;
  std::size_t begin_;
  std::size_t end_;
  std::size_t pos_;
};

/// Reads exactly n symbols, or fewer if the stream ends first.
inline std::vector<SymbolCode> take(SymbolStream& stream, std::size_t n) {
  std::vector<SymbolCode> out(n);
  std::size_t got = 0;
  while (got < n) {
    const std::size_t r = stream.read(std::span(out).subspan(got));
    if (r == 0) break;
    got += r;
  }
  out.resize(got);
  return out;
}

}  // namespace symfreq

#endif  // SYMFREQ_STREAM_HPP
