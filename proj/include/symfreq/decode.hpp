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

#ifndef SYMFREQ_DECODE_HPP
#define SYMFREQ_DECODE_HPP

#include <array>
#include <bitset>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <system_error>
#include <vector>

#include "symfreq/alphabet.hpp"
#include "symfreq/error.hpp"
#include "symfreq/stream.hpp"

namespace symfreq {

enum class DecodeMode { raw_byte, ascii_digit };

struct DecoderConfig {
  static std::bitset<256> default_skip() {
    std::bitset<256> s;
    for (unsigned char c : {' ', '\t', '\r', '\n'}) s.set(c);
    return s;
  }

  DecodeMode mode = DecodeMode::ascii_digit;
  std::bitset<256> skip = default_skip();  // ascii-digit mode only

  static DecoderConfig raw() { return {DecodeMode::raw_byte, {}}; }
  static DecoderConfig ascii() { return {}; }

  void validate(const Alphabet& alphabet) const {
    if (mode == DecodeMode::raw_byte && alphabet.size() > 256) {
      throw Error(Errc::invalid_argument, "raw-byte decoding needs a base of at most 256");
    }
    if (mode == DecodeMode::ascii_digit && alphabet.size() > 36) {
      throw Error(Errc::invalid_argument, "ascii-digit decoding needs a base of at most 36");
    }
  }
};

/// Value of an ascii digit character ('0'-'9', then 'a'-'z' / 'A'-'Z'), or
/// -1 for anything else.
constexpr int ascii_digit_value(unsigned char c) noexcept {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

constexpr char ascii_digit_char(SymbolCode v) noexcept {
  return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10));
}

/// Appends the encoding of `symbols` to `out`. Lowercase letters are used for
/// digits 10-35.
inline void encode_symbols(std::span<const SymbolCode> symbols, const Alphabet& alphabet,
                           DecodeMode mode, std::string& out) {
  DecoderConfig{mode, {}}.validate(alphabet);
  out.reserve(out.size() + symbols.size());
  for (SymbolCode s : symbols) {
    if (!alphabet.contains(s)) {
      throw Error(Errc::invalid_symbol, "symbol " + std::to_string(s) + " is outside the base-" +
                                            std::to_string(alphabet.size()) + " alphabet");
    }
    out.push_back(mode == DecodeMode::raw_byte ? static_cast<char>(s) : ascii_digit_char(s));
  }
}

/// Symbols decoded from a byte range of a file.
///
/// Addressable units are bytes, so slices of an ascii-digit stream are byte
/// ranges; in raw-byte mode bytes and symbols coincide. Decode errors carry
/// the absolute byte offset within the file.
class FileStream final : public SymbolStream {
 public:
  static constexpr std::size_t kBufferSize = std::size_t{1} << 18;

  FileStream(std::filesystem::path path, const Alphabet& alphabet, DecoderConfig config)
      : path_(std::move(path)), alphabet_(alphabet), config_(config) {
    config_.validate(alphabet_);
    std::error_code ec;
    const auto size = std::filesystem::file_size(path_, ec);
    if (ec) throw Error(Errc::io_error, "cannot read '" + path_.string() + "': " + ec.message());
    end_ = size;
    build_table();
    open(0);
  }

  const Alphabet& alphabet() const noexcept override { return alphabet_; }

  std::size_t read(std::span<SymbolCode> out) override {
    std::size_t n = 0;
    while (n < out.size()) {
      if (buf_pos_ == buf_len_ && !refill()) break;
      while (buf_pos_ < buf_len_ && n < out.size()) {
        const unsigned char byte = buffer_[buf_pos_];
        const std::int16_t v = table_[byte];
        if (v >= 0) {
          out[n++] = static_cast<SymbolCode>(v);
        } else if (v == kBad) {
          // Deliver what precedes the bad byte; the next read reports it.
          if (n > 0) return n;
          throw bad_byte(buf_base_ + buf_pos_, byte);
        }
        ++buf_pos_;
      }
    }
    return n;
  }

  std::optional<std::uint64_t> known_length() const override {
    if (config_.mode == DecodeMode::raw_byte) return end_ - begin_;
    return std::nullopt;
  }

  std::optional<std::uint64_t> extent() const override { return end_ - begin_; }

  bool symbol_addressed() const override { return config_.mode == DecodeMode::raw_byte; }

  std::unique_ptr<SymbolStream> slice(std::uint64_t begin,
                                      std::optional<std::uint64_t> end) const override {
    const std::uint64_t len = end_ - begin_;
    const std::uint64_t b = std::min(begin, len);
    const std::uint64_t e = std::clamp(end.value_or(len), b, len);
    return std::unique_ptr<SymbolStream>(new FileStream(*this, begin_ + b, begin_ + e));
  }

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  static constexpr std::int16_t kSkip = -1;
  static constexpr std::int16_t kBad = -2;

  FileStream(const FileStream& parent, std::uint64_t begin, std::uint64_t end)
      : path_(parent.path_),
        alphabet_(parent.alphabet_),
        config_(parent.config_),
        table_(parent.table_),
        begin_(begin),
        end_(end) {
    open(begin);
  }

  void build_table() {
    for (unsigned b = 0; b < 256; ++b) {
      std::int16_t v = kBad;
      if (config_.mode == DecodeMode::raw_byte) {
        if (alphabet_.contains(b)) v = static_cast<std::int16_t>(b);
      } else if (config_.skip.test(b)) {
        v = kSkip;
      } else if (const int d = ascii_digit_value(static_cast<unsigned char>(b));
                 d >= 0 && alphabet_.contains(static_cast<std::uint64_t>(d))) {
        v = static_cast<std::int16_t>(d);
      }
      table_[b] = v;
    }
  }

  void open(std::uint64_t offset) {
    file_.open(path_, std::ios::binary);
    if (!file_) throw Error(Errc::io_error, "cannot open '" + path_.string() + "'");
    file_.seekg(static_cast<std::streamoff>(offset));
    if (!file_) throw Error(Errc::io_error, "cannot seek in '" + path_.string() + "'");
    buf_base_ = offset;
    next_ = offset;
    buffer_.resize(kBufferSize);
  }

  bool refill() {
    if (next_ >= end_) return false;
    const auto want = static_cast<std::streamsize>(std::min<std::uint64_t>(kBufferSize, end_ - next_));
    file_.read(reinterpret_cast<char*>(buffer_.data()), want);
    const auto got = file_.gcount();
    if (got <= 0) {
      throw Error(Errc::io_error, "unexpected end of '" + path_.string() + "' at byte " +
                                      std::to_string(next_));
    }
    buf_base_ = next_;
    buf_pos_ = 0;
    buf_len_ = static_cast<std::size_t>(got);
    next_ += static_cast<std::uint64_t>(got);
    return true;
  }

  Error bad_byte(std::uint64_t offset, unsigned char byte) const {
    char hex[8];
    std::snprintf(hex, sizeof(hex), "0x%02X", byte);
    std::string what = "decode error at byte offset " + std::to_string(offset) + ": byte " + hex;
    const int d = ascii_digit_value(byte);
    if (config_.mode == DecodeMode::raw_byte) {
      what += " is not below base " + std::to_string(alphabet_.size());
    } else if (d >= 0) {
      what += " ('" + std::string(1, static_cast<char>(byte)) + "') is digit " +
              std::to_string(d) + ", not below base " + std::to_string(alphabet_.size());
    } else {
      what += " is not an ascii digit";
    }
    return Error(Errc::decode_error, what, offset);
  }

  std::filesystem::path path_;
  Alphabet alphabet_;
  DecoderConfig config_;
  std::array<std::int16_t, 256> table_{};
  std::uint64_t begin_ = 0;
  std::uint64_t end_ = 0;
  std::ifstream file_;
  std::vector<unsigned char> buffer_;
  std::uint64_t buf_base_ = 0;  // file offset of buffer_[0]
  std::size_t buf_pos_ = 0;
  std::size_t buf_len_ = 0;
  std::uint64_t next_ = 0;  // file offset of the next byte to load
};

inline FileStream decode_file(const std::filesystem::path& path, const Alphabet& alphabet,
                              const DecoderConfig& config = {}) {
  return FileStream(path, alphabet, config);
}

}  // namespace symfreq

#endif  // SYMFREQ_DECODE_HPP
