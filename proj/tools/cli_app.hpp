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

#ifndef SYMFREQ_TOOLS_CLI_APP_HPP
#define SYMFREQ_TOOLS_CLI_APP_HPP

// The symfreq command line: count, trace, gen, compare.
//
// Exit status is 0 on success and 2 for every usage or input error. Output
// formats are documented in docs/formats.md.

#include <CLI11.hpp>
#include <json.hpp>

#include <bitset>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "symfreq/symfreq.hpp"

namespace symfreq::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

inline std::vector<Rational> parse_rationals(std::string_view text) {
  std::vector<Rational> out;
  for (const auto& part : split(text, ',')) out.push_back(Rational::parse(part));
  return out;
}

inline std::bitset<256> parse_skip_bytes(std::string_view text) {
  std::bitset<256> skip;
  if (text.empty()) return skip;
  for (const auto& part : split(text, ',')) {
    const auto v = parse_u64(part, "skip byte");
    if (v > 255) throw UsageError("skip byte " + part + " is not a byte value");
    skip.set(static_cast<std::size_t>(v));
  }
  return skip;
}

/// `name:args` generator specification.
struct GeneratorSpec {
  enum class Kind { champernowne, periodic, bernoulli } kind;
  std::vector<SymbolCode> pattern;  // periodic
  std::vector<Rational> target;     // bernoulli

  static GeneratorSpec parse(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const std::string_view args =
        colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (name == "champernowne") {
      if (!args.empty()) throw UsageError("champernowne takes no arguments; use --base");
      return {Kind::champernowne, {}, {}};
    }
    if (name == "periodic") {
      GeneratorSpec spec{Kind::periodic, {}, {}};
      for (unsigned char c : args) {
        const int d = ascii_digit_value(c);
        if (d < 0) throw UsageError("periodic pattern character '" + std::string(1, c) + "' is not a digit");
        spec.pattern.push_back(static_cast<SymbolCode>(d));
      }
      if (spec.pattern.empty()) throw Error(Errc::invalid_pattern, "periodic pattern is empty");
      return spec;
    }
    if (name == "bernoulli") {
      if (args.empty()) throw UsageError("bernoulli needs a target, e.g. bernoulli:1/2,1/2");
      return {Kind::bernoulli, {}, parse_rationals(args)};
    }
    throw UsageError("unknown generator '" + std::string(name) +
                     "' (expected champernowne, periodic:PATTERN or bernoulli:P0,P1,...)");
  }

  Alphabet alphabet(std::optional<std::uint64_t> base) const {
    switch (kind) {
      case Kind::champernowne:
        if (!base) throw UsageError("champernowne needs --base");
        return Alphabet(*base);
      case Kind::periodic: {
        if (base) return Alphabet(*base);
        SymbolCode hi = 1;
        for (auto s : pattern) hi = std::max(hi, s);
        return Alphabet(std::uint64_t{hi} + 1);
      }
      case Kind::bernoulli:
        if (base && *base != target.size()) {
          throw Error(Errc::invalid_measure, "bernoulli target has " + std::to_string(target.size()) +
                                                 " components but --base is " + std::to_string(*base));
        }
        return Alphabet(target.size());
    }
    throw UsageError("unreachable generator kind");
  }

  std::unique_ptr<SymbolStream> open(std::optional<std::uint64_t> base, std::uint64_t seed) const {
    const Alphabet a = alphabet(base);
    switch (kind) {
      case Kind::champernowne: return std::make_unique<ChampernowneStream>(a);
      case Kind::periodic: return std::make_unique<PeriodicStream>(a, pattern);
      case Kind::bernoulli:
        return std::make_unique<BernoulliStream>(Measure::from_components(a, target), seed);
    }
    throw UsageError("unreachable generator kind");
  }
};

struct DecoderFlags {
  std::string mode = "ascii";
  std::string skip = "32,9,13,10";

  void attach(CLI::App& cmd) {
    cmd.add_option("--mode", mode, "Input decoding: ascii (digits 0-9a-z) or raw (one byte per symbol)")
        ->check(CLI::IsMember({"ascii", "raw"}))
        ->capture_default_str();
    cmd.add_option("--skip-bytes", skip, "Comma-separated byte values ignored in ascii mode")
        ->capture_default_str();
  }

  DecoderConfig config() const {
    if (mode == "raw") return DecoderConfig::raw();
    return {DecodeMode::ascii_digit, parse_skip_bytes(skip)};
  }
};

inline Json rational_list(std::span<const Rational> values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

inline Json u64_list(std::span<const std::uint64_t> values) {
  Json arr = Json::array();
  for (auto v : values) arr.push_back(v);
  return arr;
}

inline std::string csv_join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

inline Measure parse_target(std::string_view text, const Alphabet& alphabet) {
  if (text == "uniform") return measure_uniform(alphabet);
  const auto components = parse_rationals(text);
  return Measure::from_components(alphabet, components);
}

// ---------------------------------------------------------------- count

struct CountArgs {
  std::string input;
  std::uint64_t base = 0;
  std::optional<std::uint64_t> n;
  std::string format = "json";
  unsigned parallel = 1;
  DecoderFlags decoder;
};

inline int cmd_count(const CountArgs& args, std::ostream& out) {
  const Alphabet alphabet(args.base);
  auto stream = decode_file(args.input, alphabet, args.decoder.config());
  const CountVector counts = count_stream(stream, args.n, RunOptions{args.parallel});
  const Measure measure = empirical_measure(counts);  // throws at n = 0
  const auto components = measure.components();

  if (args.format == "csv") {
    std::vector<std::string> header{"n", "m"};
    std::vector<std::string> row{std::to_string(counts.n()), std::to_string(alphabet.size())};
    for (std::size_t i = 0; i < alphabet.size(); ++i) header.push_back("count_" + std::to_string(i));
    for (std::size_t i = 0; i < alphabet.size(); ++i) header.push_back("freq_" + std::to_string(i));
    header.push_back("entropy");
    for (auto c : counts.counts()) row.push_back(std::to_string(c));
    for (const auto& c : components) row.push_back(c.str());
    row.push_back(format_double(measure_entropy(measure)));
    out << csv_join(header) << '\n' << csv_join(row) << '\n';
    return kExitOk;
  }

  Json decimals = Json::array();
  for (const auto& c : components) decimals.push_back(format_decimal(c));
  Json doc;
  doc["m"] = alphabet.size();
  doc["n"] = counts.n();
  doc["counts"] = u64_list(counts.counts());
  doc["measure"] = rational_list(components);
  doc["measure_decimal"] = std::move(decimals);
  doc["entropy"] = format_double(measure_entropy(measure));
  out << doc.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- trace

struct TraceArgs {
  std::string input;
  std::string gen;
  std::optional<std::uint64_t> base;
  std::uint64_t seed = 0;
  std::string checkpoints;
  std::optional<double> geometric;
  std::optional<std::uint64_t> max_n;
  std::string target = "uniform";
  std::string format = "json";
  unsigned parallel = 1;
  std::size_t chunk_size = kDefaultChunkSize;
  std::string epsilon;
  std::size_t window = 3;
  DecoderFlags decoder;
};

inline Json report_row_json(const ReportRow& row, std::uint64_t m) {
  Json j;
  j["n"] = row.n;
  j["m"] = m;
  j["numerators"] = u64_list(row.measure.numerators());
  j["denominator"] = row.measure.denominator();
  j["tv_to_target"] = row.total_variation.str();
  j["sup_dev_to_target"] = row.sup_deviation.str();
  j["entropy"] = format_double(row.entropy);
  return j;
}

inline int cmd_trace(const TraceArgs& args, std::ostream& out) {
  if (args.input.empty() == args.gen.empty()) {
    throw UsageError("trace needs exactly one of --input or --gen");
  }
  std::unique_ptr<SymbolStream> source;
  if (!args.input.empty()) {
    if (!args.base) throw UsageError("--base is required with --input");
    source = std::make_unique<FileStream>(args.input, Alphabet(*args.base), args.decoder.config());
  } else {
    source = GeneratorSpec::parse(args.gen).open(args.base, args.seed);
  }
  const Alphabet& alphabet = source->alphabet();
  const RunOptions options{args.parallel, args.chunk_size};

  CheckpointSchedule schedule;
  if (!args.checkpoints.empty()) {
    std::vector<std::uint64_t> points;
    for (const auto& p : split(args.checkpoints, ',')) points.push_back(parse_u64(p, "checkpoint"));
    schedule = CheckpointSchedule(std::move(points));
  } else {
    std::uint64_t limit = 0;
    if (args.max_n) {
      limit = *args.max_n;
    } else if (source->known_length()) {
      limit = *source->known_length();
    } else if (source->extent()) {
      limit = count_stream(*source, std::nullopt, options).n();
    } else {
      throw UsageError("--geometric on an unbounded generator needs --max-n");
    }
    schedule = CheckpointSchedule::geometric(args.geometric.value_or(2.0), limit);
  }
  if (schedule.empty()) throw Error(Errc::empty_series, "checkpoint schedule is empty");

  const Measure target = parse_target(args.target, alphabet);
  const auto series = run_checkpointed(*source, schedule, options);
  const auto report = build_report(series, target);

  std::optional<Verdict> verdict;
  if (!args.epsilon.empty()) {
    verdict = verdict_simple_normality(report, Rational::parse(args.epsilon), args.window);
  }

  if (args.format == "csv") {
    std::vector<std::string> header{"n", "m"};
    for (std::size_t i = 0; i < alphabet.size(); ++i) header.push_back("num_" + std::to_string(i));
    for (const char* h : {"denominator", "tv_to_target", "sup_dev_to_target", "entropy"}) header.emplace_back(h);
    out << csv_join(header) << '\n';
    for (const auto& row : report.rows) {
      std::vector<std::string> cells{std::to_string(row.n), std::to_string(alphabet.size())};
      for (auto v : row.measure.numerators()) cells.push_back(std::to_string(v));
      cells.push_back(std::to_string(row.measure.denominator()));
      cells.push_back(row.total_variation.str());
      cells.push_back(row.sup_deviation.str());
      cells.push_back(format_double(row.entropy));
      out << csv_join(cells) << '\n';
    }
    return kExitOk;
  }

  Json doc;
  doc["m"] = alphabet.size();
  doc["target"] = rational_list(target.components());
  Json rows = Json::array();
  for (const auto& row : report.rows) rows.push_back(report_row_json(row, alphabet.size()));
  doc["rows"] = std::move(rows);
  Json summary;
  summary["final_n"] = report.summary.final_n;
  summary["final_sup_dev_to_target"] = report.summary.final_sup_deviation.str();
  summary["argmax"] = report.summary.argmax;
  doc["summary"] = std::move(summary);
  if (verdict) {
    Json v;
    v["verdict"] = std::string(to_string(verdict->kind));
    v["epsilon"] = verdict->epsilon.str();
    v["window"] = verdict->window;
    v["note"] = std::string(Verdict::kCaveat);
    Json evidence = Json::array();
    for (const auto& row : verdict->evidence) {
      Json e;
      e["n"] = row.n;
      e["sup_dev_to_uniform"] = row.sup_deviation.str();
      evidence.push_back(std::move(e));
    }
    v["evidence"] = std::move(evidence);
    doc["verdict"] = std::move(v);
  }
  out << doc.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string gen;
  std::optional<std::uint64_t> base;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::string encode = "ascii";
  std::string out_path;
};

inline int cmd_gen(const GenArgs& args, std::ostream& stdout_stream) {
  auto source = GeneratorSpec::parse(args.gen).open(args.base, args.seed);
  const DecodeMode mode = args.encode == "raw" ? DecodeMode::raw_byte : DecodeMode::ascii_digit;
  DecoderConfig{mode, {}}.validate(source->alphabet());

  std::ofstream file;
  std::ostream* sink = &stdout_stream;
  if (args.out_path != "-") {
    file.open(args.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(Errc::io_error, "cannot open '" + args.out_path + "' for writing");
    sink = &file;
  }

  std::vector<SymbolCode> chunk(std::min<std::uint64_t>(args.count, kDefaultChunkSize));
  std::string bytes;
  for (std::uint64_t written = 0; written < args.count;) {
    const auto want = static_cast<std::size_t>(std::min<std::uint64_t>(chunk.size(), args.count - written));
    const std::size_t got = source->read(std::span(chunk).first(want));
    if (got == 0) throw Error(Errc::insufficient_input, "generator ended early");
    bytes.clear();
    encode_symbols(std::span<const SymbolCode>(chunk).first(got), source->alphabet(), mode, bytes);
    sink->write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    written += got;
  }
  sink->flush();
  if (!*sink) throw Error(Errc::io_error, "write to '" + args.out_path + "' failed");
  return kExitOk;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::string first;
  std::string second;
  std::uint64_t base = 0;
  std::uint64_t n = 0;
  DecoderFlags decoder;
};

inline int cmd_compare(const CompareArgs& args, std::ostream& out) {
  const Alphabet alphabet(args.base);
  const auto measure_of = [&](const std::string& path, Json& side) {
    auto stream = decode_file(path, alphabet, args.decoder.config());
    const CountVector counts = count_stream(stream, args.n);
    const Measure m = empirical_measure(counts);
    side["input"] = path;
    side["counts"] = u64_list(counts.counts());
    side["measure"] = rational_list(m.components());
    return m;
  };
  Json a;
  Json b;
  const Measure p = measure_of(args.first, a);
  const Measure q = measure_of(args.second, b);

  Json doc;
  doc["m"] = alphabet.size();
  doc["n"] = args.n;
  doc["a"] = std::move(a);
  doc["b"] = std::move(b);
  doc["total_variation"] = measure_distance(p, q, Metric::total_variation).str();
  doc["sup_deviation"] = measure_distance(p, q, Metric::sup_deviation).str();
  out << doc.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- driver

inline constexpr const char* kGeneratorHelp =
    "Generator spec: champernowne (needs --base) | periodic:PATTERN (digits 0-9a-z, e.g. "
    "periodic:0110) | bernoulli:P0,P1,... (exact rationals summing to 1, e.g. "
    "bernoulli:1/3,1/3,1/3; draws use SplitMix64 seeded by --seed)";

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"symfreq: exact symbol counts, frequencies and empirical measures of m-ary sequences"};
  app.require_subcommand(1);

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "Count symbols of a file and print its empirical measure");
  count_cmd->add_option("input", count.input, "Input file")->required();
  count_cmd->add_option("--base", count.base, "Alphabet size m")->required();
  count_cmd->add_option("--n", count.n, "Prefix length (default: whole input)");
  count_cmd->add_option("--format", count.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  count_cmd->add_option("--parallel", count.parallel, "Worker count")->check(CLI::PositiveNumber)->capture_default_str();
  count.decoder.attach(*count_cmd);

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("trace", "Empirical measure trajectory at checkpoints");
  trace_cmd->footer(kGeneratorHelp);
  trace_cmd->add_option("--input", trace.input, "Input file");
  trace_cmd->add_option("--gen", trace.gen, "Generator spec (see below)");
  trace_cmd->add_option("--base", trace.base, "Alphabet size m (inferred for periodic and bernoulli)");
  trace_cmd->add_option("--seed", trace.seed, "Seed for bernoulli")->capture_default_str();
  auto* cp = trace_cmd->add_option("--checkpoints", trace.checkpoints, "Comma-separated increasing prefix lengths");
  auto* geo = trace_cmd->add_option("--geometric", trace.geometric, "Checkpoints at round(r^k) (default r=2)");
  cp->excludes(geo);
  trace_cmd->add_option("--max-n", trace.max_n, "Largest geometric checkpoint (default: input length)");
  trace_cmd->add_option("--target", trace.target, "uniform or comma-separated rationals")->capture_default_str();
  trace_cmd->add_option("--format", trace.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  trace_cmd->add_option("--parallel", trace.parallel, "Worker count")->check(CLI::PositiveNumber)->capture_default_str();
  trace_cmd->add_option("--chunk-size", trace.chunk_size, "Symbols per read")->check(CLI::PositiveNumber)->capture_default_str();
  trace_cmd->add_option("--epsilon", trace.epsilon, "Add a simple-normality verdict with this tolerance (rational)");
  trace_cmd->add_option("--window", trace.window, "Checkpoints the verdict looks at")->check(CLI::PositiveNumber)->capture_default_str();
  trace.decoder.attach(*trace_cmd);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write N generated symbols to a file");
  gen_cmd->footer(kGeneratorHelp);
  gen_cmd->add_option("--gen", gen.gen, "Generator spec")->required();
  gen_cmd->add_option("--base", gen.base, "Alphabet size m");
  gen_cmd->add_option("--seed", gen.seed, "Seed for bernoulli")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Number of symbols")->required();
  gen_cmd->add_option("--encode", gen.encode)->check(CLI::IsMember({"ascii", "raw"}))->capture_default_str();
  gen_cmd->add_option("--out", gen.out_path, "Output path, - for stdout")->required();

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Distances between the empirical measures of two inputs");
  compare_cmd->add_option("first", compare.first, "First input")->required();
  compare_cmd->add_option("second", compare.second, "Second input")->required();
  compare_cmd->add_option("--base", compare.base, "Alphabet size m")->required();
  compare_cmd->add_option("--n", compare.n, "Prefix length")->required();
  compare.decoder.attach(*compare_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*count_cmd) return cmd_count(count, out);
    if (*trace_cmd) return cmd_trace(trace, out);
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*compare_cmd) return cmd_compare(compare, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace symfreq::cli

#endif  // SYMFREQ_TOOLS_CLI_APP_HPP
