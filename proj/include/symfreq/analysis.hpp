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

#ifndef SYMFREQ_ANALYSIS_HPP
#define SYMFREQ_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "symfreq/engine.hpp"
#include "symfreq/error.hpp"
#include "symfreq/measure.hpp"
#include "symfreq/rational.hpp"

namespace symfreq {

struct ReportRow {
  std::uint64_t n;
  Measure measure;
  Rational total_variation;  // to the report target
  Rational sup_deviation;    // to the report target
  double entropy;            // base m

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ReportSummary {
  std::uint64_t final_n;
  Rational final_sup_deviation;
  SymbolCode argmax;  // most frequent symbol at final_n, lowest index on ties
};

struct ConvergenceReport {
  Alphabet alphabet;
  Measure target;
  std::vector<ReportRow> rows;
  ReportSummary summary;
};

inline ReportRow make_report_row(std::uint64_t n, const Measure& measure, const Measure& target) {
  return {n, measure, measure_distance(measure, target, Metric::total_variation),
          measure_distance(measure, target, Metric::sup_deviation), measure_entropy(measure)};
}

inline ConvergenceReport build_report(const CheckpointSeries& series, const Measure& target) {
  if (series.records.empty()) throw Error(Errc::empty_series, "checkpoint series is empty");
  if (!(series.alphabet == target.alphabet())) {
    throw Error(Errc::incompatible_measure,
                "series over base " + std::to_string(series.alphabet.size()) +
                    " but target over base " + std::to_string(target.alphabet().size()));
  }
  std::vector<ReportRow> rows;
  rows.reserve(series.records.size());
  for (const auto& rec : series.records) rows.push_back(make_report_row(rec.n, rec.measure, target));

  const auto& last = rows.back();
  const auto nums = last.measure.numerators();
  SymbolCode argmax = 0;
  for (std::size_t i = 1; i < nums.size(); ++i) {
    if (nums[i] > nums[argmax]) argmax = static_cast<SymbolCode>(i);
  }
  ReportSummary summary{last.n, last.sup_deviation, argmax};
  return {series.alphabet, target, std::move(rows), std::move(summary)};
}

enum class VerdictKind { converged_within_epsilon, not_converged };

constexpr std::string_view to_string(VerdictKind v) noexcept {
  return v == VerdictKind::converged_within_epsilon ? "converged-within-epsilon" : "not-converged";
}

/// Finite-prefix diagnostic for simple normality. It says only that the
/// last few checkpoints sit near the uniform measure; it proves nothing
/// about the limit.
struct Verdict {
  VerdictKind kind;
  Rational epsilon;
  std::size_t window;
  std::vector<ReportRow> evidence;  // the last `window` rows, deviations to uniform

  static constexpr std::string_view kCaveat =
      "finite-prefix heuristic over the last checkpoints; not a proof of any limit property";
};

inline Verdict verdict_simple_normality(const ConvergenceReport& report, const Rational& epsilon,
                                        std::size_t window = 3) {
  if (!(epsilon > Rational(0))) throw Error(Errc::invalid_argument, "epsilon must be positive");
  if (window == 0) throw Error(Errc::invalid_argument, "window must be at least 1");
  if (window > report.rows.size()) {
    throw Error(Errc::insufficient_rows, "window of " + std::to_string(window) +
                                             " exceeds the report's " +
                                             std::to_string(report.rows.size()) + " rows");
  }
  const Measure uniform = measure_uniform(report.alphabet);
  Verdict verdict{VerdictKind::converged_within_epsilon, epsilon, window, {}};
  for (std::size_t i = report.rows.size() - window; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    auto evidence = make_report_row(row.n, row.measure, uniform);
    if (evidence.sup_deviation > epsilon) verdict.kind = VerdictKind::not_converged;
    verdict.evidence.push_back(std::move(evidence));
  }
  return verdict;
}

}  // namespace symfreq

#endif  // SYMFREQ_ANALYSIS_HPP
