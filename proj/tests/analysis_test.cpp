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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "symfreq/analysis.hpp"
#include "symfreq/generators.hpp"

namespace sf = symfreq;
using sf::Alphabet;
using sf::CheckpointSchedule;
using sf::Errc;
using sf::Rational;
using sf::VerdictKind;
using Symbols = std::vector<sf::SymbolCode>;

namespace {

sf::ConvergenceReport report_for(sf::SymbolStream& s, std::vector<std::uint64_t> points,
                                 const sf::Measure& target) {
  return sf::build_report(sf::run_checkpointed(s, CheckpointSchedule(std::move(points))), target);
}

sf::ConvergenceReport report_uniform(sf::SymbolStream& s, std::vector<std::uint64_t> points) {
  return report_for(s, std::move(points), sf::measure_uniform(s.alphabet()));
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const sf::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::invalid_argument;
}

}  // namespace

TEST(BuildReport, AlternatingHasZeroDeviation) {
  auto alt = sf::gen_periodic(Alphabet(2), {0, 1});
  const auto r = report_uniform(alt, {2, 4, 8});
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.total_variation, Rational(0));
    EXPECT_EQ(row.sup_deviation, Rational(0));
    EXPECT_DOUBLE_EQ(row.entropy, 1.0);
  }
  EXPECT_EQ(r.summary.final_n, 8u);
  EXPECT_EQ(r.summary.argmax, 0u);
}

TEST(BuildReport, PointMassAgainstUniform) {
  auto zeros = sf::gen_periodic(Alphabet(2), {0});
  const auto r = report_uniform(zeros, {4});
  EXPECT_EQ(r.rows[0].total_variation, Rational(1, 2));
  EXPECT_EQ(r.rows[0].sup_deviation, Rational(1, 2));
  EXPECT_EQ(r.rows[0].entropy, 0.0);
  EXPECT_EQ(r.summary.final_sup_deviation, Rational(1, 2));
}

TEST(BuildReport, ChampernowneBinaryAtFifteen) {
  auto c = sf::gen_champernowne(Alphabet(2));
  const auto r = report_uniform(c, {15});
  EXPECT_EQ(r.rows[0].measure, sf::Measure(Alphabet(2), {5, 10}, 15));
  EXPECT_EQ(r.rows[0].sup_deviation, Rational(1, 6));
  EXPECT_EQ(r.summary.argmax, 1u);
}

TEST(BuildReport, NonUniformTarget) {
  const std::vector<Rational> target{Rational(1, 5), Rational(3, 10), Rational(1, 2)};
  const auto t = sf::Measure::from_components(Alphabet(3), target);
  auto g = sf::gen_periodic(Alphabet(3), {0, 1, 2});
  const auto r = report_for(g, {3}, t);
  // (1/3,1/3,1/3) vs (1/5,3/10,1/2): |diffs| = 2/15, 1/30, 1/6
  EXPECT_EQ(r.rows[0].sup_deviation, Rational(1, 6));
  EXPECT_EQ(r.rows[0].total_variation, Rational(1, 6));
}

TEST(BuildReport, Errors) {
  auto alt = sf::gen_periodic(Alphabet(2), {0, 1});
  const auto series = sf::run_checkpointed(alt, CheckpointSchedule({2}));
  EXPECT_EQ(code_of([&] { sf::build_report(series, sf::measure_uniform(Alphabet(3))); }),
            Errc::incompatible_measure);
  const sf::CheckpointSeries empty{Alphabet(2), CheckpointSchedule(), {}};
  EXPECT_EQ(code_of([&] { sf::build_report(empty, sf::measure_uniform(Alphabet(2))); }),
            Errc::empty_series);
}

TEST(BuildReport, MetricsMatchIndependentRecomputation) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t m = 2 + rng() % 9;
    const Alphabet a(m);
    const auto s = oracle::random_string(rng, 1 + rng() % 3000, m);
    std::vector<std::uint64_t> points;
    for (std::uint64_t n = 1 + rng() % 50; n <= s.size(); n += 1 + rng() % 400) points.push_back(n);
    if (points.empty()) points.push_back(s.size());
    sf::VectorStream vs(a, s);
    const auto r = report_uniform(vs, points);

    std::vector<oracle::BigRational> uniform(m, oracle::BigRational(1, m));
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const auto& row = r.rows[i];
      ASSERT_EQ(row.n, points[i]);
      std::vector<oracle::BigRational> p;
      oracle::BigRational sum = 0;
      for (auto c : oracle::naive_counts(s, row.n, m)) {
        p.emplace_back(c, row.n);
        sum += p.back();
      }
      ASSERT_EQ(sum, 1);
      for (std::size_t k = 0; k < m; ++k) ASSERT_EQ(oracle::parse(row.measure.component(k).str()), p[k]);
      ASSERT_EQ(oracle::parse(row.total_variation.str()), oracle::total_variation(p, uniform));
      ASSERT_EQ(oracle::parse(row.sup_deviation.str()), oracle::sup_deviation(p, uniform));
      if (i > 0) {
        ASSERT_LT(r.rows[i - 1].n, row.n);
      }
    }
  }
}

TEST(BuildReport, ArgmaxTiesGoToSmallestSymbol) {
  for (std::uint32_t m : {2u, 3u, 7u}) {
    Symbols pattern(m);
    for (std::uint32_t i = 0; i < m; ++i) pattern[i] = m - 1 - i;
    auto g = sf::gen_periodic(Alphabet(m), pattern);
    EXPECT_EQ(report_uniform(g, {m, 5 * m}).summary.argmax, 0u);
  }
  auto g = sf::gen_periodic(Alphabet(4), {3, 2, 2, 3, 0});
  EXPECT_EQ(report_uniform(g, {5}).summary.argmax, 2u);
}

TEST(Verdict, Alternating) {
  auto alt = sf::gen_periodic(Alphabet(2), {0, 1});
  const auto r = report_uniform(alt, {2, 4, 8, 16});
  for (const auto& eps : {Rational(1, 1'000'000), Rational(1, 100), Rational(1)}) {
    const auto v = sf::verdict_simple_normality(r, eps, 3);
    EXPECT_EQ(v.kind, VerdictKind::converged_within_epsilon);
    ASSERT_EQ(v.evidence.size(), 3u);
    EXPECT_EQ(v.evidence.front().n, 4u);
    EXPECT_EQ(v.evidence.back().n, 16u);
  }
  EXPECT_FALSE(sf::Verdict::kCaveat.empty());
  EXPECT_EQ(sf::to_string(VerdictKind::converged_within_epsilon), "converged-within-epsilon");
  EXPECT_EQ(sf::to_string(VerdictKind::not_converged), "not-converged");
}

TEST(Verdict, PointMass) {
  auto zeros = sf::gen_periodic(Alphabet(2), {0});
  const auto r = report_uniform(zeros, {1, 2, 3, 4});
  for (std::size_t w = 1; w <= 4; ++w) {
    EXPECT_EQ(sf::verdict_simple_normality(r, Rational(1, 10), w).kind, VerdictKind::not_converged);
  }
}

TEST(Verdict, BernoulliReferenceRun) {
  const std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
  auto g = sf::gen_bernoulli(Alphabet(2), half, 42);
  const auto r = report_uniform(g, {10, 100, 1000, 10'000, 100'000, 1'000'000});
  const auto v = sf::verdict_simple_normality(r, Rational(1, 100), 3);
  EXPECT_EQ(v.kind, VerdictKind::converged_within_epsilon);
  EXPECT_EQ(v.evidence.back().sup_deviation, Rational(297, 1'000'000));
}

TEST(Verdict, EvidenceIsMeasuredAgainstUniform) {
  // A report against a matching non-uniform target still judges uniformity.
  const std::vector<Rational> target{Rational(1, 3), Rational(2, 3)};
  auto g = sf::gen_periodic(Alphabet(2), {0, 1, 1});
  const auto r = report_for(g, {3, 6, 9}, sf::Measure::from_components(Alphabet(2), target));
  EXPECT_EQ(r.rows.back().sup_deviation, Rational(0));
  const auto v = sf::verdict_simple_normality(r, Rational(1, 10), 3);
  EXPECT_EQ(v.kind, VerdictKind::not_converged);
  EXPECT_EQ(v.evidence.back().sup_deviation, Rational(1, 6));
}

TEST(Verdict, MonotoneInEpsilon) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t m = 2 + rng() % 4;
    const Alphabet a(m);
    const auto s = oracle::random_string(rng, 500, m);
    sf::VectorStream vs(a, s);
    const auto r = report_uniform(vs, {50, 100, 200, 400, 500});
    std::vector<Rational> eps;
    for (int k = 1; k <= 40; ++k) eps.emplace_back(k, 80);
    bool converged = false;
    for (const auto& e : eps) {
      const bool now = sf::verdict_simple_normality(r, e, 3).kind == VerdictKind::converged_within_epsilon;
      ASSERT_TRUE(now || !converged) << "lost convergence at " << e;
      converged = now;
    }
  }
}

TEST(Verdict, Errors) {
  auto alt = sf::gen_periodic(Alphabet(2), {0, 1});
  const auto r = report_uniform(alt, {2, 4});
  EXPECT_EQ(code_of([&] { sf::verdict_simple_normality(r, Rational(1, 10), 3); }), Errc::insufficient_rows);
  EXPECT_EQ(code_of([&] { sf::verdict_simple_normality(r, Rational(0), 1); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { sf::verdict_simple_normality(r, Rational(-1, 2), 1); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { sf::verdict_simple_normality(r, Rational(1, 10), 0); }), Errc::invalid_argument);
}
