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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "symfreq/measure.hpp"

namespace sf = symfreq;
using sf::Alphabet;
using sf::CountVector;
using sf::Errc;
using sf::Measure;
using sf::Metric;
using sf::Rational;

namespace {

template <class F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const sf::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::invalid_argument;
}

std::vector<std::uint64_t> counts_of(const CountVector& c) { return {c.counts().begin(), c.counts().end()}; }

Measure random_measure(std::mt19937_64& rng, const Alphabet& a) {
  std::uniform_int_distribution<std::uint64_t> w(0, 50);
  std::vector<std::uint64_t> nums(a.size());
  std::uint64_t total = 0;
  for (auto& v : nums) total += v = w(rng);
  if (total == 0) {
    nums[0] = 1;
    total = 1;
  }
  return Measure(a, nums, total);
}

std::vector<oracle::BigRational> big_components(const Measure& p) {
  std::vector<oracle::BigRational> out;
  for (auto v : p.numerators()) out.emplace_back(v, p.denominator());
  return out;
}

}  // namespace

TEST(Alphabet, SizeBounds) {
  EXPECT_EQ(sf::alphabet_new(2).size(), 2u);
  EXPECT_EQ(sf::alphabet_new(10).size(), 10u);
  EXPECT_TRUE(sf::alphabet_new(10).contains(9));
  EXPECT_FALSE(sf::alphabet_new(10).contains(10));
  EXPECT_EQ(error_code([] { sf::alphabet_new(1); }), Errc::invalid_alphabet);
  EXPECT_EQ(error_code([] { sf::alphabet_new(0); }), Errc::invalid_alphabet);
  EXPECT_EQ(error_code([] { sf::alphabet_new(-5); }), Errc::invalid_alphabet);
  EXPECT_EQ(error_code([] { Alphabet(3).symbol(3); }), Errc::invalid_symbol);
}

TEST(CountPrefix, Examples) {
  EXPECT_EQ(counts_of(sf::count_prefix(Alphabet(2), std::vector<sf::SymbolCode>{0, 1, 1, 0}, 4)),
            (std::vector<std::uint64_t>{2, 2}));
  const auto c = sf::count_prefix(Alphabet(3), std::vector<sf::SymbolCode>{0, 1, 2, 0}, 3);
  EXPECT_EQ(counts_of(c), (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_EQ(c.n(), 3u);
  const auto empty = sf::count_prefix(Alphabet(2), std::vector<sf::SymbolCode>{1, 1}, 0);
  EXPECT_EQ(counts_of(empty), (std::vector<std::uint64_t>{0, 0}));
  EXPECT_EQ(empty.n(), 0u);
}

TEST(CountPrefix, Errors) {
  const std::vector<sf::SymbolCode> s{0, 1};
  EXPECT_EQ(error_code([&] { sf::count_prefix(Alphabet(2), s, 3); }), Errc::prefix_out_of_range);
  const std::vector<sf::SymbolCode> bad{0, 1, 2};
  try {
    sf::count_prefix(Alphabet(2), bad, 2);
    FAIL();
  } catch (const sf::Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_symbol);
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(SymbolFrequency, Examples) {
  const Alphabet b2(2), b3(3);
  EXPECT_EQ(sf::symbol_frequency(CountVector(b2, {2, 2}), b2.symbol(1)), Rational(1, 2));
  EXPECT_EQ(sf::symbol_frequency(CountVector(b3, {1, 1, 1}), b3.symbol(2)), Rational(1, 3));
  EXPECT_EQ(error_code([&] { sf::symbol_frequency(CountVector(b2), b2.symbol(0)); }),
            Errc::undefined_frequency);
}

TEST(EmpiricalMeasure, Examples) {
  const Alphabet b2(2), b3(3);
  EXPECT_EQ(sf::empirical_measure(CountVector(b3, {2, 1, 1})).components(),
            (std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 4)}));
  EXPECT_EQ(sf::empirical_measure(CountVector(b2, {4, 0})).components(),
            (std::vector<Rational>{Rational(1), Rational(0)}));
  EXPECT_EQ(sf::empirical_measure(CountVector(b2, {10, 5})).components(),
            (std::vector<Rational>{Rational(2, 3), Rational(1, 3)}));
  EXPECT_EQ(error_code([&] { sf::empirical_measure(CountVector(b2)); }), Errc::undefined_frequency);
}

TEST(EmpiricalMeasure, KeepsRawCountsAsRepresentation) {
  const auto m = sf::empirical_measure(CountVector(Alphabet(2), {6, 4}));
  EXPECT_EQ(m.denominator(), 10u);
  EXPECT_EQ(m.numerators()[0], 6u);
  EXPECT_EQ(m, Measure(Alphabet(2), {3, 2}, 5));
}

TEST(Measure, RejectsPointsOutsideSimplex) {
  const Alphabet b2(2);
  EXPECT_EQ(error_code([&] { Measure(b2, {1, 1}, 3); }), Errc::invalid_measure);
  EXPECT_EQ(error_code([&] { Measure(b2, {0, 0}, 0); }), Errc::invalid_measure);
  EXPECT_EQ(error_code([&] { Measure(b2, {1}, 1); }), Errc::invalid_measure);
  const std::vector<Rational> negative{Rational(3, 2), Rational(-1, 2)};
  EXPECT_EQ(error_code([&] { Measure::from_components(b2, negative); }), Errc::invalid_measure);
  const std::vector<Rational> short_sum{Rational(1, 3), Rational(1, 3)};
  EXPECT_EQ(error_code([&] { Measure::from_components(b2, short_sum); }), Errc::invalid_measure);
  const std::vector<Rational> fifths{Rational(1, 5), Rational(3, 10), Rational(1, 2)};
  const auto m = Measure::from_components(Alphabet(3), fifths);
  EXPECT_EQ(m.denominator(), 10u);
  EXPECT_EQ(m.components(), fifths);
}

TEST(MeasureUniform, Examples) {
  EXPECT_EQ(sf::measure_uniform(Alphabet(2)).components(),
            (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  for (auto c : sf::measure_uniform(Alphabet(4)).components()) EXPECT_EQ(c, Rational(1, 4));
  const auto three = sf::measure_uniform(Alphabet(3)).components();
  EXPECT_EQ(std::accumulate(three.begin(), three.end(), Rational(0)), Rational(1));
}

TEST(MeasureDistance, Examples) {
  const Alphabet b2(2);
  const Measure p(b2, {1, 0}, 1), q(b2, {0, 1}, 1);
  EXPECT_EQ(sf::measure_distance(p, q, Metric::total_variation), Rational(1));
  EXPECT_EQ(sf::measure_distance(p, p, Metric::total_variation), Rational(0));
  EXPECT_EQ(sf::measure_distance(p, p, Metric::sup_deviation), Rational(0));
  const Measure twothirds(b2, {2, 1}, 3);
  EXPECT_EQ(sf::measure_distance(twothirds, sf::measure_uniform(b2), Metric::sup_deviation),
            Rational(1, 6));
  EXPECT_EQ(error_code([&] {
              sf::measure_distance(p, sf::measure_uniform(Alphabet(3)), Metric::total_variation);
            }),
            Errc::incompatible_measure);
}

TEST(MeasureEntropy, Examples) {
  const Alphabet b2(2);
  EXPECT_DOUBLE_EQ(sf::measure_entropy(Measure(b2, {1, 1}, 2), 2), 1.0);
  EXPECT_EQ(sf::measure_entropy(Measure(b2, {1, 0}, 1), 2), 0.0);
  const double expected = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  EXPECT_NEAR(sf::measure_entropy(Measure(b2, {1, 3}, 4), 2), expected, 1e-12);
  // Default base is m, so the uniform point reads 1 for any alphabet.
  for (std::uint64_t m : {2, 3, 7, 10, 16}) {
    EXPECT_NEAR(sf::measure_entropy(sf::measure_uniform(Alphabet(m))), 1.0, 1e-15);
    EXPECT_LE(sf::measure_entropy(sf::measure_uniform(Alphabet(m))), 1.0);
  }
  EXPECT_THROW(sf::measure_entropy(Measure(b2, {1, 1}, 2), 1), sf::Error);
}

// ---- properties over random strings -------------------------------------

TEST(CoreProperties, CountsSumToNAndFrequenciesSumToOne) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = std::uniform_int_distribution<std::uint32_t>(2, 16)(rng);
    const Alphabet a(m);
    const auto s = oracle::random_string(rng, std::uniform_int_distribution<std::size_t>(0, 300)(rng), m);
    for (std::size_t n = 0; n <= s.size(); ++n) {
      const auto c = sf::count_prefix(a, s, n);
      ASSERT_EQ(counts_of(c), oracle::naive_counts(s, n, m));
      ASSERT_EQ(std::accumulate(c.counts().begin(), c.counts().end(), std::uint64_t{0}), n);
      if (n == 0) continue;
      Rational total;
      for (std::uint32_t i = 0; i < m; ++i) {
        const Rational f = sf::symbol_frequency(c, a.symbol(i));
        ASSERT_GE(f, Rational(0));
        ASSERT_LE(f, Rational(1));
        total += f;
      }
      ASSERT_EQ(total, Rational(1));
    }
  }
}

TEST(CoreProperties, IncrementalRecurrenceAndMonotonicity) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = std::uniform_int_distribution<std::uint32_t>(2, 12)(rng);
    const Alphabet a(m);
    const auto s = oracle::random_string(rng, 500, m);
    CountVector running(a);
    for (std::size_t n = 0; n < s.size(); ++n) {
      const auto before = counts_of(running);
      running.add(std::span(s).subspan(n, 1));
      for (std::uint32_t i = 0; i < m; ++i) {
        ASSERT_EQ(running.counts()[i], before[i] + (s[n] == i ? 1 : 0));
        ASSERT_GE(running.counts()[i], before[i]);
      }
      ASSERT_EQ(running, sf::count_prefix(a, s, n + 1));
    }
  }
}

TEST(CoreProperties, PermutationEquivariance) {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = std::uniform_int_distribution<std::uint32_t>(2, 16)(rng);
    const Alphabet a(m);
    std::vector<sf::SymbolCode> sigma(m);
    std::iota(sigma.begin(), sigma.end(), 0u);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    auto s = oracle::random_string(rng, 1 + rng() % 400, m);
    auto relabeled = s;
    for (auto& v : relabeled) v = sigma[v];
    const auto p = sf::empirical_measure(sf::count_prefix(a, s, s.size()));
    const auto q = sf::empirical_measure(sf::count_prefix(a, relabeled, relabeled.size()));
    for (std::uint32_t i = 0; i < m; ++i) {
      ASSERT_EQ(q.numerators()[sigma[i]], p.numerators()[i]);
      ASSERT_EQ(q.component(sigma[i]), p.component(i));
    }
  }
}

TEST(CoreProperties, ConcatenationAdditivity) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = std::uniform_int_distribution<std::uint32_t>(2, 16)(rng);
    const Alphabet a(m);
    const auto u = oracle::random_string(rng, rng() % 200, m);
    const auto v = oracle::random_string(rng, rng() % 200, m);
    auto uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    EXPECT_EQ(sf::count_prefix(a, uv, uv.size()),
              sf::count_prefix(a, u, u.size()) + sf::count_prefix(a, v, v.size()));
  }
}

TEST(CoreProperties, DistanceIsAMetricAndMatchesOracle) {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 500; ++trial) {
    const Alphabet a(std::uniform_int_distribution<std::uint32_t>(2, 8)(rng));
    const Measure p = random_measure(rng, a), q = random_measure(rng, a), r = random_measure(rng, a);
    for (Metric metric : {Metric::total_variation, Metric::sup_deviation}) {
      const Rational pq = sf::measure_distance(p, q, metric);
      ASSERT_EQ(pq, sf::measure_distance(q, p, metric));
      ASSERT_EQ(pq.is_zero(), p == q);
      ASSERT_TRUE(sf::measure_distance(p, p, metric).is_zero());
      ASSERT_LE(sf::measure_distance(p, r, metric), pq + sf::measure_distance(q, r, metric));
      const auto expected = metric == Metric::total_variation
                                ? oracle::total_variation(big_components(p), big_components(q))
                                : oracle::sup_deviation(big_components(p), big_components(q));
      ASSERT_EQ(pq.str(), oracle::str(expected));
    }
  }
}

TEST(CountVector, OverflowIsChecked) {
  const Alphabet a(2);
  CountVector big(a, {std::numeric_limits<std::uint64_t>::max(), 0});
  const std::vector<sf::SymbolCode> one{1};
  EXPECT_EQ(error_code([&] { big.add(one); }), Errc::overflow);
  EXPECT_EQ(big.n(), std::numeric_limits<std::uint64_t>::max());
  EXPECT_EQ(error_code([&] { CountVector(a, {std::numeric_limits<std::uint64_t>::max(), 1}); }),
            Errc::overflow);
}
