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

#ifndef SYMFREQ_ENGINE_HPP
#define SYMFREQ_ENGINE_HPP

// Checkpointed and parallel counting over SymbolStreams.
//
// Parallel runs split the stream into contiguous segments, count each one
// independently, and rebuild exact prefix counts from the running sum of
// segment totals. A checkpoint inside a segment is taken by the worker that
// owns the segment. Errors are resolved in stream order, so the outcome,
// including which error is reported, is the same for every parallelism and
// chunk size.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "symfreq/counter.hpp"
#include "symfreq/error.hpp"
#include "symfreq/measure.hpp"
#include "symfreq/stream.hpp"

namespace symfreq {

inline constexpr std::size_t kDefaultChunkSize = std::size_t{1} << 20;

struct RunOptions {
  unsigned parallelism = 1;
  std::size_t chunk_size = kDefaultChunkSize;  // decoded symbols per read
};

struct CheckpointSeries {
  Alphabet alphabet;
  CheckpointSchedule schedule;
  std::vector<CheckpointRecord> records;

  friend bool operator==(const CheckpointSeries&, const CheckpointSeries&) = default;
};

namespace detail {

inline void pump(SymbolStream& stream, StreamCounter& counter, std::optional<std::uint64_t> limit,
                 std::size_t chunk_size) {
  std::vector<SymbolCode> buffer(std::max<std::size_t>(chunk_size, 1));
  for (;;) {
    std::size_t want = buffer.size();
    if (limit) {
      if (counter.consumed() >= *limit) return;
      want = static_cast<std::size_t>(std::min<std::uint64_t>(want, *limit - counter.consumed()));
    }
    const std::size_t got = stream.read(std::span(buffer).first(want));
    if (got == 0) return;
    counter.feed(std::span<const SymbolCode>(buffer).first(got));
  }
}

inline Error unreachable(const CheckpointSchedule& schedule, std::uint64_t available) {
  const auto points = schedule.points();
  const auto it = std::upper_bound(points.begin(), points.end(), available);
  const std::uint64_t n = it == points.end() ? available + 1 : *it;
  return Error(Errc::insufficient_input,
               "stream ended after " + std::to_string(available) +
                   " symbols; checkpoint n=" + std::to_string(n) + " is unreachable",
               n);
}

// Runs task(i) for i in [0, count) on separate threads and returns each
// task's exception, if any, by index.
inline std::vector<std::exception_ptr> run_tasks(std::size_t count,
                                                 const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  const auto guarded = [&](std::size_t i) {
    try {
      task(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (count == 1) {
    guarded(0);
    return errors;
  }
  std::vector<std::jthread> threads;
  threads.reserve(count);
  for (std::size_t i = 0; i < count; ++i) threads.emplace_back(guarded, i);
  threads.clear();
  return errors;
}

inline std::vector<std::uint64_t> segment_bounds(std::uint64_t length, std::size_t segments) {
  std::vector<std::uint64_t> bounds(segments + 1);
  for (std::size_t k = 0; k <= segments; ++k) {
    bounds[k] = static_cast<std::uint64_t>(uint128(length) * k / segments);
  }
  return bounds;
}

// Points p with lo < p <= hi, shifted to be relative to lo.
inline CheckpointSchedule local_schedule(const CheckpointSchedule& schedule, std::uint64_t lo,
                                         std::uint64_t hi) {
  std::vector<std::uint64_t> local;
  for (auto p : schedule.points()) {
    if (p > lo && p <= hi) local.push_back(p - lo);
  }
  return CheckpointSchedule(std::move(local));
}

inline void append_shifted(std::vector<CheckpointRecord>& out, std::vector<CheckpointRecord> local,
                           std::uint64_t offset, const CountVector& base) {
  for (auto& rec : local) {
    CountVector counts = base + rec.counts;
    Measure measure = empirical_measure(counts);
    out.push_back({offset + rec.n, std::move(counts), std::move(measure)});
  }
}

inline CheckpointSeries run_sequential(SymbolStream& stream, const CheckpointSchedule& schedule,
                                       const RunOptions& options) {
  StreamCounter counter(stream.alphabet(), schedule);
  pump(stream, counter, schedule.last(), options.chunk_size);
  if (counter.consumed() < schedule.last()) throw unreachable(schedule, counter.consumed());
  return {stream.alphabet(), schedule, counter.take_records()};
}

// Symbol-addressed sources: segment offsets are prefix lengths, so every
// worker knows its checkpoints up front and one pass suffices.
inline CheckpointSeries run_symbol_segments(const SymbolStream& source,
                                            const CheckpointSchedule& schedule,
                                            const RunOptions& options) {
  const std::uint64_t total = schedule.last();
  const std::uint64_t span = std::min(source.extent().value_or(total), total);
  if (span == 0) throw unreachable(schedule, 0);
  const auto segments = static_cast<std::size_t>(std::min<std::uint64_t>(options.parallelism, span));
  const auto bounds = segment_bounds(span, segments);

  std::vector<std::optional<StreamCounter>> counters(segments);
  const auto errors = run_tasks(segments, [&](std::size_t k) {
    auto stream = source.slice(bounds[k], bounds[k + 1]);
    auto& counter = counters[k].emplace(source.alphabet(),
                                        local_schedule(schedule, bounds[k], bounds[k + 1]));
    pump(*stream, counter, bounds[k + 1] - bounds[k], options.chunk_size);
  });

  std::vector<CheckpointRecord> records;
  CountVector base(source.alphabet());
  for (std::size_t k = 0; k < segments; ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    auto& counter = *counters[k];
    if (counter.consumed() < bounds[k + 1] - bounds[k]) {
      throw unreachable(schedule, bounds[k] + counter.consumed());
    }
    append_shifted(records, counter.take_records(), bounds[k], base);
    base += counter.running();
  }
  if (span < total) throw unreachable(schedule, span);
  return {source.alphabet(), schedule, std::move(records)};
}

struct SegmentTally {
  std::optional<StreamCounter> counter;
  std::exception_ptr error;
};

// Counts each unit segment of `source` to its end (or first error).
inline std::vector<SegmentTally> tally_segments(const SymbolStream& source, std::uint64_t extent,
                                                const RunOptions& options) {
  const auto segments =
      static_cast<std::size_t>(std::min<std::uint64_t>(options.parallelism, std::max<std::uint64_t>(extent, 1)));
  const auto bounds = segment_bounds(extent, segments);
  std::vector<SegmentTally> tallies(segments);
  const auto errors = run_tasks(segments, [&](std::size_t k) {
    auto& counter = tallies[k].counter.emplace(source.alphabet());
    auto stream = source.slice(bounds[k], bounds[k + 1]);
    pump(*stream, counter, std::nullopt, options.chunk_size);
  });
  for (std::size_t k = 0; k < segments; ++k) tallies[k].error = errors[k];
  return tallies;
}

// Unit-addressed sources whose symbol positions are only known after
// decoding: one pass for segment totals, then owners replay their segment
// up to their last checkpoint.
inline CheckpointSeries run_unit_segments(const SymbolStream& source,
                                          const CheckpointSchedule& schedule,
                                          const RunOptions& options) {
  const std::uint64_t total = schedule.last();
  const auto extent = *source.extent();
  auto tallies = tally_segments(source, extent, options);
  const auto unit_bounds = segment_bounds(extent, tallies.size());

  // Symbol offset at which each segment starts, up to the last needed one.
  std::vector<std::uint64_t> starts;
  std::uint64_t available = 0;
  for (auto& t : tallies) {
    const std::uint64_t here = t.counter->consumed();
    if (t.error && available + here < total) std::rethrow_exception(t.error);
    starts.push_back(available);
    available += here;
    if (t.error || available >= total) break;
  }
  if (available < total) throw unreachable(schedule, available);

  const std::size_t used = starts.size();
  std::vector<std::optional<StreamCounter>> replays(used);
  const auto errors = run_tasks(used, [&](std::size_t k) {
    const std::uint64_t lo = starts[k];
    const std::uint64_t hi = lo + tallies[k].counter->consumed();
    auto local = local_schedule(schedule, lo, hi);
    if (local.empty()) return;
    const std::uint64_t limit = local.last();
    auto stream = source.slice(unit_bounds[k], unit_bounds[k + 1]);
    auto& counter = replays[k].emplace(source.alphabet(), std::move(local));
    pump(*stream, counter, limit, options.chunk_size);
  });

  std::vector<CheckpointRecord> records;
  CountVector base(source.alphabet());
  for (std::size_t k = 0; k < used; ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
    if (replays[k]) append_shifted(records, replays[k]->take_records(), starts[k], base);
    base += tallies[k].counter->running();
  }
  return {source.alphabet(), schedule, std::move(records)};
}

}  // namespace detail

/// Counts and empirical measures of `source` at every point of `schedule`.
///
/// Sliceable sources are always read from their origin; others are read
/// sequentially from their current position. The result depends only on the
/// stream content and the schedule. Throws Errc::insufficient_input naming
/// the first unreachable checkpoint when the stream is too short.
inline CheckpointSeries run_checkpointed(SymbolStream& source, const CheckpointSchedule& schedule,
                                         const RunOptions& options = {}) {
  if (options.parallelism == 0) {
    throw Error(Errc::invalid_argument, "parallelism must be at least 1");
  }
  if (schedule.empty()) return {source.alphabet(), schedule, {}};

  auto fresh = source.slice(0, std::nullopt);
  if (!fresh) return detail::run_sequential(source, schedule, options);
  if (options.parallelism == 1) return detail::run_sequential(*fresh, schedule, options);
  if (source.symbol_addressed()) return detail::run_symbol_segments(source, schedule, options);
  if (source.extent()) return detail::run_unit_segments(source, schedule, options);
  return detail::run_sequential(*fresh, schedule, options);
}

/// Counts over the first `limit` symbols, or the whole stream when no limit
/// is given. Unbounded sources require a limit.
inline CountVector count_stream(SymbolStream& source, std::optional<std::uint64_t> limit = std::nullopt,
                                const RunOptions& options = {}) {
  if (options.parallelism == 0) {
    throw Error(Errc::invalid_argument, "parallelism must be at least 1");
  }
  if (limit) {
    if (*limit == 0) return CountVector(source.alphabet());
    return run_checkpointed(source, CheckpointSchedule({*limit}), options).records.front().counts;
  }
  auto fresh = source.slice(0, std::nullopt);
  if (fresh && !source.extent()) {
    throw Error(Errc::invalid_argument, "counting an unbounded stream requires a limit");
  }
  if (!fresh || options.parallelism == 1) {
    StreamCounter counter(source.alphabet());
    detail::pump(fresh ? *fresh : source, counter, std::nullopt, options.chunk_size);
    return counter.running();
  }
  CountVector total(source.alphabet());
  for (auto& t : detail::tally_segments(source, *source.extent(), options)) {
    if (t.error) std::rethrow_exception(t.error);
    total += t.counter->running();
  }
  return total;
}

}  // namespace symfreq

#endif  // SYMFREQ_ENGINE_HPP
