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

#ifndef SYMFREQ_COUNTER_HPP
#define SYMFREQ_COUNTER_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symfreq/alphabet.hpp"
#include "symfreq/count_vector.hpp"
#include "symfreq/error.hpp"
#include "symfreq/measure.hpp"

namespace symfreq {

/// Strictly increasing prefix lengths, all >= 1, at which to record counts.
class CheckpointSchedule {
 public:
  CheckpointSchedule() = default;

  explicit CheckpointSchedule(std::vector<std::uint64_t> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i] == 0) throw Error(Errc::invalid_schedule, "checkpoint 0 is not allowed");
      if (i > 0 && points_[i] <= points_[i - 1]) {
        throw Error(Errc::invalid_schedule, "checkpoints must be strictly increasing (" +
                                                std::to_string(points_[i - 1]) + " then " +
                                                std::to_string(points_[i]) + ")");
      }
    }
  }

  /// round(ratio^k) for k = 0, 1, 2, ... up to `limit`, duplicates dropped.
  /// Powers are formed by repeated IEEE multiplication and rounded half away
  /// from zero, so the schedule is identical on every conforming platform.
  static CheckpointSchedule geometric(double ratio, std::uint64_t limit) {
    if (!(ratio > 1.0) || !std::isfinite(ratio)) {
      throw Error(Errc::invalid_schedule, "geometric ratio must be a finite number above 1");
    }
    std::vector<std::uint64_t> points;
    for (double power = 1.0; power < 18446744073709549568.0; power *= ratio) {
      const auto p = static_cast<std::uint64_t>(std::round(power));
      if (p > limit) break;
      if (points.empty() || p > points.back()) points.push_back(p);
    }
    return CheckpointSchedule(std::move(points));
  }

  std::span<const std::uint64_t> points() const noexcept { return points_; }
  bool empty() const noexcept { return points_.empty(); }
  std::size_t size() const noexcept { return points_.size(); }
  std::uint64_t last() const { return points_.back(); }

  friend bool operator==(const CheckpointSchedule&, const CheckpointSchedule&) = default;

 private:
  std::vector<std::uint64_t> points_;
};

struct CheckpointRecord {
  std::uint64_t n;
  CountVector counts;
  Measure measure;

  friend bool operator==(const CheckpointRecord&, const CheckpointRecord&) = default;
};

/// Incremental counter over a stream, optionally recording checkpoints.
///
/// Feeding validates the whole chunk before touching any state, so a chunk
/// with an invalid symbol is rejected atomically. Checkpoints are taken at
/// exactly their prefix length, splitting a chunk where needed.
class StreamCounter {
 public:
  explicit StreamCounter(const Alphabet& alphabet) : running_(alphabet) {}

  StreamCounter(const Alphabet& alphabet, CheckpointSchedule schedule)
      : running_(alphabet), schedule_(std::move(schedule)) {
    records_.reserve(schedule_.size());
  }

  const Alphabet& alphabet() const noexcept { return running_.alphabet(); }
  const CountVector& running() const noexcept { return running_; }
  std::uint64_t consumed() const noexcept { return running_.n(); }
  const CheckpointSchedule& schedule() const noexcept { return schedule_; }
  std::span<const CheckpointRecord> records() const noexcept { return records_; }

  std::vector<CheckpointRecord> take_records() { return std::exchange(records_, {}); }

  void feed(std::span<const SymbolCode> chunk) {
    const std::size_t bad = detail::first_invalid(chunk, alphabet().size());
    if (bad != chunk.size()) {
      const std::uint64_t at = consumed() + bad;
      throw Error(Errc::invalid_symbol,
                  "symbol " + std::to_string(chunk[bad]) + " at offset " + std::to_string(at) +
                      " is outside the base-" + std::to_string(alphabet().size()) + " alphabet",
                  at);
    }
    detail::checked_sum(consumed(), chunk.size());

    const auto points = schedule_.points();
    while (!chunk.empty()) {
      if (next_ == points.size() || points[next_] > consumed() + chunk.size()) {
        running_.add(chunk);
        break;
      }
      const auto head = static_cast<std::size_t>(points[next_] - consumed());
      running_.add(chunk.first(head));
      chunk = chunk.subspan(head);
      records_.push_back({points[next_], running_, empirical_measure(running_)});
      ++next_;
    }
  }

 private:
  friend StreamCounter counter_merge(const StreamCounter&, const StreamCounter&);

  explicit StreamCounter(CountVector running) : running_(std::move(running)) {}

  CountVector running_;
  CheckpointSchedule schedule_;
  std::size_t next_ = 0;
  std::vector<CheckpointRecord> records_;
};

/// Counter for `left`'s segment immediately followed by `right`'s. Only the
/// counts combine; schedules and records stay with their inputs.
inline StreamCounter counter_merge(const StreamCounter& left, const StreamCounter& right) {
  return StreamCounter(left.running() + right.running());
}

}  // namespace symfreq

#endif  // SYMFREQ_COUNTER_HPP
