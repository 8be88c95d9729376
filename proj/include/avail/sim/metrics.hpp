/*
 * Copyright (C) 2026 The avail Authors
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

#ifndef AVAIL__SIM__METRICS_HPP
#define AVAIL__SIM__METRICS_HPP

#include <avail/scheduler.hpp>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace avail::sim {

/// Instrumentation of one check or schedule call.
struct OpStats
{
  OpKind kind = OpKind::Check;
  /// Position among the calls of the same kind, from 0.
  std::size_t call_index = 0;
  Count visited = 0;
  Count worst = 0;

  /// visited / worst, or 0 when worst is 0.
  double ratio() const;
  Count non_visited() const { return worst - visited; }
};

/// Aggregates of one operation kind after dropping the first and last
/// `exclusion` calls. Ratio statistics skip calls with worst == 0.
struct OpSummary
{
  std::size_t calls = 0;
  std::size_t included = 0;
  std::size_t ratio_samples = 0;
  double mean_ratio = 0.0;
  double median_ratio = 0.0;
  double q1_ratio = 0.0;
  double q3_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_non_visited = 0.0;
};

const char* to_string(OpKind kind);

/// Calls of `kind` that survive the warm-up and cool-down exclusion.
std::vector<OpStats> included_calls(
  std::span<const OpStats> calls,
  OpKind kind,
  std::size_t exclusion);

OpSummary summarize(std::span<const OpStats> calls, OpKind kind, std::size_t exclusion);

/// Counts of non-visited entries of the included check calls. Bin k covers
/// [k * width, (k + 1) * width).
std::vector<std::size_t> non_visited_histogram(
  std::span<const OpStats> calls,
  std::size_t exclusion,
  Count bin_width);

/// Linear-interpolation quantile of sorted data, q in [0, 1].
double quantile(std::span<const double> sorted, double q);

} // namespace avail::sim

#endif // AVAIL__SIM__METRICS_HPP
