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

#include <avail/sim/metrics.hpp>

#include <avail/error.hpp>

#include <algorithm>
#include <cmath>

namespace avail::sim {

double OpStats::ratio() const
{
  if (worst <= 0)
    return 0.0;
  return static_cast<double>(visited) / static_cast<double>(worst);
}

const char* to_string(OpKind kind)
{
  switch (kind)
  {
    case OpKind::Check:
      return "check";
    case OpKind::Schedule:
      return "schedule";
  }
  return "unknown";
}

std::vector<OpStats> included_calls(
  std::span<const OpStats> calls,
  OpKind kind,
  std::size_t exclusion)
{
  std::vector<OpStats> of_kind;
  for (const auto& c : calls)
  {
    if (c.kind == kind)
      of_kind.push_back(c);
  }
  if (of_kind.size() <= 2 * exclusion)
    return {};
  return std::vector<OpStats>(
    of_kind.begin() + static_cast<std::ptrdiff_t>(exclusion),
    of_kind.end() - static_cast<std::ptrdiff_t>(exclusion));
}

double quantile(std::span<const double> sorted, double q)
{
  if (sorted.empty())
    return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

OpSummary summarize(std::span<const OpStats> calls, OpKind kind, std::size_t exclusion)
{
  OpSummary s;
  for (const auto& c : calls)
  {
    if (c.kind == kind)
      ++s.calls;
  }

  const auto included = included_calls(calls, kind, exclusion);
  s.included = included.size();

  std::vector<double> ratios;
  double non_visited = 0.0;
  for (const auto& c : included)
  {
    non_visited += static_cast<double>(c.non_visited());
    if (c.worst > 0)
      ratios.push_back(c.ratio());
  }
  if (!included.empty())
    s.mean_non_visited = non_visited / static_cast<double>(included.size());

  s.ratio_samples = ratios.size();
  if (ratios.empty())
    return s;

  // Summation in call order keeps the mean reproducible bit for bit.
  double sum = 0.0;
  for (const double r : ratios)
    sum += r;
  s.mean_ratio = sum / static_cast<double>(ratios.size());

  std::sort(ratios.begin(), ratios.end());
  s.min_ratio = ratios.front();
  s.max_ratio = ratios.back();
  s.q1_ratio = quantile(ratios, 0.25);
  s.median_ratio = quantile(ratios, 0.5);
  s.q3_ratio = quantile(ratios, 0.75);
  return s;
}

std::vector<std::size_t> non_visited_histogram(
  std::span<const OpStats> calls,
  std::size_t exclusion,
  Count bin_width)
{
  if (bin_width < 1)
    throw InvalidRequest("histogram bin width must be positive");

  std::vector<std::size_t> bins;
  for (const auto& c : included_calls(calls, OpKind::Check, exclusion))
  {
    const auto bin = static_cast<std::size_t>(c.non_visited() / bin_width);
    if (bin >= bins.size())
      bins.resize(bin + 1, 0);
    ++bins[bin];
  }
  return bins;
}

} // namespace avail::sim
