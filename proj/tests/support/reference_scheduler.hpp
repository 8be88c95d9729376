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

#ifndef AVAIL_TESTS__SUPPORT__REFERENCE_SCHEDULER_HPP
#define AVAIL_TESTS__SUPPORT__REFERENCE_SCHEDULER_HPP

// Tick-by-tick conservative backfilling over bit masks. Start times are
// found by trying every integer start in turn.

#include <support/oracle.hpp>

#include <cstdint>
#include <optional>

namespace oracle {

struct Placement
{
  std::int64_t start = 0;
  Mask ids = 0;
};

class ReferenceScheduler
{
public:
  ReferenceScheduler(std::int64_t capacity, std::int64_t origin)
  : _capacity(capacity),
    _grid(origin, full_mask(capacity))
  {
  }

  /// nullopt when rejected outright.
  std::optional<Placement> request(std::int64_t n, std::int64_t d, std::int64_t clock)
  {
    if (n < 1 || d < 1 || n > _capacity)
      return std::nullopt;
    // Every allocation ends, so a start past the last stored tick succeeds.
    for (auto s = clock;; ++s)
    {
      const Mask w = _grid.window(s, s + d);
      if (count(w) >= n)
        return take(s, d, w, n);
    }
  }

  std::optional<Placement> reserve(std::int64_t n, std::int64_t start, std::int64_t d)
  {
    if (n < 1 || d < 1 || n > _capacity)
      return std::nullopt;
    const Mask w = _grid.window(start, start + d);
    if (count(w) < n)
      return std::nullopt;
    return take(start, d, w, n);
  }

  /// Whether some d-long window inside [from, until) has n free IDs.
  bool has_option(std::int64_t n, std::int64_t d, std::int64_t from, std::int64_t until) const
  {
    if (n > _capacity)
      return false;
    for (auto s = from; s + d <= until; ++s)
    {
      if (count(_grid.window(s, s + d)) >= n)
        return true;
    }
    return false;
  }

  const TickGrid& grid() const { return _grid; }

private:
  Placement take(std::int64_t s, std::int64_t d, Mask window, std::int64_t n)
  {
    const Mask ids = lowest(window, static_cast<int>(n));
    _grid.take(ids, s, s + d);
    return {s, ids};
  }

  std::int64_t _capacity;
  TickGrid _grid;
};

} // namespace oracle

#endif // AVAIL_TESTS__SUPPORT__REFERENCE_SCHEDULER_HPP
