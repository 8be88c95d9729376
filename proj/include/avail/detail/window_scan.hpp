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

#ifndef AVAIL__DETAIL__WINDOW_SCAN_HPP
#define AVAIL__DETAIL__WINDOW_SCAN_HPP

// Profile algorithms written against any time map whose payload can be
// projected to a RangeSet. The plain profile projects the identity; the
// partitioned profile projects one partition, or a union of partitions when
// borrowing.

#include <avail/error.hpp>
#include <avail/profile.hpp>
#include <avail/ranges.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace avail::detail {

template<typename Map, typename Proj>
SearchResult check_window(
  const Map& map,
  Proj&& proj,
  Count n_res,
  TimeKey start,
  Duration duration)
{
  SearchResult result;
  const auto anchor = map.floor(start);
  if (!anchor)
    throw InvalidRequest("start time precedes the profile origin");

  const TimeKey finish = start + duration;

  // The worst case examines the anchor and every entry inside the window.
  result.stats.worst = 1;
  for (auto h = map.next(*anchor); h && map.key(*h) < finish; h = map.next(*h))
    ++result.stats.worst;

  result.stats.visited = 1;
  RangeSet running = proj(map.value(*anchor));
  if (running.count() < n_res)
    return result;

  for (auto h = map.next(*anchor); h && map.key(*h) < finish; h = map.next(*h))
  {
    ++result.stats.visited;
    decltype(auto) ranges = proj(map.value(*h));
    if (ranges.count() < n_res)
      return result;
    running = intersect(running, ranges);
    if (running.count() < n_res)
      return result;
  }

  result.slot = TimeSlot{start, finish, std::move(running)};
  return result;
}

template<typename Map, typename Proj>
SearchResult find_start(
  const Map& map,
  Proj&& proj,
  Count n_res,
  Duration duration,
  TimeKey earliest)
{
  SearchResult result;
  const auto from = map.floor(earliest);
  if (!from)
    throw InvalidRequest("earliest start precedes the profile origin");

  std::optional<typename Map::Handle> first_potential;
  for (auto anchor = from; anchor; anchor = map.next(*anchor))
  {
    decltype(auto) anchor_ranges = proj(map.value(*anchor));
    if (!first_potential)
    {
      if (anchor_ranges.count() < n_res)
      {
        ++result.stats.skipped;
        continue;
      }
      first_potential = anchor;
    }

    ++result.stats.visited;
    if (anchor_ranges.count() < n_res)
      continue;

    const TimeKey potential_start = std::max(map.key(*anchor), earliest);
    const TimeKey potential_finish = potential_start + duration;
    RangeSet running = anchor_ranges;
    bool enough = true;
    for (auto h = map.next(*anchor); h; h = map.next(*h))
    {
      if (map.key(*h) >= potential_finish)
        break;
      ++result.stats.visited;
      decltype(auto) ranges = proj(map.value(*h));
      if (ranges.count() < n_res)
      {
        enough = false;
        break;
      }
      running = intersect(running, ranges);
      if (running.count() < n_res)
      {
        enough = false;
        break;
      }
    }

    if (enough)
    {
      result.slot = TimeSlot{potential_start, potential_finish, std::move(running)};
      break;
    }
  }

  if (first_potential)
  {
    Count m = 0;
    for (auto h = first_potential; h; h = map.next(*h))
      ++m;
    result.stats.worst = m * m;
  }
  return result;
}

/// Makes sure an entry exists at t, cloning the payload in force at t.
template<typename Map>
void ensure_boundary(Map& map, TimeKey t)
{
  if (map.find(t))
    return;
  const auto floor = map.floor(t);
  if (!floor)
    throw InvalidSlot("time precedes the profile origin");
  auto copy = map.value(*floor);
  map.insert(t, std::move(copy));
}

/// Calls fn(payload) for every entry in force during [start, finish), the
/// floor entry of `start` included.
template<typename Map, typename Fn>
void for_each_in_window(const Map& map, TimeKey start, TimeKey finish, Fn&& fn)
{
  auto h = map.floor(start);
  if (!h)
    throw InvalidSlot("time precedes the profile origin");
  for (; h && map.key(*h) < finish; h = map.next(*h))
    fn(map.value(*h));
}

/// Applies fn(payload&) to every entry in [start, finish) after inserting
/// boundary entries at both ends. The finish boundary is created first so it
/// clones the availability in force before the update.
template<typename Map, typename Fn>
void update_window(Map& map, TimeKey start, TimeKey finish, Fn&& fn)
{
  ensure_boundary(map, finish);
  ensure_boundary(map, start);
  for (auto h = map.find(start); h && map.key(*h) < finish; h = map.next(*h))
    fn(map.value(*h));
}

template<typename Map, typename Proj>
std::vector<TimeSlot> free_slots(const Map& map, Proj&& proj, TimeKey qstart, TimeKey qend)
{
  std::vector<TimeSlot> out;
  auto h = map.floor(qstart);
  if (!h)
    h = map.first();
  for (; h && map.key(*h) < qend; h = map.next(*h))
  {
    const auto next = map.next(*h);
    const TimeKey start = std::max(map.key(*h), qstart);
    const TimeKey finish = next ? std::min(map.key(*next), qend) : qend;
    decltype(auto) ranges = proj(map.value(*h));
    if (start < finish && !ranges.empty())
      out.push_back(TimeSlot{start, finish, ranges});
  }
  return out;
}

template<typename Map, typename Proj>
std::vector<TimeSlot> options(
  const Map& map,
  Proj&& proj,
  TimeKey qstart,
  TimeKey qend,
  Duration min_duration)
{
  std::vector<TimeSlot> out;
  auto anchor = map.floor(qstart);
  if (!anchor)
    anchor = map.first();

  for (; anchor && map.key(*anchor) < qend; anchor = map.next(*anchor))
  {
    const TimeKey start = std::max(map.key(*anchor), qstart);
    RangeSet running = proj(map.value(*anchor));
    if (running.empty())
      continue;

    auto emit = [&](TimeKey finish) {
      if (finish - start >= min_duration)
        out.push_back(TimeSlot{start, finish, running});
    };

    for (auto h = map.next(*anchor);; h = map.next(*h))
    {
      if (!h || map.key(*h) >= qend)
      {
        emit(qend);
        break;
      }
      RangeSet narrowed = intersect(running, proj(map.value(*h)));
      if (narrowed.count() < running.count())
      {
        emit(map.key(*h));
        if (narrowed.empty())
          break;
        running = std::move(narrowed);
      }
    }
  }
  return out;
}

template<typename Map>
std::size_t prune_before(Map& map, TimeKey before)
{
  const auto keep = map.floor(before);
  if (!keep)
    return 0;
  const TimeKey keep_time = map.key(*keep);
  std::size_t removed = 0;
  for (auto h = map.first(); h && map.key(*h) < keep_time; h = map.first())
  {
    const TimeKey t = map.key(*h);
    map.remove(t);
    ++removed;
  }
  return removed;
}

} // namespace avail::detail

#endif // AVAIL__DETAIL__WINDOW_SCAN_HPP
