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

#include <avail/profile.hpp>

#include <avail/detail/window_scan.hpp>
#include <avail/error.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace avail {

namespace {

const RangeSet& identity(const RangeSet& r) { return r; }

} // namespace

Profile::Profile(Count capacity, TimeKey created)
: Profile(capacity, created, RangeSet::full(capacity))
{
}

Profile::Profile(Count capacity, TimeKey created, RangeSet initial)
: _capacity(capacity),
  _created(created)
{
  if (capacity < 0)
    throw InvalidRequest("negative capacity");
  _map.insert(created, std::move(initial));
}

Profile Profile::without_availability(Count capacity, TimeKey created)
{
  return Profile(capacity, created, RangeSet());
}

Profile Profile::reconstruct(Count capacity, std::span<const TimeSlot> slots)
{
  TimeKey origin = 0;
  if (!slots.empty())
  {
    origin = std::min_element(slots.begin(), slots.end(),
      [](const TimeSlot& a, const TimeSlot& b) { return a.start < b.start; })->start;
  }
  return reconstruct(capacity, slots, origin);
}

Profile Profile::reconstruct(
  Count capacity,
  std::span<const TimeSlot> slots,
  TimeKey origin)
{
  Profile profile = without_availability(capacity, origin);
  for (const auto& slot : slots)
    profile.add_time_slot(slot.start, slot.finish, slot.ranges);
  return profile;
}

void Profile::check_request(Count n_res, Duration duration) const
{
  if (n_res < 1)
    throw InvalidRequest("a request needs at least one resource");
  if (n_res > _capacity)
  {
    throw ImpossibleRequest(
      "request for " + std::to_string(n_res) + " resources exceeds capacity "
      + std::to_string(_capacity));
  }
  if (duration <= 0)
    throw InvalidDuration("duration must be positive");
}

void Profile::check_within_capacity(const RangeSet& ranges) const
{
  if (!ranges.empty() && (ranges.min_id() < 0 || ranges.max_id() >= _capacity))
  {
    throw InvalidSlot(
      "ranges " + to_string(ranges) + " exceed capacity " + std::to_string(_capacity));
  }
}

SearchResult Profile::check_availability(
  Count n_res,
  TimeKey start,
  Duration duration) const
{
  check_request(n_res, duration);
  return detail::check_window(_map, identity, n_res, start, duration);
}

SearchResult Profile::find_start_time(
  Count n_res,
  Duration duration,
  TimeKey earliest) const
{
  check_request(n_res, duration);
  return detail::find_start(_map, identity, n_res, duration, earliest);
}

void Profile::allocate(const RangeSet& selection, TimeKey start, TimeKey finish)
{
  if (start >= finish)
    throw InconsistentAllocation("allocation window is empty");
  if (start < _map.key(*_map.first()))
    throw InconsistentAllocation("allocation starts before the profile origin");
  check_within_capacity(selection);

  detail::for_each_in_window(_map, start, finish, [&](const RangeSet& free) {
    if (!selection.is_subset_of(free))
    {
      throw InconsistentAllocation(
        "selection " + to_string(selection) + " is not free over ["
        + std::to_string(start) + ", " + std::to_string(finish) + ")");
    }
  });

  detail::update_window(_map, start, finish, [&](RangeSet& free) {
    free = subtract(free, selection);
  });
}

void Profile::add_time_slot(TimeKey start, TimeKey finish, const RangeSet& ranges)
{
  if (start >= finish)
    throw InvalidSlot("time slot window is empty");
  if (start < _map.key(*_map.first()))
    throw InvalidSlot("time slot starts before the profile origin");
  check_within_capacity(ranges);

  detail::update_window(_map, start, finish, [&](RangeSet& free) {
    free = unite(free, ranges);
  });
}

std::vector<TimeSlot> Profile::free_time_slots(TimeKey qstart, TimeKey qend) const
{
  if (qstart >= qend)
    throw InvalidSlot("query window is empty");
  return detail::free_slots(_map, identity, qstart, qend);
}

std::vector<TimeSlot> Profile::scheduling_options(
  TimeKey qstart,
  TimeKey qend,
  Duration min_duration) const
{
  if (qstart >= qend)
    throw InvalidSlot("query window is empty");
  if (min_duration < 1)
    throw InvalidDuration("minimum duration must be positive");
  return detail::options(_map, identity, qstart, qend, min_duration);
}

std::size_t Profile::prune(TimeKey before)
{
  const std::size_t removed = detail::prune_before(_map, before);
  _created = _map.key(*_map.first());
  return removed;
}

RangeSet Profile::available_at(TimeKey t) const
{
  const auto h = _map.floor(t);
  if (!h)
    return RangeSet();
  return _map.value(*h);
}

std::vector<ProfileEntry> Profile::entries() const
{
  std::vector<ProfileEntry> out;
  out.reserve(_map.size());
  for (auto h = _map.first(); h; h = _map.next(*h))
    out.push_back({_map.key(*h), _map.value(*h)});
  return out;
}

void Profile::write_snapshot(std::ostream& os) const
{
  for (auto h = _map.first(); h; h = _map.next(*h))
    os << _map.key(*h) << ' ' << to_string(_map.value(*h)) << '\n';
}

Profile Profile::read_snapshot(std::istream& is, Count capacity)
{
  std::optional<Profile> profile;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line))
  {
    ++line_no;
    if (line.empty())
      continue;

    std::istringstream fields(line);
    TimeKey t = 0;
    std::string ranges_text;
    if (!(fields >> t))
      throw ParseError(line_no, "expected a time");
    fields >> ranges_text;

    RangeSet ranges;
    try
    {
      ranges = parse_range_set(ranges_text);
    }
    catch (const InvalidRange& e)
    {
      throw ParseError(line_no, e.what());
    }

    if (!ranges.empty() && ranges.max_id() >= capacity)
      throw ParseError(line_no, "ranges exceed capacity");

    if (!profile)
    {
      profile.emplace(Profile(capacity, t, std::move(ranges)));
      continue;
    }
    if (t <= profile->_map.key(*profile->_map.last()))
      throw ParseError(line_no, "entry times must be strictly increasing");
    profile->_map.insert(t, std::move(ranges));
  }

  if (!profile)
    throw ParseError(line_no, "snapshot has no entries");
  return std::move(*profile);
}

} // namespace avail
