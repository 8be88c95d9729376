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

#include <avail/partitioned.hpp>

#include <avail/detail/window_scan.hpp>
#include <avail/error.hpp>

#include <algorithm>
#include <ostream>

namespace avail {

PartitionedProfile::PartitionedProfile(
  Count capacity,
  std::vector<RangeSet> partitions,
  TimeKey created)
: _capacity(capacity),
  _owned(std::move(partitions))
{
  if (_owned.empty())
    throw InvalidPartition("a partitioned profile needs at least one partition");

  RangeSet covered;
  for (const auto& owned : _owned)
  {
    if (!intersect(covered, owned).empty())
      throw InvalidPartition("partitions overlap");
    covered = unite(covered, owned);
  }
  if (covered != RangeSet::full(capacity))
    throw InvalidPartition("partitions do not cover the capacity exactly");

  _map.insert(created, _owned);
}

const RangeSet& PartitionedProfile::owned(PartitionId p) const
{
  check_partition_id(p);
  return _owned[p];
}

void PartitionedProfile::check_partition_id(PartitionId p) const
{
  if (p >= _owned.size())
    throw InvalidPartition("unknown partition " + std::to_string(p));
}

void PartitionedProfile::check_request(Count n_res, Count limit, Duration duration) const
{
  if (n_res < 1)
    throw InvalidRequest("a request needs at least one resource");
  if (n_res > limit)
  {
    throw ImpossibleRequest(
      "request for " + std::to_string(n_res) + " resources exceeds the "
      + std::to_string(limit) + " available to the partition");
  }
  if (duration <= 0)
    throw InvalidDuration("duration must be positive");
}

SearchResult PartitionedProfile::check_partition(
  PartitionId p,
  Count n_res,
  TimeKey start,
  Duration duration) const
{
  check_partition_id(p);
  check_request(n_res, _owned[p].count(), duration);
  return detail::check_window(_map,
    [p](const std::vector<RangeSet>& e) -> const RangeSet& { return e[p]; },
    n_res, start, duration);
}

SearchResult PartitionedProfile::find_start_time_partition(
  PartitionId p,
  Count n_res,
  Duration duration,
  TimeKey earliest) const
{
  check_partition_id(p);
  check_request(n_res, _owned[p].count(), duration);
  return detail::find_start(_map,
    [p](const std::vector<RangeSet>& e) -> const RangeSet& { return e[p]; },
    n_res, duration, earliest);
}

void PartitionedProfile::allocate_partition(
  PartitionId p,
  const RangeSet& selection,
  TimeKey start,
  TimeKey finish)
{
  check_partition_id(p);
  if (!selection.is_subset_of(_owned[p]))
    throw InconsistentAllocation("selection contains IDs not owned by the partition");

  if (start >= finish)
    throw InconsistentAllocation("allocation window is empty");

  detail::for_each_in_window(_map, start, finish, [&](const std::vector<RangeSet>& e) {
    if (!selection.is_subset_of(e[p]))
      throw InconsistentAllocation("selection is not free over the window");
  });
  detail::update_window(_map, start, finish, [&](std::vector<RangeSet>& e) {
    e[p] = subtract(e[p], selection);
  });
}

SearchResult PartitionedProfile::check_borrowing(
  PartitionId p,
  std::span<const PartitionId> donors,
  Count n_res,
  TimeKey start,
  Duration duration) const
{
  check_partition_id(p);
  Count limit = _owned[p].count();
  for (const PartitionId d : donors)
  {
    check_partition_id(d);
    if (d == p)
      throw InvalidPartition("a partition cannot borrow from itself");
    limit += _owned[d].count();
  }
  check_request(n_res, limit, duration);

  return detail::check_window(_map,
    [&](const std::vector<RangeSet>& e) {
      RangeSet merged = e[p];
      for (const PartitionId d : donors)
        merged = unite(merged, e[d]);
      return merged;
    },
    n_res, start, duration);
}

std::vector<RangeSet> PartitionedProfile::split_by_owner(const RangeSet& ranges) const
{
  std::vector<RangeSet> pieces;
  pieces.reserve(_owned.size());
  for (const auto& owned : _owned)
    pieces.push_back(intersect(ranges, owned));
  return pieces;
}

void PartitionedProfile::allocate_borrowed(
  const RangeSet& selection,
  TimeKey start,
  TimeKey finish)
{
  if (start >= finish)
    throw InconsistentAllocation("allocation window is empty");
  if (!selection.empty() && selection.max_id() >= _capacity)
    throw InconsistentAllocation("selection exceeds capacity");

  const auto pieces = split_by_owner(selection);
  detail::for_each_in_window(_map, start, finish, [&](const std::vector<RangeSet>& e) {
    for (std::size_t p = 0; p < pieces.size(); ++p)
    {
      if (!pieces[p].is_subset_of(e[p]))
        throw InconsistentAllocation("selection is not free over the window");
    }
  });
  detail::update_window(_map, start, finish, [&](std::vector<RangeSet>& e) {
    for (std::size_t p = 0; p < pieces.size(); ++p)
      e[p] = subtract(e[p], pieces[p]);
  });
}

void PartitionedProfile::add_time_slot(
  TimeKey start,
  TimeKey finish,
  const RangeSet& ranges)
{
  if (start >= finish)
    throw InvalidSlot("time slot window is empty");
  if (!ranges.empty() && ranges.max_id() >= _capacity)
    throw InvalidSlot("ranges exceed capacity");

  const auto pieces = split_by_owner(ranges);
  detail::update_window(_map, start, finish, [&](std::vector<RangeSet>& e) {
    for (std::size_t p = 0; p < pieces.size(); ++p)
      e[p] = unite(e[p], pieces[p]);
  });
}

RangeSet PartitionedProfile::available_at(PartitionId p, TimeKey t) const
{
  check_partition_id(p);
  const auto h = _map.floor(t);
  if (!h)
    return RangeSet();
  return _map.value(*h)[p];
}

std::vector<PartitionedEntry> PartitionedProfile::entries() const
{
  std::vector<PartitionedEntry> out;
  out.reserve(_map.size());
  for (auto h = _map.first(); h; h = _map.next(*h))
    out.push_back({_map.key(*h), _map.value(*h)});
  return out;
}

void PartitionedProfile::write_snapshot(std::ostream& os) const
{
  for (auto h = _map.first(); h; h = _map.next(*h))
  {
    os << _map.key(*h);
    const auto& parts = _map.value(*h);
    for (std::size_t p = 0; p < parts.size(); ++p)
      os << " p" << p << ':' << to_string(parts[p]);
    os << '\n';
  }
}

} // namespace avail
