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

#ifndef AVAIL__PARTITIONED_HPP
#define AVAIL__PARTITIONED_HPP

#include <avail/profile.hpp>
#include <avail/ranges.hpp>
#include <avail/timemap.hpp>

#include <iosfwd>
#include <span>
#include <vector>

namespace avail {

using PartitionId = std::size_t;

struct PartitionedEntry
{
  TimeKey time = 0;
  std::vector<RangeSet> per_partition;
};

//==============================================================================
/// Availability profile whose entries keep one free-range set per resource
/// partition. Every resource ID is owned by exactly one partition for the
/// life of the profile; borrowing lets a partition consume IDs owned by
/// others, but allocations and releases always land on the owner's set.
class PartitionedProfile
{
public:
  /// `partitions[i]` holds the IDs owned by partition i. The sets must be
  /// pairwise disjoint and together cover [0..capacity-1].
  PartitionedProfile(Count capacity, std::vector<RangeSet> partitions, TimeKey created = 0);

  Count capacity() const { return _capacity; }
  std::size_t partition_count() const { return _owned.size(); }
  const RangeSet& owned(PartitionId p) const;
  std::size_t size() const { return _map.size(); }

  SearchResult check_partition(
    PartitionId p,
    Count n_res,
    TimeKey start,
    Duration duration) const;

  SearchResult find_start_time_partition(
    PartitionId p,
    Count n_res,
    Duration duration,
    TimeKey earliest) const;

  void allocate_partition(
    PartitionId p,
    const RangeSet& selection,
    TimeKey start,
    TimeKey finish);

  /// Checks `p` together with the free IDs of `donors`, evaluated over the
  /// per-instant union of their sets. The slot's ranges may span partitions.
  SearchResult check_borrowing(
    PartitionId p,
    std::span<const PartitionId> donors,
    Count n_res,
    TimeKey start,
    Duration duration) const;

  /// Allocates a selection that may span several partitions, removing each
  /// ID from the partition that owns it. All-or-nothing.
  void allocate_borrowed(const RangeSet& selection, TimeKey start, TimeKey finish);

  /// Returns IDs to their owning partitions over [start, finish).
  void add_time_slot(TimeKey start, TimeKey finish, const RangeSet& ranges);

  RangeSet available_at(PartitionId p, TimeKey t) const;

  std::vector<PartitionedEntry> entries() const;

  /// One line per entry: "<time> p0:<ranges> p1:<ranges> ...".
  void write_snapshot(std::ostream& os) const;

private:
  using Map = ThreadedRbMap<TimeKey, std::vector<RangeSet>>;

  void check_partition_id(PartitionId p) const;
  void check_request(Count n_res, Count limit, Duration duration) const;
  std::vector<RangeSet> split_by_owner(const RangeSet& ranges) const;

  Count _capacity;
  std::vector<RangeSet> _owned;
  Map _map;
};

} // namespace avail

#endif // AVAIL__PARTITIONED_HPP
