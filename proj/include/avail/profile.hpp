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

#ifndef AVAIL__PROFILE_HPP
#define AVAIL__PROFILE_HPP

#include <avail/ranges.hpp>
#include <avail/timemap.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace avail {

/// A time point together with the resources free from it until the next
/// entry of the profile (or forever, for the last entry).
struct ProfileEntry
{
  TimeKey time = 0;
  RangeSet ranges;

  Count n_res() const { return ranges.count(); }

  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

/// Resources continuously free over [start, finish).
struct TimeSlot
{
  TimeKey start = 0;
  TimeKey finish = 0;
  RangeSet ranges;

  Duration duration() const { return finish - start; }

  friend bool operator==(const TimeSlot&, const TimeSlot&) = default;
};

/// List work done by a single check or search call. `worst` is the number of
/// node examinations the call could have needed in the worst case.
struct ScanStats
{
  Count visited = 0;
  Count worst = 0;
  /// Entries walked before the first node with enough resources. Only the
  /// earliest-start search reports these; they are not part of `visited`.
  Count skipped = 0;
};

/// Outcome of an admission check or start-time search. A rejection is an
/// empty slot, not an error.
struct SearchResult
{
  std::optional<TimeSlot> slot;
  ScanStats stats;

  bool accepted() const { return slot.has_value(); }
};

using TimeMap = ThreadedRbMap<TimeKey, RangeSet>;

//==============================================================================
/// Availability profile: which resource IDs are free from each request start
/// or completion time onwards. Entries live in a threaded red-black tree so a
/// start time is located in O(log n) and the following entries are walked
/// through the list.
///
/// All windows are half-open: a request finishing at t never conflicts with
/// one starting at t.
class Profile
{
public:
  /// A profile with every resource in [0..capacity-1] free from `created` on.
  explicit Profile(Count capacity, TimeKey created = 0);

  /// A profile with no free resources, to be filled with add_time_slot().
  static Profile without_availability(Count capacity, TimeKey created = 0);

  /// Rebuilds a profile from free time slots: nothing is free except what
  /// the slots describe. The origin defaults to the earliest slot start.
  static Profile reconstruct(Count capacity, std::span<const TimeSlot> slots);
  static Profile reconstruct(
    Count capacity,
    std::span<const TimeSlot> slots,
    TimeKey origin);

  Count capacity() const { return _capacity; }
  TimeKey created() const { return _created; }
  std::size_t size() const { return _map.size(); }

  /// Can `n_res` resources be held over [start, start + duration)? On
  /// success the slot carries every ID free over the whole window. Throws
  /// ImpossibleRequest when n_res exceeds the capacity, InvalidDuration for
  /// a non-positive duration and InvalidRequest for a start before the
  /// profile origin.
  SearchResult check_availability(Count n_res, TimeKey start, Duration duration) const;

  /// Earliest start s >= earliest at which `n_res` resources stay free for
  /// `duration`. Candidates are `earliest` and the entry times after it.
  /// Returns an empty slot only when even the last entry lacks resources.
  SearchResult find_start_time(Count n_res, Duration duration, TimeKey earliest) const;

  /// Removes `selection` from every entry in [start, finish), inserting
  /// boundary entries where needed. Throws InconsistentAllocation, leaving
  /// the profile untouched, unless the selection is free over the window.
  void allocate(const RangeSet& selection, TimeKey start, TimeKey finish);

  /// Returns `ranges` to every entry in [start, finish).
  void add_time_slot(TimeKey start, TimeKey finish, const RangeSet& ranges);

  /// Partition of [qstart, qend) at entry boundaries; one slot per entry
  /// with free resources. Slots never overlap in time.
  std::vector<TimeSlot> free_time_slots(TimeKey qstart, TimeKey qend) const;

  /// Candidate placements inside [qstart, qend). From every entry starting
  /// the window, the running intersection of later entries is followed and
  /// a slot is emitted each time it is about to shrink. Slots may overlap.
  std::vector<TimeSlot> scheduling_options(
    TimeKey qstart,
    TimeKey qend,
    Duration min_duration) const;

  /// Drops entries before `before`, keeping the one in force at `before` as
  /// the new origin. Returns the number of entries removed.
  std::size_t prune(TimeKey before);

  /// Resources free at instant t; empty before the origin.
  RangeSet available_at(TimeKey t) const;

  std::vector<ProfileEntry> entries() const;

  const TimeMap& time_map() const { return _map; }

  /// One line per entry: "<time> <ranges>".
  void write_snapshot(std::ostream& os) const;
  static Profile read_snapshot(std::istream& is, Count capacity);

private:
  Profile(Count capacity, TimeKey created, RangeSet initial);

  void check_request(Count n_res, Duration duration) const;
  void check_within_capacity(const RangeSet& ranges) const;

  Count _capacity;
  TimeKey _created;
  TimeMap _map;
};

} // namespace avail

#endif // AVAIL__PROFILE_HPP
