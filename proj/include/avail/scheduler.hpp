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

#ifndef AVAIL__SCHEDULER_HPP
#define AVAIL__SCHEDULER_HPP

#include <avail/profile.hpp>
#include <avail/ranges.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

namespace avail {

using JobId = std::int64_t;

/// Where and when a job runs. Written once, when the job is admitted.
struct Assignment
{
  TimeKey start = 0;
  TimeKey finish = 0;
  RangeSet ranges;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Best-effort request: runs as soon as enough resources are free.
struct Request
{
  JobId id = 0;
  Count n_res = 1;
  /// User-estimated runtime; the profile holds resources for this long.
  Duration duration = 1;
  TimeKey arrival = 0;
  /// Actual runtime from the trace, or 0 when unknown.
  Duration runtime = 0;
  std::optional<Assignment> assigned;
};

/// Advance reservation: needs resources over a fixed window.
struct Reservation
{
  JobId id = 0;
  Count n_res = 1;
  TimeKey start = 0;
  Duration duration = 1;
  TimeKey arrival = 0;
  std::optional<Assignment> assigned;
};

enum class RequestDecision
{
  Started,
  Queued,
  Rejected,
};

enum class ReservationDecision
{
  Accepted,
  Rejected,
};

struct ReservationOutcome
{
  ReservationDecision decision = ReservationDecision::Rejected;
  /// Alternative placements offered when the reservation was rejected.
  std::vector<TimeSlot> options;
};

enum class OpKind
{
  Check,
  Schedule,
};

/// Receives the scan statistics of every availability check and every
/// start-time search, in call order.
using OpRecorder = std::function<void(OpKind, const ScanStats&)>;

struct SchedulerConfig
{
  SelectionPolicy policy = SelectionPolicy::FirstFit;
  /// How far past a rejected reservation's start to look for options.
  Duration options_horizon = 7 * 24 * 3600;
  /// Accept completions before the allocated finish. Resources are still
  /// held in the profile until the allocated finish.
  bool early_completion = false;
};

struct SchedulerTallies
{
  std::int64_t started = 0;
  std::int64_t queued = 0;
  std::int64_t rejected_requests = 0;
  std::int64_t reservations_accepted = 0;
  std::int64_t reservations_rejected = 0;
  std::int64_t completed = 0;
};

//==============================================================================
/// Conservative backfilling over an availability profile. Each request gets
/// a start time and a set of resources when it arrives, and nothing admitted
/// later may move it: assignments are write-once.
class ConservativeScheduler
{
public:
  ConservativeScheduler(
    Count capacity,
    TimeKey start_clock = 0,
    SchedulerConfig config = {});

  TimeKey clock() const { return _clock; }

  /// Moves the clock forward. Throws InvalidRequest when t < clock().
  void advance_to(TimeKey t);

  /// Starts the request now if possible, otherwise queues it at the
  /// earliest feasible start. Requests larger than the machine are rejected.
  /// The request must arrive at the current clock.
  RequestDecision submit_request(Request& r);

  /// Treats the request as a reservation starting now.
  bool try_start(Request& r);

  /// Places the request at the earliest start found by the profile.
  void enqueue(Request& r);

  /// Admits the reservation or, failing that, returns scheduling options
  /// within the configured horizon that fit its size and duration. Throws
  /// StaleReservation when the reservation starts before the clock.
  ReservationOutcome submit_reservation(Reservation& r);

  bool admit_reservation(Reservation& r);

  /// Records the completion of a running job. Throws NotFound for unknown
  /// jobs and InvalidRequest when completed twice or at the wrong time.
  void complete(JobId id);

  /// Drops profile entries that lie entirely in the past.
  std::size_t prune();

  const Profile& profile() const { return _profile; }
  const SchedulerTallies& tallies() const { return _tallies; }
  const SchedulerConfig& config() const { return _config; }
  const std::map<JobId, Assignment>& assignments() const { return _assignments; }

  void set_recorder(OpRecorder recorder) { _recorder = std::move(recorder); }

private:
  Assignment place(JobId id, const TimeSlot& slot, Count n_res);
  void record(OpKind kind, const ScanStats& stats) const;

  Profile _profile;
  SchedulerConfig _config;
  TimeKey _clock;
  SchedulerTallies _tallies;
  std::map<JobId, Assignment> _assignments;
  std::unordered_set<JobId> _completed;
  OpRecorder _recorder;
};

} // namespace avail

#endif // AVAIL__SCHEDULER_HPP
