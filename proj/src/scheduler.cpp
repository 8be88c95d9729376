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

#include <avail/scheduler.hpp>

#include <avail/error.hpp>

#include <string>

namespace avail {

ConservativeScheduler::ConservativeScheduler(
  Count capacity,
  TimeKey start_clock,
  SchedulerConfig config)
: _profile(capacity, start_clock),
  _config(config),
  _clock(start_clock)
{
}

void ConservativeScheduler::advance_to(TimeKey t)
{
  if (t < _clock)
  {
    throw InvalidRequest(
      "clock cannot move backwards from " + std::to_string(_clock) + " to "
      + std::to_string(t));
  }
  _clock = t;
}

void ConservativeScheduler::record(OpKind kind, const ScanStats& stats) const
{
  if (_recorder)
    _recorder(kind, stats);
}

Assignment ConservativeScheduler::place(JobId id, const TimeSlot& slot, Count n_res)
{
  Assignment a{slot.start, slot.finish, select(slot.ranges, n_res, _config.policy)};
  if (_assignments.contains(id))
    throw InvalidRequest("job " + std::to_string(id) + " already has an assignment");
  _profile.allocate(a.ranges, a.start, a.finish);
  _assignments.emplace(id, a);
  return a;
}

RequestDecision ConservativeScheduler::submit_request(Request& r)
{
  if (r.arrival != _clock)
  {
    throw InvalidRequest(
      "request " + std::to_string(r.id) + " arrives at " + std::to_string(r.arrival)
      + " but the clock is " + std::to_string(_clock));
  }
  if (r.n_res < 1 || r.duration < 1 || r.n_res > _profile.capacity())
  {
    ++_tallies.rejected_requests;
    return RequestDecision::Rejected;
  }

  if (try_start(r))
  {
    ++_tallies.started;
    return RequestDecision::Started;
  }
  enqueue(r);
  ++_tallies.queued;
  return RequestDecision::Queued;
}

bool ConservativeScheduler::try_start(Request& r)
{
  const SearchResult found = _profile.check_availability(r.n_res, _clock, r.duration);
  record(OpKind::Check, found.stats);
  if (!found.accepted())
    return false;
  r.assigned = place(r.id, *found.slot, r.n_res);
  return true;
}

void ConservativeScheduler::enqueue(Request& r)
{
  const SearchResult found = _profile.find_start_time(r.n_res, r.duration, _clock);
  record(OpKind::Schedule, found.stats);
  if (!found.accepted())
  {
    // Allocations always end, so the last entry holds the whole machine.
    throw InconsistentAllocation(
      "no start time found for request " + std::to_string(r.id));
  }
  r.assigned = place(r.id, *found.slot, r.n_res);
}

ReservationOutcome ConservativeScheduler::submit_reservation(Reservation& r)
{
  if (r.start < _clock)
  {
    throw StaleReservation(
      "reservation " + std::to_string(r.id) + " starts at " + std::to_string(r.start)
      + ", before the clock " + std::to_string(_clock));
  }

  ReservationOutcome outcome;
  if (r.n_res < 1 || r.duration < 1 || r.n_res > _profile.capacity())
  {
    ++_tallies.reservations_rejected;
    return outcome;
  }

  if (admit_reservation(r))
  {
    ++_tallies.reservations_accepted;
    outcome.decision = ReservationDecision::Accepted;
    return outcome;
  }

  ++_tallies.reservations_rejected;
  for (auto& option : _profile.scheduling_options(
         r.start, r.start + _config.options_horizon, r.duration))
  {
    if (option.ranges.count() >= r.n_res)
      outcome.options.push_back(std::move(option));
  }
  return outcome;
}

bool ConservativeScheduler::admit_reservation(Reservation& r)
{
  const SearchResult found = _profile.check_availability(r.n_res, r.start, r.duration);
  record(OpKind::Check, found.stats);
  if (!found.accepted())
    return false;
  r.assigned = place(r.id, *found.slot, r.n_res);
  return true;
}

void ConservativeScheduler::complete(JobId id)
{
  const auto it = _assignments.find(id);
  if (it == _assignments.end())
    throw NotFound("job " + std::to_string(id) + " was never scheduled");
  if (_completed.contains(id))
    throw InvalidRequest("job " + std::to_string(id) + " already completed");

  const Assignment& a = it->second;
  const bool on_time = _config.early_completion
    ? (a.start <= _clock && _clock <= a.finish)
    : _clock == a.finish;
  if (!on_time)
  {
    throw InvalidRequest(
      "job " + std::to_string(id) + " cannot complete at " + std::to_string(_clock));
  }

  // The profile already released the resources at the finish entry.
  _completed.insert(id);
  ++_tallies.completed;
}

std::size_t ConservativeScheduler::prune()
{
  return _profile.prune(_clock);
}

} // namespace avail
