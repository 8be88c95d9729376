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

#ifndef AVAIL__SIM__SIMULATOR_HPP
#define AVAIL__SIM__SIMULATOR_HPP

#include <avail/scheduler.hpp>
#include <avail/sim/metrics.hpp>
#include <avail/sim/workload.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace avail::sim {

struct SimConfig
{
  std::string trace_path;
  Count capacity = 0;
  double reservation_fraction = 0.0;
  LeadTime lead;
  std::uint64_t seed = 1;
  /// Calls dropped from each end of every operation's aggregates.
  std::size_t exclusion = 4000;
  std::string out_dir = ".";
  /// Replay only the first max_jobs jobs of the trace; 0 keeps them all.
  std::size_t max_jobs = 0;
  Count histogram_bin = 1;
  /// Prune past profile entries every this many events; 0 disables.
  std::size_t prune_interval = 10000;
  Duration options_horizon = 7 * 24 * 3600;
  /// Complete jobs after their actual runtime instead of the estimate.
  bool early_completion = false;
};

enum class EventKind
{
  // Declaration order is the tie-break order at equal times.
  Completion,
  Arrival,
  ReservationArrival,
};

/// One line of the decisions CSV.
struct DecisionRecord
{
  JobId id = 0;
  bool reservation = false;
  TimeKey arrival = 0;
  Count n_res = 0;
  Duration duration = 0;
  std::string decision;
  /// -1 when the job was not admitted.
  TimeKey start = -1;
  RangeSet ranges;
};

struct SimReport
{
  std::vector<OpStats> calls;
  OpSummary check;
  OpSummary schedule;
  SchedulerTallies tallies;
  std::vector<DecisionRecord> decisions;
  std::size_t events = 0;
  std::size_t skipped_jobs = 0;
  std::size_t exclusion = 0;
  double wall_seconds = 0.0;
};

/// Called after every processed event; tests use it to audit the scheduler.
using EventObserver = std::function<void(const ConservativeScheduler&)>;

/// Replays a workload through a conservative-backfilling scheduler.
SimReport replay(
  const std::vector<WorkItem>& workload,
  const SimConfig& config,
  const EventObserver& observer = {});

/// Reads the trace, applies max_jobs and reservation injection, replays.
/// Throws ParseError for trace problems.
SimReport run(const SimConfig& config);

/// Writes calls.csv, summary.csv, histogram.csv, decisions.csv and
/// tallies.csv into out_dir. Throws avail::Error on I/O failure.
void emit_metrics(const SimReport& report, const std::string& out_dir, Count histogram_bin);

void write_calls_csv(std::ostream& os, const SimReport& report);
void write_summary_csv(std::ostream& os, const SimReport& report);
void write_histogram_csv(std::ostream& os, const SimReport& report, Count bin_width);
void write_decisions_csv(std::ostream& os, const SimReport& report);
void write_tallies_csv(std::ostream& os, const SimReport& report);

} // namespace avail::sim

#endif // AVAIL__SIM__SIMULATOR_HPP
