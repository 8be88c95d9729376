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

#include <avail/sim/simulator.hpp>

#include <avail/error.hpp>
#include <avail/sim/swf.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <queue>
#include <tuple>

namespace avail::sim {

namespace {

struct Event
{
  TimeKey time = 0;
  EventKind kind = EventKind::Arrival;
  JobId id = 0;
  std::size_t item = 0;

  auto order() const { return std::tie(time, kind, id, item); }
};

struct LaterFirst
{
  bool operator()(const Event& a, const Event& b) const { return a.order() > b.order(); }
};

const char* to_string(RequestDecision d)
{
  switch (d)
  {
    case RequestDecision::Started:
      return "started";
    case RequestDecision::Queued:
      return "queued";
    case RequestDecision::Rejected:
      return "rejected";
  }
  return "unknown";
}

TimeKey arrival_of(const WorkItem& item)
{
  return std::visit([](const auto& job) { return job.arrival; }, item);
}

class CsvFile
{
public:
  explicit CsvFile(const std::filesystem::path& path)
  : _path(path),
    _out(path)
  {
    if (!_out)
      throw Error("cannot open '" + _path.string() + "' for writing");
    _out << std::fixed << std::setprecision(6);
  }

  std::ostream& stream() { return _out; }

  void close()
  {
    _out.close();
    if (!_out)
      throw Error("failed writing '" + _path.string() + "'");
  }

private:
  std::filesystem::path _path;
  std::ofstream _out;
};

void write_summary_row(std::ostream& os, const char* op, const OpSummary& s)
{
  os << op << ',' << s.calls << ',' << s.included << ',' << s.ratio_samples << ','
     << s.mean_ratio << ',' << s.median_ratio << ',' << s.q1_ratio << ','
     << s.q3_ratio << ',' << s.min_ratio << ',' << s.max_ratio << ','
     << s.mean_non_visited << '\n';
}

} // namespace

SimReport replay(
  const std::vector<WorkItem>& workload,
  const SimConfig& config,
  const EventObserver& observer)
{
  const auto wall_start = std::chrono::steady_clock::now();

  SimReport report;
  report.exclusion = config.exclusion;

  TimeKey origin = 0;
  if (!workload.empty())
  {
    origin = arrival_of(*std::min_element(workload.begin(), workload.end(),
      [](const WorkItem& a, const WorkItem& b) { return arrival_of(a) < arrival_of(b); }));
  }

  SchedulerConfig scheduler_config;
  scheduler_config.options_horizon = config.options_horizon;
  scheduler_config.early_completion = config.early_completion;
  ConservativeScheduler scheduler(config.capacity, origin, scheduler_config);

  std::size_t check_calls = 0;
  std::size_t schedule_calls = 0;
  scheduler.set_recorder([&](OpKind kind, const ScanStats& stats) {
    std::size_t& counter = kind == OpKind::Check ? check_calls : schedule_calls;
    report.calls.push_back({kind, counter++, stats.visited, stats.worst});
  });

  std::priority_queue<Event, std::vector<Event>, LaterFirst> events;
  for (std::size_t i = 0; i < workload.size(); ++i)
  {
    if (const auto* r = std::get_if<Request>(&workload[i]))
      events.push({r->arrival, EventKind::Arrival, r->id, i});
    else
    {
      const auto& res = std::get<Reservation>(workload[i]);
      events.push({res.arrival, EventKind::ReservationArrival, res.id, i});
    }
  }

  auto finish_of = [&](const Assignment& a, Duration runtime) {
    if (config.early_completion && runtime > 0)
      return std::min(a.finish, a.start + runtime);
    return a.finish;
  };

  while (!events.empty())
  {
    const Event ev = events.top();
    events.pop();
    scheduler.advance_to(ev.time);

    switch (ev.kind)
    {
      case EventKind::Completion:
        scheduler.complete(ev.id);
        break;

      case EventKind::Arrival:
      {
        Request r = std::get<Request>(workload[ev.item]);
        const RequestDecision decision = scheduler.submit_request(r);
        DecisionRecord rec{r.id, false, r.arrival, r.n_res, r.duration, to_string(decision), -1, {}};
        if (r.assigned)
        {
          rec.start = r.assigned->start;
          rec.ranges = r.assigned->ranges;
          events.push({finish_of(*r.assigned, r.runtime), EventKind::Completion, r.id, ev.item});
        }
        report.decisions.push_back(std::move(rec));
        break;
      }

      case EventKind::ReservationArrival:
      {
        Reservation res = std::get<Reservation>(workload[ev.item]);
        const ReservationOutcome outcome = scheduler.submit_reservation(res);
        DecisionRecord rec{res.id, true, res.arrival, res.n_res, res.duration,
          outcome.decision == ReservationDecision::Accepted ? "accepted" : "rejected", -1, {}};
        if (res.assigned)
        {
          rec.start = res.assigned->start;
          rec.ranges = res.assigned->ranges;
          events.push({res.assigned->finish, EventKind::Completion, res.id, ev.item});
        }
        report.decisions.push_back(std::move(rec));
        break;
      }
    }

    ++report.events;
    if (config.prune_interval > 0 && report.events % config.prune_interval == 0)
      scheduler.prune();
    if (observer)
      observer(scheduler);
  }

  report.tallies = scheduler.tallies();
  report.check = summarize(report.calls, OpKind::Check, config.exclusion);
  report.schedule = summarize(report.calls, OpKind::Schedule, config.exclusion);
  report.wall_seconds = std::chrono::duration<double>(
    std::chrono::steady_clock::now() - wall_start).count();
  return report;
}

SimReport run(const SimConfig& config)
{
  SwfTrace trace = parse_swf_file(config.trace_path);
  if (config.max_jobs > 0 && trace.requests.size() > config.max_jobs)
    trace.requests.resize(config.max_jobs);

  const auto workload = inject_reservations(
    std::move(trace.requests), config.reservation_fraction, config.lead, config.seed);
  SimReport report = replay(workload, config);
  report.skipped_jobs = trace.skipped;
  return report;
}

void write_calls_csv(std::ostream& os, const SimReport& report)
{
  os << "opKind,callIndex,visited,worst,ratio,nonVisited\n";
  for (const auto& c : report.calls)
  {
    os << to_string(c.kind) << ',' << c.call_index << ',' << c.visited << ','
       << c.worst << ',' << c.ratio() << ',' << c.non_visited() << '\n';
  }
}

void write_summary_csv(std::ostream& os, const SimReport& report)
{
  os << "op,calls,included,ratioSamples,meanRatio,medianRatio,q1Ratio,q3Ratio,"
        "minRatio,maxRatio,meanNonVisited\n";
  write_summary_row(os, "check", report.check);
  write_summary_row(os, "schedule", report.schedule);
}

void write_histogram_csv(std::ostream& os, const SimReport& report, Count bin_width)
{
  os << "binStart,binEnd,count\n";
  const auto bins = non_visited_histogram(report.calls, report.exclusion, bin_width);
  for (std::size_t k = 0; k < bins.size(); ++k)
  {
    const Count lo = static_cast<Count>(k) * bin_width;
    os << lo << ',' << lo + bin_width << ',' << bins[k] << '\n';
  }
}

void write_decisions_csv(std::ostream& os, const SimReport& report)
{
  os << "id,type,arrival,nRes,duration,decision,start,ranges\n";
  for (const auto& d : report.decisions)
  {
    os << d.id << ',' << (d.reservation ? "reservation" : "request") << ','
       << d.arrival << ',' << d.n_res << ',' << d.duration << ',' << d.decision << ','
       << d.start << ",\"" << to_string(d.ranges) << "\"\n";
  }
}

void write_tallies_csv(std::ostream& os, const SimReport& report)
{
  const auto& t = report.tallies;
  os << "outcome,count\n";
  os << "started," << t.started << '\n';
  os << "queued," << t.queued << '\n';
  os << "rejected_requests," << t.rejected_requests << '\n';
  os << "reservations_accepted," << t.reservations_accepted << '\n';
  os << "reservations_rejected," << t.reservations_rejected << '\n';
  os << "completed," << t.completed << '\n';
  os << "skipped_jobs," << report.skipped_jobs << '\n';
}

void emit_metrics(const SimReport& report, const std::string& out_dir, Count histogram_bin)
{
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw Error("cannot create output directory '" + out_dir + "': " + ec.message());

  auto write = [&](const char* name, auto&& fn) {
    CsvFile file(dir / name);
    fn(file.stream());
    file.close();
  };
  write("calls.csv", [&](std::ostream& os) { write_calls_csv(os, report); });
  write("summary.csv", [&](std::ostream& os) { write_summary_csv(os, report); });
  write("histogram.csv", [&](std::ostream& os) {
    write_histogram_csv(os, report, histogram_bin);
  });
  write("decisions.csv", [&](std::ostream& os) { write_decisions_csv(os, report); });
  write("tallies.csv", [&](std::ostream& os) { write_tallies_csv(os, report); });
}

} // namespace avail::sim
