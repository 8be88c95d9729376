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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
//
//   acceptance --simulate <path to simulate> --work-dir <scratch dir>
//
// Criterion 3 replays the trace named by AVAIL_BLUE_HORIZON_SWF when that
// variable points to a readable file, and a seeded synthetic heavy-load
// workload otherwise.

#include <avail/error.hpp>
#include <avail/profile.hpp>
#include <avail/scheduler.hpp>
#include <avail/sim/simulator.hpp>
#include <avail/sim/swf.hpp>
#include <avail/sim/workload.hpp>
#include <avail/timemap.hpp>

#include <support/oracle.hpp>
#include <support/reference_scheduler.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using avail::Profile;
using avail::RangeSet;
using oracle::Mask;

namespace {

struct Outcome
{
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

//==============================================================================
Outcome oracle_equivalence()
{
  constexpr int kScenarios = 1000;
  constexpr avail::TimeKey kHorizon = 10000;
  oracle::Rng rng(1);
  std::size_t decisions = 0;

  for (int scenario = 0; scenario < kScenarios; ++scenario)
  {
    const auto cap = rng.uniform(1, 16);
    const auto ops = rng.uniform(1, 300);
    avail::ConservativeScheduler s(cap);
    oracle::ReferenceScheduler ref(cap, 0);
    avail::TimeKey clock = 0;

    for (avail::JobId id = 0; id < ops; ++id)
    {
      clock += rng.uniform(0, 20);
      s.advance_to(clock);
      const auto n = rng.uniform(1, cap + 1);
      const auto d = rng.uniform(1, 200);
      std::ostringstream where;
      where << "scenario " << scenario << " job " << id;

      if (rng.chance(0.3))
      {
        avail::Reservation r;
        r.id = id;
        r.n_res = n;
        r.duration = d;
        r.arrival = clock;
        r.start = std::min(clock + rng.uniform(0, 300), kHorizon - d);
        r.start = std::max(r.start, clock);
        const auto expected = ref.reserve(n, r.start, d);
        const auto outcome = s.submit_reservation(r);
        const bool accepted = outcome.decision == avail::ReservationDecision::Accepted;
        if (accepted != expected.has_value())
          return fail(where.str() + ": reservation decision differs");
        if (expected
          && (r.assigned->start != expected->start
            || oracle::to_mask(r.assigned->ranges) != expected->ids))
          return fail(where.str() + ": reservation placement differs");
      }
      else
      {
        avail::Request r;
        r.id = id;
        r.n_res = n;
        r.duration = d;
        r.arrival = clock;
        const auto expected = ref.request(n, d, clock);
        const auto decision = s.submit_request(r);
        if (!expected)
        {
          if (decision != avail::RequestDecision::Rejected)
            return fail(where.str() + ": expected rejection");
          ++decisions;
          continue;
        }
        const auto want = expected->start == clock
          ? avail::RequestDecision::Started
          : avail::RequestDecision::Queued;
        if (decision != want)
          return fail(where.str() + ": request decision differs");
        if (r.assigned->start != expected->start
          || r.assigned->finish != expected->start + d
          || oracle::to_mask(r.assigned->ranges) != expected->ids)
          return fail(where.str() + ": request placement differs");
      }
      ++decisions;
    }
  }
  return {true, std::to_string(kScenarios) + " scenarios, "
    + std::to_string(decisions) + " decisions identical"};
}

//==============================================================================
Outcome red_black_invariants()
{
  constexpr int kOps = 100000;
  avail::ThreadedRbMap<std::int64_t, int> map;
  std::set<std::int64_t> model;
  oracle::Rng rng(2);

  for (int op = 0; op < kOps; ++op)
  {
    const auto k = rng.uniform(0, 4000);
    if (model.contains(k))
    {
      map.remove(k);
      model.erase(k);
    }
    else
    {
      map.insert(k, op);
      model.insert(k);
    }
    if (const auto v = map.find_violation())
      return fail("after operation " + std::to_string(op) + ": " + *v);
    if (map.size() != model.size())
      return fail("size mismatch after operation " + std::to_string(op));
  }

  std::vector<std::int64_t> listed;
  for (auto h = map.first(); h; h = map.next(*h))
    listed.push_back(map.key(*h));
  if (listed != std::vector<std::int64_t>(model.begin(), model.end()))
    return fail("key set differs from the model");
  return {true, std::to_string(kOps) + " operations, zero violations"};
}

//==============================================================================
Outcome complexity_shape(const fs::path& work_dir)
{
  avail::sim::SimConfig config;
  config.capacity = 1152;
  config.exclusion = 4000;
  config.max_jobs = 80000;

  std::string source;
  const char* env = std::getenv("AVAIL_BLUE_HORIZON_SWF");
  if (env != nullptr && fs::is_regular_file(env))
  {
    config.trace_path = env;
    source = "trace " + config.trace_path;
  }
  else
  {
    avail::sim::SyntheticWorkload spec;
    spec.jobs = 80000;
    spec.capacity = 1152;
    spec.load = 0.95;
    spec.seed = 3;
    config.trace_path = (work_dir / "synthetic_heavy.swf").string();
    std::ofstream out(config.trace_path);
    avail::sim::write_swf(out, avail::sim::make_synthetic_workload(spec));
    out.close();
    if (!out)
      return fail("cannot write " + config.trace_path);
    source = "synthetic workload (95% load, seed 3)";
  }

  const auto report = avail::sim::run(config);
  const auto bins = avail::sim::non_visited_histogram(report.calls, config.exclusion, 1);
  const auto mode = static_cast<std::size_t>(
    std::max_element(bins.begin(), bins.end()) - bins.begin());

  std::ostringstream detail;
  detail << source << "; schedule mean ratio " << report.schedule.mean_ratio << " over "
         << report.schedule.ratio_samples << " calls, check mean ratio "
         << report.check.mean_ratio << " over " << report.check.ratio_samples
         << " calls, non-visited mode " << mode << " (max " << (bins.empty() ? 0 : bins.size() - 1)
         << "), replay " << report.wall_seconds << " s";

  bool ok = true;
  if (report.schedule.included < 60000 || report.check.included < 60000)
  {
    ok = false;
    detail << "; fewer than 60000 included calls per op";
  }
  if (report.schedule.mean_ratio > 0.25)
    ok = false;
  if (bins.empty() || mode != 0)
    ok = false;
  return {ok, detail.str()};
}

//==============================================================================
struct RandomProfile
{
  Profile profile;
  oracle::TickGrid grid;
  avail::TimeKey horizon;
};

RandomProfile random_profile(oracle::Rng& rng)
{
  const auto cap = rng.uniform(1, 16);
  const auto origin = rng.uniform(0, 50);
  const auto horizon = origin + rng.uniform(20, 300);
  RandomProfile p{Profile(cap, origin), oracle::TickGrid(origin, oracle::full_mask(cap)), horizon};
  const auto n = rng.uniform(0, 40);
  for (int i = 0; i < n; ++i)
  {
    const auto start = rng.uniform(origin, horizon - 1);
    const auto finish = start + rng.uniform(1, (horizon - origin) / 2);
    const Mask pick = p.grid.window(start, finish) & rng.mask(cap, 0.4);
    if (pick == 0)
      continue;
    p.profile.allocate(oracle::to_set(pick), start, finish);
    p.grid.take(pick, start, finish);
  }
  return p;
}

std::set<avail::TimeKey> boundaries(const Profile& p)
{
  std::set<avail::TimeKey> out;
  for (const auto& e : p.entries())
    out.insert(e.time);
  return out;
}

Outcome inverse_property()
{
  constexpr int kPairs = 10000;
  oracle::Rng rng(4);
  int done = 0;
  while (done < kPairs)
  {
    auto p = random_profile(rng);
    for (int i = 0; i < 10 && done < kPairs; ++i)
    {
      const auto origin = p.profile.created();
      const auto start = rng.uniform(origin, p.horizon - 1);
      const auto finish = start + rng.uniform(1, p.horizon - origin);
      const Mask pick = p.grid.window(start, finish) & rng.mask(p.profile.capacity(), 0.5);
      if (pick == 0)
        continue;

      const auto before_times = boundaries(p.profile);
      std::map<avail::TimeKey, RangeSet> before;
      for (const auto t : before_times)
        before.emplace(t, p.profile.available_at(t));

      p.profile.allocate(oracle::to_set(pick), start, finish);
      p.profile.add_time_slot(start, finish, oracle::to_set(pick));

      auto times = boundaries(p.profile);
      times.insert(before_times.begin(), before_times.end());
      for (const auto t : times)
      {
        const RangeSet expected = before.contains(t) ? before.at(t)
          : oracle::to_set(p.grid.at(t));
        if (!(p.profile.available_at(t) == expected))
          return fail("pair " + std::to_string(done) + ": availability differs at "
            + std::to_string(t));
      }
      ++done;
    }
  }
  return {true, std::to_string(kPairs) + " pairs restored at every boundary"};
}

//==============================================================================
Outcome reconstruction_round_trip()
{
  constexpr int kProfiles = 1000;
  oracle::Rng rng(5);
  for (int i = 0; i < kProfiles; ++i)
  {
    const auto p = random_profile(rng);
    const auto origin = p.profile.created();
    const auto slots = p.profile.free_time_slots(origin, p.horizon);
    const Profile back = Profile::reconstruct(p.profile.capacity(), slots, origin);
    for (auto t = origin; t < p.horizon; ++t)
    {
      if (!(back.available_at(t) == p.profile.available_at(t)))
        return fail("profile " + std::to_string(i) + ": differs at " + std::to_string(t));
    }
  }
  return {true, std::to_string(kProfiles) + " profiles reproduced tick by tick"};
}

//==============================================================================
Outcome backfilling_stability()
{
  constexpr int kReplays = 1000;
  oracle::Rng rng(6);
  std::size_t audited = 0;

  for (int replay = 0; replay < kReplays; ++replay)
  {
    const auto cap = rng.uniform(4, 64);
    const auto jobs = rng.uniform(50, 300);
    std::vector<avail::sim::WorkItem> workload;
    avail::TimeKey t = 0;
    for (avail::JobId id = 0; id < jobs; ++id)
    {
      t += rng.uniform(0, 30);
      const auto n = rng.uniform(1, cap);
      const auto d = rng.uniform(1, 400);
      if (rng.chance(0.2))
      {
        avail::Reservation r;
        r.id = id;
        r.n_res = n;
        r.duration = d;
        r.arrival = t;
        r.start = t + rng.uniform(0, 600);
        workload.emplace_back(r);
      }
      else
      {
        avail::Request r;
        r.id = id;
        r.n_res = n;
        r.duration = d;
        r.arrival = t;
        r.runtime = rng.uniform(1, d);
        workload.emplace_back(r);
      }
    }

    avail::sim::SimConfig config;
    config.capacity = cap;
    config.exclusion = 0;
    config.prune_interval = 50;
    config.early_completion = rng.chance(0.5);

    std::map<avail::JobId, avail::Assignment> seen;
    std::string problem;
    avail::sim::replay(workload, config, [&](const avail::ConservativeScheduler& s) {
      const auto& now = s.assignments();
      for (const auto& [id, a] : seen)
      {
        const auto it = now.find(id);
        if (problem.empty() && (it == now.end() || !(it->second == a)))
          problem = "replay " + std::to_string(replay) + ": job " + std::to_string(id)
            + " changed after assignment";
      }
      seen = now;
      ++audited;
    });
    if (!problem.empty())
      return fail(problem);
  }
  return {true, std::to_string(kReplays) + " replays, " + std::to_string(audited)
    + " events audited"};
}

//==============================================================================
std::string read_file(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism(const std::string& simulate, const fs::path& work_dir)
{
  if (simulate.empty() || !fs::is_regular_file(simulate))
    return fail("simulate binary not found: '" + simulate + "'");

  avail::sim::SyntheticWorkload spec;
  spec.jobs = 5000;
  spec.capacity = 256;
  spec.seed = 7;
  const auto trace = work_dir / "determinism.swf";
  {
    std::ofstream out(trace);
    avail::sim::write_swf(out, avail::sim::make_synthetic_workload(spec));
  }

  const std::vector<std::string> runs{"run_a", "run_b"};
  for (const auto& run : runs)
  {
    const auto out_dir = work_dir / run;
    fs::remove_all(out_dir);
    const std::string cmd = "\"" + simulate + "\" --trace \"" + trace.string()
      + "\" --capacity 256 --reservation-fraction 0.15 --seed 11 --exclude 200"
      + " --histogram-bin 2 --out-dir \"" + out_dir.string() + "\" > \""
      + (work_dir / (run + ".log")).string() + "\" 2>&1";
    if (std::system(cmd.c_str()) != 0)
      return fail("simulate exited with an error, see " + (work_dir / (run + ".log")).string());
  }

  for (const char* file :
    {"calls.csv", "summary.csv", "histogram.csv", "decisions.csv", "tallies.csv"})
  {
    const auto a = read_file(work_dir / runs[0] / file);
    const auto b = read_file(work_dir / runs[1] / file);
    if (a.empty())
      return fail(std::string(file) + " is empty");
    if (a != b)
      return fail(std::string(file) + " differs between runs");
  }
  return {true, "5 CSV files byte-identical across two runs"};
}

} // namespace

int main(int argc, char** argv)
{
  std::string simulate;
  std::string work_dir = "acceptance_work";
  CLI::App app{"Acceptance suite"};
  app.add_option("--simulate", simulate, "Path to the simulate executable")->required();
  app.add_option("--work-dir", work_dir, "Scratch directory");
  CLI11_PARSE(app, argc, argv);

  fs::create_directories(work_dir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
    {"oracle equivalence", oracle_equivalence},
    {"red-black invariants", red_black_invariants},
    {"complexity shape", [&] { return complexity_shape(work_dir); }},
    {"allocate/add_time_slot inverse", inverse_property},
    {"reconstruction round trip", reconstruction_round_trip},
    {"conservative backfilling stability", backfilling_stability},
    {"simulator determinism", [&] { return determinism(simulate, work_dir); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i)
  {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try
    {
      outcome = criteria[i].second();
    }
    catch (const std::exception& e)
    {
      outcome = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass)
      ++failures;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " ("
              << criteria[i].first << "): " << outcome.detail << " [" << std::fixed
              << std::setprecision(1) << secs << " s]" << std::defaultfloat << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
