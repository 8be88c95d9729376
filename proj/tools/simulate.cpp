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

// Trace-driven conservative backfilling simulator.
//
// Exit codes: 0 success, 1 configuration or output error, 2 trace error.

#include <avail/error.hpp>
#include <avail/sim/simulator.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

constexpr int kConfigError = 1;
constexpr int kTraceError = 2;

void print_summary(const char* op, const avail::sim::OpSummary& s)
{
  std::printf(
    "%-8s calls=%zu included=%zu mean=%.4f median=%.4f q1=%.4f q3=%.4f\n",
    op, s.calls, s.included, s.mean_ratio, s.median_ratio, s.q1_ratio, s.q3_ratio);
}

} // namespace

int main(int argc, char** argv)
{
  avail::sim::SimConfig config;

  CLI::App app{"Replay an SWF trace through a conservative backfilling scheduler"};
  app.add_option("--trace", config.trace_path, "SWF trace file")->required();
  app.add_option("--capacity", config.capacity, "Number of resources")
    ->required()
    ->check(CLI::PositiveNumber);
  app.add_option("--reservation-fraction", config.reservation_fraction,
      "Share of jobs turned into advance reservations")
    ->check(CLI::Range(0.0, 1.0));
  app.add_option("--lead-min", config.lead.min, "Minimum reservation lead time (s)")
    ->check(CLI::NonNegativeNumber);
  app.add_option("--lead-max", config.lead.max, "Maximum reservation lead time (s)")
    ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", config.seed, "Random seed");
  app.add_option("--exclude", config.exclusion,
    "Calls dropped from each end of the aggregates");
  app.add_option("--out-dir", config.out_dir, "Directory for CSV outputs");
  app.add_option("--max-jobs", config.max_jobs, "Replay only the first N jobs (0 = all)");
  app.add_option("--histogram-bin", config.histogram_bin, "Non-visited histogram bin width")
    ->check(CLI::PositiveNumber);
  app.add_option("--options-horizon", config.options_horizon,
      "Look-ahead for reservation options (s)")
    ->check(CLI::PositiveNumber);
  app.add_flag("--early-completion", config.early_completion,
    "Complete jobs at their actual runtime");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp& e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError& e)
  {
    app.exit(e);
    return kConfigError;
  }

  if (config.lead.min > config.lead.max)
  {
    std::cerr << "error: --lead-min exceeds --lead-max\n";
    return kConfigError;
  }

  avail::sim::SimReport report;
  try
  {
    report = avail::sim::run(config);
  }
  catch (const avail::ParseError& e)
  {
    std::cerr << "trace error: " << e.what() << '\n';
    return kTraceError;
  }
  catch (const avail::Error& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try
  {
    avail::sim::emit_metrics(report, config.out_dir, config.histogram_bin);
  }
  catch (const avail::Error& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }

  const auto& t = report.tallies;
  std::printf("events=%zu started=%lld queued=%lld rejected=%lld "
              "reservations accepted=%lld rejected=%lld\n",
    report.events,
    static_cast<long long>(t.started),
    static_cast<long long>(t.queued),
    static_cast<long long>(t.rejected_requests),
    static_cast<long long>(t.reservations_accepted),
    static_cast<long long>(t.reservations_rejected));
  print_summary("check", report.check);
  print_summary("schedule", report.schedule);
  std::printf("wall time %.2f s\n", report.wall_seconds);
  return 0;
}
