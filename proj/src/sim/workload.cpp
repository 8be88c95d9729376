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

#include <avail/sim/workload.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace avail::sim {

std::vector<WorkItem> inject_reservations(
  std::vector<Request> requests,
  double fraction,
  LeadTime lead,
  std::uint64_t seed)
{
  fraction = std::clamp(fraction, 0.0, 1.0);
  const auto converted = static_cast<std::size_t>(
    std::floor(fraction * static_cast<double>(requests.size())));

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(requests.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<bool> as_reservation(requests.size(), false);
  for (std::size_t i = 0; i < converted; ++i)
    as_reservation[order[i]] = true;

  std::uniform_int_distribution<Duration> lead_dist(
    std::min(lead.min, lead.max), std::max(lead.min, lead.max));

  std::vector<WorkItem> out;
  out.reserve(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i)
  {
    Request& r = requests[i];
    if (!as_reservation[i])
    {
      out.emplace_back(std::move(r));
      continue;
    }
    Reservation res;
    res.id = r.id;
    res.n_res = r.n_res;
    res.duration = r.duration;
    res.arrival = r.arrival;
    res.start = r.arrival + lead_dist(rng);
    out.emplace_back(std::move(res));
  }
  return out;
}

std::vector<Request> make_synthetic_workload(const SyntheticWorkload& spec)
{
  std::mt19937_64 rng(spec.seed);

  // Node counts 1, 2, 4, ..., 128, smaller jobs more likely.
  std::discrete_distribution<int> node_exponent({30, 20, 15, 12, 10, 7, 4, 2});
  std::uniform_real_distribution<double> log_duration(std::log(300.0), std::log(64800.0));
  std::uniform_real_distribution<double> runtime_share(0.05, 1.0);

  std::vector<Request> jobs(spec.jobs);
  double work = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i)
  {
    Request& r = jobs[i];
    r.id = static_cast<JobId>(i + 1);
    const Count nodes = Count{1} << node_exponent(rng);
    r.n_res = std::clamp<Count>(nodes * spec.node_size, 1, spec.capacity);
    const auto minutes = static_cast<Duration>(std::ceil(std::exp(log_duration(rng)) / 60.0));
    r.duration = minutes * 60;
    r.runtime = std::max<Duration>(
      1, static_cast<Duration>(std::ceil(static_cast<double>(r.duration) * runtime_share(rng))));
    work += static_cast<double>(r.n_res) * static_cast<double>(r.duration);
  }

  if (jobs.empty())
    return jobs;

  const double mean_gap = work
    / (spec.load * static_cast<double>(spec.capacity) * static_cast<double>(jobs.size()));
  std::exponential_distribution<double> gap(1.0 / mean_gap);
  double t = 0.0;
  for (auto& r : jobs)
  {
    r.arrival = static_cast<TimeKey>(std::floor(t));
    t += gap(rng);
  }
  return jobs;
}

} // namespace avail::sim
