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

#ifndef AVAIL__SIM__WORKLOAD_HPP
#define AVAIL__SIM__WORKLOAD_HPP

#include <avail/scheduler.hpp>

#include <cstdint>
#include <variant>
#include <vector>

namespace avail::sim {

using WorkItem = std::variant<Request, Reservation>;

/// Reservation lead time, drawn uniformly from [min, max] seconds.
struct LeadTime
{
  Duration min = 3600;
  Duration max = 24 * 3600;
};

/// Turns floor(fraction * N) of the requests, chosen with the seeded RNG,
/// into reservations starting `lead` seconds after their arrival. The other
/// requests pass through unchanged and the input order is kept.
std::vector<WorkItem> inject_reservations(
  std::vector<Request> requests,
  double fraction,
  LeadTime lead,
  std::uint64_t seed);

struct SyntheticWorkload
{
  std::size_t jobs = 100000;
  Count capacity = 1152;
  /// Offered load: submitted resource-seconds per second of machine time.
  double load = 0.95;
  /// Processors per node; job sizes are multiples of it.
  Count node_size = 8;
  std::uint64_t seed = 1;
};

/// Seeded batch workload with Poisson arrivals at the requested offered
/// load. Sizes are power-of-two node counts biased towards small jobs and
/// requested times are log-uniform between 5 minutes and 18 hours.
std::vector<Request> make_synthetic_workload(const SyntheticWorkload& spec);

} // namespace avail::sim

#endif // AVAIL__SIM__WORKLOAD_HPP
