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

#include <avail/error.hpp>
#include <avail/partitioned.hpp>

#include <doctest.h>
#include <support/oracle.hpp>

#include <sstream>
#include <vector>

using avail::PartitionedProfile;
using avail::RangeSet;
using avail::ResourceRange;
using oracle::Mask;

namespace {

RangeSet rs(std::initializer_list<ResourceRange> r) { return RangeSet::normalize(r); }

struct Scenario
{
  PartitionedProfile profile;
  std::vector<Mask> owned;
  std::vector<oracle::TickGrid> grids;
  std::int64_t horizon;
};

// Random ownership of IDs 0..cap-1 among k partitions, every partition
// owning at least one ID.
std::vector<Mask> random_ownership(oracle::Rng& rng, std::int64_t cap, std::size_t k)
{
  std::vector<Mask> owned(k, 0);
  for (std::int64_t id = 0; id < cap; ++id)
  {
    const auto p = id < static_cast<std::int64_t>(k)
      ? static_cast<std::size_t>(id)
      : static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(k) - 1));
    owned[p] |= Mask{1} << id;
  }
  return owned;
}

Scenario random_scenario(oracle::Rng& rng)
{
  const auto k = static_cast<std::size_t>(rng.uniform(1, 4));
  const auto cap = rng.uniform(static_cast<std::int64_t>(k), 16);
  const auto owned = random_ownership(rng, cap, k);
  std::vector<RangeSet> sets;
  std::vector<oracle::TickGrid> grids;
  for (const auto m : owned)
  {
    sets.push_back(oracle::to_set(m));
    grids.emplace_back(0, m);
  }
  Scenario s{PartitionedProfile(cap, sets, 0), owned, grids, rng.uniform(20, 150)};

  const auto n = rng.uniform(0, 25);
  for (int i = 0; i < n; ++i)
  {
    const auto p = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(k) - 1));
    const auto start = rng.uniform(0, s.horizon - 1);
    const auto finish = start + rng.uniform(1, s.horizon / 2);
    const Mask pick = s.grids[p].window(start, finish) & rng.mask(cap, 0.4);
    if (pick == 0)
      continue;
    s.profile.allocate_partition(p, oracle::to_set(pick), start, finish);
    s.grids[p].take(pick, start, finish);
  }
  return s;
}

void require_same_availability(const Scenario& s)
{
  for (std::size_t p = 0; p < s.owned.size(); ++p)
  {
    for (std::int64_t t = 0; t < 3 * s.horizon; ++t)
      REQUIRE(oracle::to_mask(s.profile.available_at(p, t)) == s.grids[p].at(t));
  }
}

} // namespace

TEST_CASE("construction validates ownership")
{
  CHECK_NOTHROW(PartitionedProfile(13, {rs({{0, 5}}), rs({{6, 12}})}));
  CHECK_THROWS_AS(
    PartitionedProfile(13, {rs({{0, 6}}), rs({{6, 12}})}), avail::InvalidPartition);
  CHECK_THROWS_AS(
    PartitionedProfile(13, {rs({{0, 5}}), rs({{7, 12}})}), avail::InvalidPartition);
  CHECK_THROWS_AS(PartitionedProfile(4, {}), avail::InvalidPartition);
}

TEST_CASE("per-partition checks are limited to owned IDs")
{
  PartitionedProfile p(13, {rs({{0, 5}}), rs({{6, 12}})});
  CHECK_THROWS_AS(p.check_partition(0, 7, 0, 10), avail::ImpossibleRequest);
  CHECK_THROWS_AS(p.check_partition(2, 1, 0, 10), avail::InvalidPartition);

  const auto r = p.check_partition(1, 7, 0, 10);
  REQUIRE(r.accepted());
  CHECK(r.slot->ranges == rs({{6, 12}}));

  p.allocate_partition(0, rs({{0, 3}}), 0, 50);
  CHECK_FALSE(p.check_partition(0, 3, 10, 10).accepted());
  CHECK(p.check_partition(0, 2, 10, 10).accepted());
  CHECK(p.available_at(1, 10) == rs({{6, 12}}));

  const auto later = p.find_start_time_partition(0, 3, 10, 0);
  REQUIRE(later.accepted());
  CHECK(later.slot->start == 50);

  CHECK_THROWS_AS(p.allocate_partition(0, rs({{6, 6}}), 0, 10), avail::InconsistentAllocation);
  CHECK_THROWS_AS(p.allocate_partition(0, rs({{3, 3}}), 40, 60), avail::InconsistentAllocation);
}

TEST_CASE("borrowing evaluates the union of partitions")
{
  PartitionedProfile p(8, {rs({{0, 3}}), rs({{4, 7}})});
  p.allocate_partition(0, rs({{0, 2}}), 0, 100);
  p.allocate_partition(1, rs({{4, 4}}), 0, 100);

  const std::vector<avail::PartitionId> donors{1};
  const auto r = p.check_borrowing(0, donors, 4, 10, 20);
  REQUIRE(r.accepted());
  CHECK(r.slot->ranges == rs({{3, 3}, {5, 7}}));
  CHECK_FALSE(p.check_borrowing(0, donors, 5, 10, 20).accepted());

  const std::vector<avail::PartitionId> self{0};
  CHECK_THROWS_AS(p.check_borrowing(0, self, 1, 10, 20), avail::InvalidPartition);
  CHECK_THROWS_AS(p.check_borrowing(0, donors, 9, 10, 20), avail::ImpossibleRequest);

  p.allocate_borrowed(rs({{3, 3}, {5, 5}}), 10, 30);
  CHECK(p.available_at(0, 15).empty());
  CHECK(p.available_at(1, 15) == rs({{6, 7}}));
  CHECK(p.available_at(0, 30) == rs({{3, 3}}));
}

TEST_CASE("borrowed allocation is all-or-nothing")
{
  PartitionedProfile p(8, {rs({{0, 3}}), rs({{4, 7}})});
  p.allocate_partition(1, rs({{7, 7}}), 20, 40);
  std::ostringstream before;
  p.write_snapshot(before);
  CHECK_THROWS_AS(p.allocate_borrowed(rs({{0, 0}, {7, 7}}), 0, 30), avail::InconsistentAllocation);
  CHECK_THROWS_AS(p.allocate_borrowed(rs({{8, 8}}), 0, 30), avail::InconsistentAllocation);
  std::ostringstream after;
  p.write_snapshot(after);
  CHECK(before.str() == after.str());
}

TEST_CASE("snapshot lists every partition")
{
  PartitionedProfile p(4, {rs({{0, 1}}), rs({{2, 3}})}, 5);
  p.allocate_partition(1, rs({{2, 2}}), 10, 20);
  std::ostringstream out;
  p.write_snapshot(out);
  CHECK(out.str() == "5 p0:0-1 p1:2-3\n10 p0:0-1 p1:3-3\n20 p0:0-1 p1:2-3\n");
}

TEST_CASE("property: per-partition queries match per-partition oracles")
{
  oracle::Rng rng(31);
  for (int trial = 0; trial < 400; ++trial)
  {
    auto s = random_scenario(rng);
    require_same_availability(s);
    for (int q = 0; q < 6; ++q)
    {
      const auto p = static_cast<std::size_t>(
        rng.uniform(0, static_cast<std::int64_t>(s.owned.size()) - 1));
      const auto n = rng.uniform(1, oracle::count(s.owned[p]));
      const auto start = rng.uniform(0, s.horizon);
      const auto d = rng.uniform(1, s.horizon);

      const auto r = s.profile.check_partition(p, n, start, d);
      const Mask window = s.grids[p].window(start, start + d);
      REQUIRE(r.accepted() == (oracle::count(window) >= n));
      if (r.accepted())
        REQUIRE(oracle::to_mask(r.slot->ranges) == window);
      REQUIRE(r.stats.visited <= r.stats.worst);

      const auto f = s.profile.find_start_time_partition(p, n, d, start);
      std::int64_t expected = start;
      while (oracle::count(s.grids[p].window(expected, expected + d)) < n)
        ++expected;
      REQUIRE(f.accepted());
      REQUIRE(f.slot->start == expected);
    }
  }
}

TEST_CASE("property: borrowing matches a merged oracle and keeps ownership")
{
  oracle::Rng rng(32);
  for (int trial = 0; trial < 400; ++trial)
  {
    auto s = random_scenario(rng);
    const auto k = s.owned.size();
    if (k < 2)
      continue;

    for (int q = 0; q < 6; ++q)
    {
      const auto p = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(k) - 1));
      std::vector<avail::PartitionId> donors;
      Mask limit = s.owned[p];
      for (std::size_t d = 0; d < k; ++d)
      {
        if (d != p && rng.chance(0.6))
        {
          donors.push_back(d);
          limit |= s.owned[d];
        }
      }
      const auto n = rng.uniform(1, oracle::count(limit));
      const auto start = rng.uniform(0, s.horizon);
      const auto d = rng.uniform(1, s.horizon);

      Mask merged = ~Mask{0};
      for (auto t = start; t < start + d; ++t)
      {
        Mask at = s.grids[p].at(t);
        for (const auto donor : donors)
          at |= s.grids[donor].at(t);
        merged &= at;
      }

      const auto r = s.profile.check_borrowing(p, donors, n, start, d);
      REQUIRE(r.accepted() == (oracle::count(merged) >= n));
      if (!r.accepted())
        continue;
      REQUIRE(oracle::to_mask(r.slot->ranges) == merged);

      const Mask pick = oracle::lowest(merged, static_cast<int>(n));
      s.profile.allocate_borrowed(oracle::to_set(pick), start, start + d);
      for (std::size_t owner = 0; owner < k; ++owner)
      {
        if (pick & s.owned[owner])
          s.grids[owner].take(pick & s.owned[owner], start, start + d);
      }

      // Every partition only ever holds IDs it owns, and no ID is free in
      // two partitions at once.
      for (const auto& e : s.profile.entries())
      {
        Mask seen = 0;
        for (std::size_t owner = 0; owner < k; ++owner)
        {
          const Mask m = oracle::to_mask(e.per_partition[owner]);
          REQUIRE((m & ~s.owned[owner]) == 0);
          REQUIRE((m & seen) == 0);
          seen |= m;
        }
      }
      require_same_availability(s);
    }
  }
}

TEST_CASE("property: returning slots restores per-partition counts")
{
  oracle::Rng rng(33);
  for (int trial = 0; trial < 300; ++trial)
  {
    auto s = random_scenario(rng);
    const auto cap = s.profile.capacity();
    const auto start = rng.uniform(0, s.horizon - 1);
    const auto finish = start + rng.uniform(1, s.horizon);

    Mask merged = ~Mask{0};
    for (auto t = start; t < finish; ++t)
    {
      Mask at = 0;
      for (const auto& g : s.grids)
        at |= g.at(t);
      merged &= at;
    }
    const Mask pick = merged & rng.mask(cap, 0.5);
    if (pick == 0)
      continue;

    std::vector<std::int64_t> before;
    for (std::size_t p = 0; p < s.owned.size(); ++p)
      before.push_back(s.profile.available_at(p, start).count());

    s.profile.allocate_borrowed(oracle::to_set(pick), start, finish);
    std::int64_t taken = 0;
    for (std::size_t p = 0; p < s.owned.size(); ++p)
      taken += before[p] - s.profile.available_at(p, start).count();
    REQUIRE(taken == oracle::count(pick));

    s.profile.add_time_slot(start, finish, oracle::to_set(pick));
    for (std::size_t p = 0; p < s.owned.size(); ++p)
      REQUIRE(s.profile.available_at(p, start).count() == before[p]);
    require_same_availability(s);
  }
}
