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

#include <avail/ranges.hpp>

#include <avail/error.hpp>

#include <algorithm>
#include <charconv>
#include <ostream>

namespace avail {

namespace {

// Appends r to an already normalized sequence whose last range ends before
// r.lo, merging when adjacent or overlapping.
void append(std::vector<ResourceRange>& out, ResourceRange r)
{
  if (!out.empty() && out.back().hi + 1 >= r.lo)
  {
    out.back().hi = std::max(out.back().hi, r.hi);
    return;
  }
  out.push_back(r);
}

} // namespace

RangeSet::RangeSet(std::vector<ResourceRange> normalized)
: _ranges(std::move(normalized))
{
  for (const auto& r : _ranges)
    _count += r.size();
}

RangeSet RangeSet::normalize(std::span<const ResourceRange> intervals)
{
  std::vector<ResourceRange> sorted(intervals.begin(), intervals.end());
  for (const auto& r : sorted)
  {
    if (r.lo > r.hi || r.lo < 0)
    {
      throw InvalidRange(
        "invalid resource range [" + std::to_string(r.lo) + ".."
        + std::to_string(r.hi) + "]");
    }
  }

  std::sort(sorted.begin(), sorted.end(),
    [](const ResourceRange& a, const ResourceRange& b) { return a.lo < b.lo; });

  std::vector<ResourceRange> out;
  out.reserve(sorted.size());
  for (const auto& r : sorted)
    append(out, r);
  return RangeSet(std::move(out));
}

RangeSet RangeSet::normalize(std::initializer_list<ResourceRange> intervals)
{
  return normalize(std::span<const ResourceRange>(intervals.begin(), intervals.size()));
}

RangeSet RangeSet::full(Count capacity)
{
  if (capacity <= 0)
    return RangeSet();
  return RangeSet({ResourceRange{0, capacity - 1}});
}

bool RangeSet::contains(ResourceId id) const
{
  auto it = std::upper_bound(_ranges.begin(), _ranges.end(), id,
    [](ResourceId v, const ResourceRange& r) { return v < r.lo; });
  if (it == _ranges.begin())
    return false;
  --it;
  return id <= it->hi;
}

bool RangeSet::is_subset_of(const RangeSet& other) const
{
  if (_count > other._count)
    return false;

  // Every range of a normalized subset lies inside a single range of the
  // superset, since the superset has no adjacent ranges to straddle.
  auto it = other._ranges.begin();
  for (const auto& r : _ranges)
  {
    while (it != other._ranges.end() && it->hi < r.lo)
      ++it;
    if (it == other._ranges.end() || it->lo > r.lo || it->hi < r.hi)
      return false;
  }
  return true;
}

RangeSet intersect(const RangeSet& a, const RangeSet& b)
{
  std::vector<ResourceRange> out;
  auto ia = a._ranges.begin();
  auto ib = b._ranges.begin();
  while (ia != a._ranges.end() && ib != b._ranges.end())
  {
    const ResourceId lo = std::max(ia->lo, ib->lo);
    const ResourceId hi = std::min(ia->hi, ib->hi);
    if (lo <= hi)
      out.push_back({lo, hi});

    if (ia->hi < ib->hi)
      ++ia;
    else
      ++ib;
  }
  return RangeSet(std::move(out));
}

RangeSet subtract(const RangeSet& a, const RangeSet& b)
{
  if (b.empty())
    return a;

  std::vector<ResourceRange> out;
  auto ib = b._ranges.begin();
  for (const auto& r : a._ranges)
  {
    ResourceId lo = r.lo;
    while (ib != b._ranges.end() && ib->hi < lo)
      ++ib;

    auto cut = ib;
    while (cut != b._ranges.end() && cut->lo <= r.hi)
    {
      if (cut->lo > lo)
        out.push_back({lo, cut->lo - 1});
      lo = std::max(lo, cut->hi + 1);
      if (cut->hi > r.hi)
        break;
      ++cut;
    }
    if (lo <= r.hi)
      out.push_back({lo, r.hi});
  }
  return RangeSet(std::move(out));
}

RangeSet unite(const RangeSet& a, const RangeSet& b)
{
  if (b.empty())
    return a;
  if (a.empty())
    return b;

  std::vector<ResourceRange> out;
  out.reserve(a._ranges.size() + b._ranges.size());
  auto ia = a._ranges.begin();
  auto ib = b._ranges.begin();
  while (ia != a._ranges.end() || ib != b._ranges.end())
  {
    if (ib == b._ranges.end()
      || (ia != a._ranges.end() && ia->lo <= ib->lo))
    {
      append(out, *ia++);
    }
    else
    {
      append(out, *ib++);
    }
  }
  return RangeSet(std::move(out));
}

RangeSet select(const RangeSet& from, Count n, SelectionPolicy policy)
{
  if (n < 1)
    throw InvalidRange("selection size must be at least 1");
  if (from.count() < n)
  {
    throw InsufficientResources(
      "cannot select " + std::to_string(n) + " resources from a set of "
      + std::to_string(from.count()));
  }

  switch (policy)
  {
    case SelectionPolicy::FirstFit:
    {
      std::vector<ResourceRange> out;
      Count left = n;
      for (const auto& r : from._ranges)
      {
        if (r.size() >= left)
        {
          out.push_back({r.lo, r.lo + left - 1});
          break;
        }
        out.push_back(r);
        left -= r.size();
      }
      return RangeSet(std::move(out));
    }
  }
  throw InvalidRange("unknown selection policy");
}

std::string to_string(const RangeSet& set)
{
  std::string out;
  for (const auto& r : set.ranges())
  {
    if (!out.empty())
      out += ',';
    out += std::to_string(r.lo);
    out += '-';
    out += std::to_string(r.hi);
  }
  return out;
}

RangeSet parse_range_set(std::string_view text)
{
  std::vector<ResourceRange> intervals;
  if (text.empty())
    return RangeSet();

  auto fail = [&]() {
    throw InvalidRange("malformed range set '" + std::string(text) + "'");
  };

  auto parse_id = [&](std::string_view s) {
    ResourceId v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      fail();
    return v;
  };

  std::size_t pos = 0;
  while (true)
  {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = text.substr(
      pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    // A leading '-' would be a negative ID; search for the separator after it.
    const std::size_t dash = item.find('-', 1);
    if (dash == std::string_view::npos)
      fail();
    intervals.push_back({parse_id(item.substr(0, dash)), parse_id(item.substr(dash + 1))});
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  return RangeSet::normalize(intervals);
}

std::ostream& operator<<(std::ostream& os, const RangeSet& set)
{
  return os << '[' << to_string(set) << ']';
}

} // namespace avail
