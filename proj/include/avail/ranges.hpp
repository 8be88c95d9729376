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

#ifndef AVAIL__RANGES_HPP
#define AVAIL__RANGES_HPP

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace avail {

using ResourceId = std::int64_t;
using Count = std::int64_t;

/// Inclusive interval of resource IDs: [0..9] holds ten resources.
struct ResourceRange
{
  ResourceId lo = 0;
  ResourceId hi = 0;

  Count size() const { return hi - lo + 1; }

  friend bool operator==(const ResourceRange&, const ResourceRange&) = default;
};

enum class SelectionPolicy
{
  FirstFit,
};

/// A set of resource IDs kept in normalized form: ranges are sorted, disjoint
/// and never adjacent, so two sets holding the same IDs compare equal.
class RangeSet
{
public:
  RangeSet() = default;

  /// Builds the normalized set covering the given intervals. Overlapping and
  /// adjacent intervals are merged. Throws InvalidRange if lo > hi or lo < 0.
  static RangeSet normalize(std::span<const ResourceRange> intervals);
  static RangeSet normalize(std::initializer_list<ResourceRange> intervals);

  /// The full set [0..capacity-1], or the empty set when capacity is 0.
  static RangeSet full(Count capacity);

  Count count() const { return _count; }
  bool empty() const { return _ranges.empty(); }
  std::span<const ResourceRange> ranges() const { return _ranges; }

  bool contains(ResourceId id) const;
  bool is_subset_of(const RangeSet& other) const;

  /// Lowest and highest ID held. Undefined on an empty set.
  ResourceId min_id() const { return _ranges.front().lo; }
  ResourceId max_id() const { return _ranges.back().hi; }

  friend bool operator==(const RangeSet& a, const RangeSet& b)
  {
    return a._ranges == b._ranges;
  }

  friend RangeSet intersect(const RangeSet& a, const RangeSet& b);
  friend RangeSet subtract(const RangeSet& a, const RangeSet& b);
  friend RangeSet unite(const RangeSet& a, const RangeSet& b);
  friend RangeSet select(const RangeSet&, Count, SelectionPolicy);

private:
  // Takes ranges that are already normalized.
  explicit RangeSet(std::vector<ResourceRange> normalized);

  std::vector<ResourceRange> _ranges;
  Count _count = 0;
};

RangeSet intersect(const RangeSet& a, const RangeSet& b);
RangeSet subtract(const RangeSet& a, const RangeSet& b);
RangeSet unite(const RangeSet& a, const RangeSet& b);

/// Picks exactly n IDs out of `from`. First-fit takes the n lowest IDs and
/// splits the last range it consumes. Throws InsufficientResources when
/// from.count() < n and InvalidRange when n < 1.
RangeSet select(
  const RangeSet& from,
  Count n,
  SelectionPolicy policy = SelectionPolicy::FirstFit);

/// Renders as "lo-hi,lo-hi"; the empty set renders as "".
std::string to_string(const RangeSet& set);

/// Parses the to_string() grammar. Throws InvalidRange on malformed text.
RangeSet parse_range_set(std::string_view text);

std::ostream& operator<<(std::ostream& os, const RangeSet& set);

} // namespace avail

#endif // AVAIL__RANGES_HPP
