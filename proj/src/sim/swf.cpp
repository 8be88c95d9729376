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

#include <avail/sim/swf.hpp>

#include <avail/error.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace avail::sim {

namespace {

constexpr std::size_t kFieldCount = 18;

// Some archive logs carry fractional values in the averaged fields, so a
// token is accepted when it parses as a number; used fields are truncated.
bool parse_number(std::string_view token, std::int64_t& out)
{
  std::int64_t whole = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), whole);
  if (ec == std::errc() && ptr == token.data() + token.size())
  {
    out = whole;
    return true;
  }

  double value = 0.0;
  auto [dptr, dec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (dec != std::errc() || dptr != token.data() + token.size() || !std::isfinite(value))
    return false;
  out = static_cast<std::int64_t>(value);
  return true;
}

} // namespace

SwfTrace parse_swf(std::istream& in)
{
  SwfTrace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    std::string_view view(line);
    const auto begin = view.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos)
      continue;
    view.remove_prefix(begin);
    if (view.front() == ';')
      continue;

    std::array<std::int64_t, kFieldCount> fields{};
    std::size_t n = 0;
    while (!view.empty())
    {
      const auto end = view.find_first_of(" \t\r");
      const std::string_view token = view.substr(0, end);
      if (n < kFieldCount && !parse_number(token, fields[n]))
        throw ParseError(line_no, "field " + std::to_string(n + 1) + " is not numeric");
      ++n;
      if (end == std::string_view::npos)
        break;
      view.remove_prefix(end);
      const auto next = view.find_first_not_of(" \t\r");
      if (next == std::string_view::npos)
        break;
      view.remove_prefix(next);
    }
    if (n < kFieldCount)
    {
      throw ParseError(
        line_no, "expected 18 fields, found " + std::to_string(n));
    }

    Request r;
    r.id = fields[0];
    r.arrival = fields[1];
    r.runtime = std::max<std::int64_t>(fields[3], 0);
    r.duration = fields[8] > 0 ? fields[8] : fields[3];
    r.n_res = fields[7] > 0 ? fields[7] : fields[4];
    if (r.duration <= 0 || r.n_res <= 0)
    {
      ++trace.skipped;
      continue;
    }
    trace.requests.push_back(std::move(r));
  }
  return trace;
}

SwfTrace parse_swf_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError(0, "cannot open trace '" + path + "'");
  return parse_swf(in);
}

void write_swf(std::ostream& out, std::span<const Request> requests)
{
  out << "; Version: 2.2\n";
  out << "; Note: synthetic workload\n";
  for (const auto& r : requests)
  {
    const Duration runtime = r.runtime > 0 ? r.runtime : r.duration;
    out << r.id << ' ' << r.arrival << " -1 " << runtime << ' ' << r.n_res
        << " -1 -1 " << r.n_res << ' ' << r.duration
        << " -1 1 -1 -1 -1 -1 -1 -1 -1\n";
  }
}

} // namespace avail::sim
