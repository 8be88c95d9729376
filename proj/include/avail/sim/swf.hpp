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

#ifndef AVAIL__SIM__SWF_HPP
#define AVAIL__SIM__SWF_HPP

#include <avail/scheduler.hpp>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace avail::sim {

// Standard Workload Format, one job per line, 18 fields:
//   1 job id            7 memory used        13 group id
//   2 submit time       8 requested procs    14 executable
//   3 wait time         9 requested time     15 queue
//   4 run time         10 requested memory   16 partition
//   5 allocated procs  11 status             17 preceding job
//   6 cpu time used    12 user id            18 think time
// Lines starting with ';' are header comments.

struct SwfTrace
{
  std::vector<Request> requests;
  /// Jobs dropped because neither the requested nor the actual size or
  /// time was positive.
  std::size_t skipped = 0;
};

/// Reads requests from an SWF stream. The duration is the requested time,
/// falling back to the run time; the size is the requested processor count,
/// falling back to the allocated count. Throws ParseError with the line
/// number on malformed lines.
SwfTrace parse_swf(std::istream& in);

/// Throws ParseError (line 0) when the file cannot be opened.
SwfTrace parse_swf_file(const std::string& path);

/// Writes requests as SWF lines, with -1 in the fields the library ignores.
void write_swf(std::ostream& out, std::span<const Request> requests);

} // namespace avail::sim

#endif // AVAIL__SIM__SWF_HPP
