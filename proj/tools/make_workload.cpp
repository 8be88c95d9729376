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

// Writes a seeded synthetic batch workload as an SWF trace.

#include <avail/sim/swf.hpp>
#include <avail/sim/workload.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
  avail::sim::SyntheticWorkload spec;
  std::string out_path;

  CLI::App app{"Generate a synthetic SWF workload"};
  app.add_option("--out", out_path, "Output SWF file")->required();
  app.add_option("--jobs", spec.jobs, "Number of jobs");
  app.add_option("--capacity", spec.capacity, "Machine size")->check(CLI::PositiveNumber);
  app.add_option("--load", spec.load, "Offered load")->check(CLI::Range(0.01, 10.0));
  app.add_option("--node-size", spec.node_size, "Processors per node")
    ->check(CLI::PositiveNumber);
  app.add_option("--seed", spec.seed, "Random seed");
  CLI11_PARSE(app, argc, argv);

  std::ofstream out(out_path);
  if (!out)
  {
    std::cerr << "error: cannot open '" << out_path << "'\n";
    return 1;
  }
  const auto jobs = avail::sim::make_synthetic_workload(spec);
  avail::sim::write_swf(out, jobs);
  out.close();
  if (!out)
  {
    std::cerr << "error: failed writing '" << out_path << "'\n";
    return 1;
  }
  return 0;
}
