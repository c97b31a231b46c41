/*
 * Copyright 2026 The popctl Authors
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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Path-tracking controller benchmark: proximal steering "
               "search vs PID, Pure-Pursuit, and Stanley baselines on a "
               "kinematic bicycle plant"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out_dir;
  std::string out_file;
  std::string spec;
  int iterations = 1;
  bool deterministic = false;

  CLI::App* sim = app.add_subcommand("simulate", "Run one scenario");
  sim->add_option("scenario", scenario, "Scenario JSON file")->required();
  sim->add_option("-o,--output", out_dir, "Output directory (default .)");
  sim->add_flag("--deterministic", deterministic,
                "Zero latency fields for byte-stable outputs");

  CLI::App* cmp = app.add_subcommand(
      "compare", "Run every controller of a scenario and rank them");
  cmp->add_option("scenario", scenario, "Scenario JSON file")->required();
  cmp->add_option("-o,--output", out_dir, "Output directory (default .)");
  cmp->add_flag("--deterministic", deterministic,
                "Zero latency fields for byte-stable outputs");

  CLI::App* bench = app.add_subcommand(
      "bench", "Measure lateral-controller latency over repeated runs");
  bench->add_option("scenario", scenario, "Scenario JSON file")->required();
  bench->add_option("-n,--iterations", iterations, "Repeat count (default 1)")
      ->check(CLI::PositiveNumber);

  CLI::App* gen = app.add_subcommand("gen-track",
                                     "Generate a track CSV from a spec file");
  gen->add_option("spec", spec, "Track spec JSON file")->required();
  gen->add_option("-o,--output", out_file, "Output CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "popctl: " << e.what() << "\n";
    return popctl::tools::kExitUsage;
  }

  if (sim->parsed())
    return popctl::tools::cmd_simulate(scenario, out_dir, deterministic);
  if (cmp->parsed())
    return popctl::tools::cmd_compare(scenario, out_dir, deterministic);
  if (bench->parsed()) return popctl::tools::cmd_bench(scenario, iterations);
  return popctl::tools::cmd_gen_track(spec, out_file);
}
