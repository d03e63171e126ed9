// Copyright 2026 The apgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// apgame: command-line front end.
//
//   apgame run MANIFEST.json
//   apgame sweep --pattern I --method proposed --method no-move
//   apgame oracle --pattern I --d-a 15 --pair C,D
//   apgame show out/summary.csv

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "apgame/errors.h"
#include "apgame/manifest.h"
#include "apgame/oracle.h"
#include "apgame/report.h"
#include "apgame/scenario_io.h"
#include "apgame/strategy_grid.h"

namespace {

using namespace apgame;

std::vector<PatternId> ParsePatterns(const std::vector<std::string>& names) {
  std::vector<PatternId> out;
  for (const std::string& n : names) {
    if (n == "all") {
      for (PatternId id : AllPatterns()) out.push_back(id);
    } else {
      out.push_back(ParsePattern(n));
    }
  }
  return out;
}

int RunShow(const std::vector<std::string>& files) {
  std::vector<SweepRow> rows;
  for (const std::string& f : files) {
    std::ifstream in(f);
    if (!in) throw Error(fmt::format("cannot open '{}'", f));
    try {
      auto part = ReadSweepCsv(in);
      rows.insert(rows.end(), part.begin(), part.end());
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("{}: {}", f, e.what()));
    }
  }
  if (rows.empty()) throw ValidationError("no rows to summarize");
  std::cout << Summarize(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-AP user positioning via a potential game"};
  app.require_subcommand(1);

  // run
  std::string manifest_path;
  auto* run = app.add_subcommand("run", "Execute a run manifest");
  run->add_option("manifest", manifest_path, "Manifest JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  // sweep
  std::vector<std::string> patterns;
  std::vector<std::string> methods;
  std::string d_a_range;
  std::optional<double> psi_a;
  std::uint64_t seed = 1;
  std::string grid = "default";
  std::string mode = "exact";
  std::string out_dir = DefaultOutDir();
  std::size_t steps = SapConfig{}.max_steps;
  unsigned threads = 0;
  std::string scenario_file;
  std::string patterns_file;
  auto* sweep = app.add_subcommand("sweep", "Sweep d_A over patterns and methods");
  sweep->add_option("--pattern", patterns, "Pattern I..VI or 'all' (repeatable)");
  sweep->add_option("--scenario", scenario_file, "Scenario JSON instead of a pattern")
      ->check(CLI::ExistingFile);
  sweep->add_option("--method", methods,
                    "proposed | no-move | greedy | new-users (repeatable)")
      ->required();
  sweep->add_option("--d-a-range", d_a_range,
                    "d_A values: 'A:B', 'A:B:STEP' or 'x,y,z' (default: pattern sweep)");
  sweep->add_option("--psi-a", psi_a, "Bearing of user A in degrees");
  sweep->add_option("--seed", seed, "Master seed");
  sweep->add_option("--grid", grid, "default | oracle | cardinal | DMIN:DSTEP:DMAX/ASTEP");
  sweep->add_option("--mode", mode, "Rate model")->check(CLI::IsMember({"exact", "approx"}));
  sweep->add_option("--out", out_dir, fmt::format("Output directory (env {})", kOutDirEnv));
  sweep->add_option("--steps", steps, "SAP iterations per pair run");
  sweep->add_option("--threads", threads, "Worker threads (0: all cores)");
  sweep->add_option("--patterns-file", patterns_file, "Pattern table JSON")
      ->check(CLI::ExistingFile);

  // oracle
  std::string o_pattern = "I";
  double o_d_a = 15.0;
  std::optional<double> o_psi_a;
  std::string o_scenario;
  std::string o_pair = "C,D";
  std::string o_grid = "oracle";
  std::string o_mode = "exact";
  std::size_t o_budget = kDefaultOracleBudget;
  auto* oracle = app.add_subcommand("oracle", "Brute-force best profile for one pair");
  oracle->add_option("--pattern", o_pattern, "Pattern I..VI");
  oracle->add_option("--d-a", o_d_a, "Distance of user A from the AP in metres");
  oracle->add_option("--psi-a", o_psi_a, "Bearing of user A in degrees");
  oracle->add_option("--scenario", o_scenario, "Scenario JSON instead of a pattern")
      ->check(CLI::ExistingFile);
  oracle->add_option("--pair", o_pair, "Moving pair as 'ID,ID'");
  oracle->add_option("--grid", o_grid, "Strategy grid");
  oracle->add_option("--mode", o_mode, "Rate model")->check(CLI::IsMember({"exact", "approx"}));
  oracle->add_option("--budget", o_budget, "Maximum joint profiles");

  // show
  std::vector<std::string> show_files;
  auto* show = app.add_subcommand("show", "Summarize sweep CSV files");
  show->add_option("csv", show_files, "Sweep CSV files")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExecuteManifest(LoadManifest(manifest_path), std::cout);
      return 0;
    }
    if (*sweep) {
      RunManifest m;
      if (!scenario_file.empty()) {
        m.scenario.file = std::filesystem::absolute(scenario_file).string();
      } else {
        m.scenario.patterns = ParsePatterns(patterns.empty()
                                                ? std::vector<std::string>{"I"}
                                                : patterns);
      }
      if (!d_a_range.empty()) m.scenario.d_a_m = ParseRange(d_a_range);
      m.scenario.psi_a_deg = psi_a;
      for (const std::string& name : methods) m.methods.push_back(ParseMethod(name));
      m.grid = grid;
      m.sap.max_steps = steps;
      m.master_seed = seed;
      m.mode = ParseRateMode(mode);
      m.out_dir = out_dir;
      m.threads = threads;
      if (!patterns_file.empty()) m.patterns_file = patterns_file;
      ExecuteManifest(m, std::cout);
      return 0;
    }
    if (*oracle) {
      const Scenario sc =
          o_scenario.empty()
              ? MakePattern(ParsePattern(o_pattern), o_d_a, o_psi_a.value_or(
                    PatternTable::Builtin().Get(ParsePattern(o_pattern)).psi_a_deg))
              : LoadScenario(o_scenario);
      const auto comma = o_pair.find(',');
      if (comma == std::string::npos) {
        throw ValidationError(fmt::format("--pair '{}': expected 'ID,ID'", o_pair));
      }
      const MovingPair pair = MovingPair::FromIds(sc, o_pair.substr(0, comma),
                                                  o_pair.substr(comma + 1));
      const StrategyGrid g = StrategyGrid::Parse(o_grid, sc.arena());
      const OracleReport report =
          BruteForceBest(sc, pair, g, ParseRateMode(o_mode), o_budget);
      std::cout << OracleReportJson(sc, report) << '\n';
      return report.best_theta ? 0 : 3;
    }
    if (*show) return RunShow(show_files);
  } catch (const ValidationError& e) {
    std::cerr << "apgame: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "apgame: parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "apgame: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
