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

#ifndef APGAME_REPORT_H_
#define APGAME_REPORT_H_

// Sweep driver and plot-ready output. Sweep CSV columns, in order:
//
//   pattern,method,d_A_m,psi_A_deg,theta_bps,delta_theta,user_positions_json,seed
//
// theta_bps and delta_theta are left empty when the method found no
// capture-feasible profile (or, for delta_theta, when the no-move baseline
// is infeasible). user_positions_json is a quoted JSON array of
// {"id","d","psi"} objects, empty when infeasible. seed is the sweep point
// seed from which every solver run of that point is derived.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apgame/manifest.h"
#include "apgame/optimizer.h"
#include "apgame/patterns.h"

namespace apgame {

inline constexpr const char* kSweepCsvHeader =
    "pattern,method,d_A_m,psi_A_deg,theta_bps,delta_theta,user_positions_json,"
    "seed";

struct UserPlacement {
  std::string id;
  Position position;

  friend bool operator==(const UserPlacement&, const UserPlacement&) = default;
};

struct SweepRow {
  std::string pattern;
  std::string method;
  double d_a_m = 0.0;
  double psi_a_deg = 0.0;
  std::optional<double> theta_bps;
  std::optional<double> delta_theta;
  std::vector<UserPlacement> positions;
  std::uint64_t seed = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepRequest {
  std::vector<PatternId> patterns;
  // Used instead of patterns when set; labelled `scenario_label`.
  std::optional<Scenario> scenario;
  std::string scenario_label = "file";
  std::vector<double> d_a_m;
  std::optional<double> psi_a_deg;
  std::vector<Method> methods;
  std::string grid = "default";
  SapConfig sap;
  RateMode mode = RateMode::kExact;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;
  PatternTable table = PatternTable::Builtin();
  // Per-pair solver for the game methods; SAP with `sap` when unset.
  std::optional<PairSolver> solver;
};

struct SweepPoint {
  std::string pattern;
  double d_a_m = 0.0;
  double psi_a_deg = 0.0;
  std::uint64_t seed = 0;
  std::optional<Scenario> scenario;
  std::optional<double> theta_no_move;
  std::vector<OptimizationResult> results;  // parallel to request.methods
};

std::uint64_t PointSeed(std::uint64_t master, PatternId pattern, double d_a_m,
                        double psi_a_deg);

// Evaluates every (pattern, d_A) point on a worker pool; output order is
// pattern-major, then d_A, independent of scheduling.
std::vector<SweepPoint> RunSweep(const SweepRequest& request);

std::vector<SweepRow> ToRows(std::span<const SweepPoint> points,
                             std::span<const Method> methods);

void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows);
// Throws ParseError on a malformed file.
std::vector<SweepRow> ReadSweepCsv(std::istream& in);

// Per pattern: best delta_theta, proposed-over-baseline ratios and a method
// ranking by mean theta.
std::string Summarize(std::span<const SweepRow> rows);

struct ManifestOutcome {
  std::vector<std::string> files;
  std::vector<SweepRow> rows;
};

// Writes sweep_<pattern>_<method>.csv, summary.csv, summary.txt and
// provenance.json under manifest.out_dir.
ManifestOutcome ExecuteManifest(const RunManifest& manifest, std::ostream& log);

}  // namespace apgame

#endif  // APGAME_REPORT_H_
