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

#ifndef APGAME_MANIFEST_H_
#define APGAME_MANIFEST_H_

// Run manifests describe one batch of sweeps:
//
//   {
//     "scenario": {"patterns": ["I", "II"], "d_A": "1:30", "psi_A": 90},
//     "grid": "default",
//     "sap": {"max_steps": 1000,
//             "beta": {"kind": "linear", "scale": 1.0, "floor": 0.0},
//             "utility_unit_bps": 1e6},
//     "seed": 7,
//     "mode": "exact",
//     "methods": ["proposed", "no-move", "greedy", "new-users"],
//     "out_dir": "out",
//     "threads": 0
//   }
//
// "scenario" may instead be {"file": "scenario.json"}. Relative paths are
// resolved against the manifest's directory. Without "out_dir" the
// APGAME_OUT_DIR environment variable is used, then "apgame_out".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apgame/optimizer.h"
#include "apgame/patterns.h"
#include "apgame/radio.h"
#include "apgame/sap.h"
#include "json.hpp"

namespace apgame {

inline constexpr const char* kOutDirEnv = "APGAME_OUT_DIR";

// "A:B" or "A:B:STEP" (inclusive) or "x,y,z".
std::vector<double> ParseRange(std::string_view text);

struct ScenarioSource {
  std::vector<PatternId> patterns;
  std::optional<std::string> file;
  std::vector<double> d_a_m;          // empty: the pattern's own sweep
  std::optional<double> psi_a_deg;    // empty: the pattern's own bearing
};

struct RunManifest {
  ScenarioSource scenario;
  std::string grid = "default";
  SapConfig sap;
  std::uint64_t master_seed = 1;
  RateMode mode = RateMode::kExact;
  std::vector<Method> methods;
  std::string out_dir = "apgame_out";
  std::optional<std::string> patterns_file;
  unsigned threads = 0;  // 0: hardware concurrency

  // Methods non-empty and the output directory creatable and writable.
  void Validate() const;
};

std::string DefaultOutDir();

nlohmann::json SapConfigToJson(const SapConfig& sap);
SapConfig SapConfigFromJson(const nlohmann::json& j, std::string_view where);

RunManifest ManifestFromJson(const nlohmann::json& j, std::string_view source,
                             const std::filesystem::path& base_dir);
RunManifest LoadManifest(const std::string& path);
nlohmann::json ManifestToJson(const RunManifest& manifest);

}  // namespace apgame

#endif  // APGAME_MANIFEST_H_
