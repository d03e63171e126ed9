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

#ifndef APGAME_SCENARIO_IO_H_
#define APGAME_SCENARIO_IO_H_

// JSON scenario files:
//
//   {
//     "arena": {"width": 60, "height": 60, "ap": [30, 30]},
//     "radio": {"bandwidth_hz": 2e7, "noise_w": 1e-13, ...},
//     "users": [{"id": "A", "d": 5, "psi": 90, "label": "existing"}, ...]
//   }
//
// Missing radio keys take their default values; unknown keys are rejected.

#include <string>
#include <string_view>

#include "apgame/game.h"
#include "json.hpp"

namespace apgame {

nlohmann::json RadioToJson(const RadioParams& radio);
RadioParams RadioFromJson(const nlohmann::json& j, std::string_view where);

nlohmann::json ScenarioToJson(const Scenario& scenario);
// `source` prefixes every error message.
Scenario ScenarioFromJson(const nlohmann::json& j, std::string_view source);

void SaveScenario(const Scenario& scenario, const std::string& path);
Scenario LoadScenario(const std::string& path);

}  // namespace apgame

#endif  // APGAME_SCENARIO_IO_H_
