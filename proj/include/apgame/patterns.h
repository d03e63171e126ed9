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

#ifndef APGAME_PATTERNS_H_
#define APGAME_PATTERNS_H_

// The six benchmark layouts: users A, B (existing) and C, D (new) around an
// AP in the centre of a 60 m x 60 m area. B, C, D are fixed per pattern; A's
// initial distance is swept.

#include <string>
#include <string_view>
#include <vector>

#include "apgame/game.h"
#include "json.hpp"

namespace apgame {

enum class PatternId { kI = 1, kII, kIII, kIV, kV, kVI };

std::string_view PatternName(PatternId id);
// Accepts roman numerals (I..VI) or 1..6.
PatternId ParsePattern(std::string_view name);
std::vector<PatternId> AllPatterns();

struct PatternSpec {
  PatternId id = PatternId::kI;
  Position b;
  Position c;
  Position d;
  double psi_a_deg = 90.0;
  std::vector<double> sweep_d_a_m;
  // Coordinates read off a drawing rather than stated numerically.
  bool approximate = false;
};

class PatternTable {
 public:
  // Patterns I-III are exact; IV-VI carry approximate placements.
  static const PatternTable& Builtin();
  static PatternTable FromJson(const nlohmann::json& j,
                               std::string_view source);
  static PatternTable FromFile(const std::string& path);

  const PatternSpec& Get(PatternId id) const;
  const std::vector<PatternSpec>& specs() const { return specs_; }
  nlohmann::json ToJson() const;

 private:
  std::vector<PatternSpec> specs_;
};

// Scenario with A at (d_a, psi_a) and B, C, D from the table; default arena
// and radio parameters. Throws ValidationError if A leaves the arena.
Scenario MakePattern(PatternId id, double d_a_m, double psi_a_deg = 90.0,
                     const PatternTable& table = PatternTable::Builtin());

}  // namespace apgame

#endif  // APGAME_PATTERNS_H_
