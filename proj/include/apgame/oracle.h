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

#ifndef APGAME_ORACLE_H_
#define APGAME_ORACLE_H_

// Exhaustive reference solver for a fixed moving pair. It evaluates every
// joint grid strategy through the public game-core functions, so it shares
// no code path with the SAP solver's response tables.

#include <cstddef>
#include <optional>
#include <string>

#include "apgame/game.h"
#include "apgame/strategy_grid.h"

namespace apgame {

struct OracleReport {
  std::string grid;
  std::size_t total_profiles = 0;
  std::size_t feasible_profiles = 0;
  std::optional<double> best_theta;
  std::optional<PositionProfile> best_profile;
  bool nash_certificate = false;
};

inline constexpr std::size_t kDefaultOracleBudget = 4'000'000;

// Throws BudgetExceededError when |A_i| * |A_j| exceeds the budget.
OracleReport BruteForceBest(const Scenario& scenario, MovingPair pair,
                            const StrategyGrid& grid, RateMode mode,
                            std::size_t budget = kDefaultOracleBudget);

// True iff no mover has a feasible single-player grid deviation that
// strictly raises u_hat. Infeasible profiles are never equilibria.
bool VerifyNash(const Scenario& scenario, MovingPair pair,
                const StrategyGrid& grid, const PositionProfile& profile,
                RateMode mode);

std::string OracleReportJson(const Scenario& scenario,
                             const OracleReport& report);

}  // namespace apgame

#endif  // APGAME_ORACLE_H_
