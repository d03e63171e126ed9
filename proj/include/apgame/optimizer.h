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

#ifndef APGAME_OPTIMIZER_H_
#define APGAME_OPTIMIZER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apgame/game.h"
#include "apgame/sap.h"
#include "apgame/strategy_grid.h"

namespace apgame {

enum class Method {
  kProposed,      // every pair of users may move
  kNoMove,        // initial positions
  kGreedy,        // new users walk toward the AP, interference-blind
  kNewUsersGame,  // game restricted to the new-user pair
};

std::string_view MethodName(Method method);
Method ParseMethod(std::string_view name);

struct OptimizationResult {
  Method method = Method::kNoMove;
  std::optional<MovingPair> pair;
  // Set iff a capture-feasible profile was found.
  std::optional<PositionProfile> profile;
  std::vector<double> rates;
  std::optional<double> theta;
  std::vector<std::uint64_t> seeds;
  std::size_t pair_runs = 0;
  std::vector<std::string> skipped;
  double wall_time_s = 0.0;

  bool feasible() const { return theta.has_value(); }
};

struct PairOutcome {
  PositionProfile profile;
  double theta = 0.0;
};

// Solves the game of one moving pair. Implementations throw
// NoFeasibleStrategyError when the pair admits no feasible profile.
using PairSolver = std::function<PairOutcome(
    const Scenario&, const StrategyGrid&, MovingPair, std::uint64_t seed,
    RateMode)>;

// SAP with `base`, reseeded per run.
PairSolver SapPairSolver(SapConfig base);
// Exhaustive search; ignores the seed.
PairSolver OraclePairSolver(std::size_t budget = 4'000'000);

// Seed of the run with ordered movers (first, second).
std::uint64_t PairSeed(std::uint64_t master, const Scenario& scenario,
                       MovingPair pair);

// Runs the solver for every ordered pair (X, Y), X != Y, and keeps the best
// theta. Pairs without feasible profiles are skipped and listed in
// `skipped`.
OptimizationResult OptimizeAllPairs(const Scenario& scenario,
                                    const StrategyGrid& grid,
                                    const PairSolver& solver,
                                    std::uint64_t master_seed, RateMode mode);

OptimizationResult BaselineNoMove(const Scenario& scenario, RateMode mode);

// New users, in scenario order, each jump to the grid point with the highest
// interference-free rate W log2(1 + SNR) that keeps the profile feasible,
// preferring points close to where they stand. Existing users stay put.
OptimizationResult BaselineGreedyNewUsers(const Scenario& scenario,
                                          const StrategyGrid& grid,
                                          RateMode mode);

// One solver run with the two new users as movers, seeded as the same
// ordered pair would be inside OptimizeAllPairs.
OptimizationResult BaselineNewUsersGame(const Scenario& scenario,
                                        const StrategyGrid& grid,
                                        const PairSolver& solver,
                                        std::uint64_t master_seed,
                                        RateMode mode);

// The two users labelled new; throws ValidationError unless exactly two.
MovingPair NewUserPair(const Scenario& scenario);

}  // namespace apgame

#endif  // APGAME_OPTIMIZER_H_
