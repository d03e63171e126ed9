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

#ifndef APGAME_SAP_H_
#define APGAME_SAP_H_

// Spatial adaptive play for a fixed pair of movers. At step k one mover is
// drawn uniformly at random and resamples its position from the logit rule
//
//   p(a) = exp(beta_k * u_hat(a, a_opp)) / sum_a' exp(beta_k * u_hat(a', a_opp))
//
// over the strategies that keep every user inside the arena and above the
// capture threshold. Among strategies tied on u_hat the one nearest the
// mover's current position is taken. The best profile seen is returned.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apgame/game.h"
#include "apgame/strategy_grid.h"

namespace apgame {

// SplitMix64 finalizer over master + counter; used to hand out independent
// per-run seeds.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t counter);

struct BetaSchedule {
  enum class Kind { kLinear, kConstant };
  Kind kind = Kind::kLinear;
  double scale = 1.0;
  // Lower bound on beta; matters only for k = 0 under the linear rule.
  double floor = 0.0;

  double operator()(int step) const;
};

struct SapConfig {
  int max_steps = 1000;
  BetaSchedule beta;
  std::uint64_t rng_seed = 0;
  // u_hat is expressed in 1/(utility_unit_bps) inside the logit, so beta
  // acts on utilities of order one (default: rates in Mb/s).
  double utility_unit_bps = 1e6;
  bool record_trace = true;

  void Validate() const;
};

// Numerically stable softmax of beta * utilities.
std::vector<double> Softmax(std::span<const double> utilities, double beta);

struct StrategyProbability {
  std::size_t strategy = 0;
  double probability = 0.0;
  double hat_utility = 0.0;  // in 1/(bit/s)
};

// The two-player game a scenario induces once the movers are fixed:
// non-movers sit at their initial positions and payoffs are shared.
class PairGame {
 public:
  PairGame(const Scenario& scenario, const StrategyGrid& grid,
           MovingPair pair, RateMode mode);

  const Scenario& scenario() const { return *scenario_; }
  const StrategyGrid& grid() const { return *grid_; }
  const MovingPair& pair() const { return pair_; }
  RateMode mode() const { return mode_; }

  // Profile with the movers snapped to their nearest grid strategies.
  PositionProfile SnappedInitial() const;

  // Payoff of `player` standing at each grid radius while the opponent is at
  // `opponent`. Entry i is empty when that radius violates capture for some
  // user.
  struct Response {
    double hat_utility = 0.0;
    double theta = 0.0;
  };
  std::vector<std::optional<Response>> Responses(
      std::size_t player, const Position& opponent) const;

  // Logit distribution over the feasible strategies of `player`. Throws
  // NoFeasibleStrategyError if there is none.
  std::vector<StrategyProbability> LogitDistribution(
      std::size_t player, const Position& opponent, double beta,
      double utility_unit_bps = 1e6) const;

 private:
  const Scenario* scenario_;
  const StrategyGrid* grid_;
  MovingPair pair_;
  RateMode mode_;
  std::vector<double> grid_power_;   // received power per grid radius
  std::vector<double> fixed_power_;  // received power per user at start
};

struct SapStep {
  int step = 0;
  std::size_t player = 0;
  std::size_t strategy = 0;
  Position position;
  double hat_utility = 0.0;
  double theta = 0.0;
  double best_theta = 0.0;
};

struct SapTrace {
  std::optional<double> initial_theta;  // set when the snapped start is feasible
  std::vector<SapStep> steps;
  int best_step = 0;  // 0 means the start profile
};

struct SapResult {
  PositionProfile profile;
  double theta = 0.0;
  SapTrace trace;
};

// Throws NoFeasibleStrategyError when neither mover has a feasible response.
SapResult RunSap(const Scenario& scenario, const StrategyGrid& grid,
                 MovingPair pair, const SapConfig& config, RateMode mode);

// Columns: step,player,d,psi,u_hat,theta
void WriteTraceCsv(std::ostream& out, const Scenario& scenario,
                   const SapTrace& trace);

}  // namespace apgame

#endif  // APGAME_SAP_H_
