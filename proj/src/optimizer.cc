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

#include "apgame/optimizer.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <fmt/core.h>

#include "apgame/errors.h"
#include "apgame/oracle.h"

namespace apgame {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void Finish(const Scenario& scenario, RateMode mode, OptimizationResult& r) {
  if (r.profile) r.rates = PerUserRates(scenario, *r.profile, mode);
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kProposed:
      return "proposed";
    case Method::kNoMove:
      return "no-move";
    case Method::kGreedy:
      return "greedy";
    case Method::kNewUsersGame:
      return "new-users";
  }
  return "";
}

Method ParseMethod(std::string_view name) {
  for (Method m : {Method::kProposed, Method::kNoMove, Method::kGreedy,
                   Method::kNewUsersGame}) {
    if (MethodName(m) == name) return m;
  }
  throw ValidationError(fmt::format(
      "unknown method '{}' (expected proposed, no-move, greedy, new-users)",
      name));
}

PairSolver SapPairSolver(SapConfig base) {
  base.record_trace = false;
  base.Validate();
  return [base](const Scenario& scenario, const StrategyGrid& grid,
                MovingPair pair, std::uint64_t seed, RateMode mode) {
    SapConfig config = base;
    config.rng_seed = seed;
    SapResult r = RunSap(scenario, grid, pair, config, mode);
    return PairOutcome{std::move(r.profile), r.theta};
  };
}

PairSolver OraclePairSolver(std::size_t budget) {
  return [budget](const Scenario& scenario, const StrategyGrid& grid,
                  MovingPair pair, std::uint64_t, RateMode mode) {
    OracleReport report = BruteForceBest(scenario, pair, grid, mode, budget);
    if (!report.best_profile) {
      throw NoFeasibleStrategyError(fmt::format(
          "pair ({}, {}) has no feasible joint strategy",
          scenario.user(pair.first).id, scenario.user(pair.second).id));
    }
    return PairOutcome{std::move(*report.best_profile), *report.best_theta};
  };
}

std::uint64_t PairSeed(std::uint64_t master, const Scenario& scenario,
                       MovingPair pair) {
  return DeriveSeed(master, pair.first * scenario.size() + pair.second);
}

OptimizationResult OptimizeAllPairs(const Scenario& scenario,
                                    const StrategyGrid& grid,
                                    const PairSolver& solver,
                                    std::uint64_t master_seed, RateMode mode) {
  const auto start = Clock::now();
  OptimizationResult result;
  result.method = Method::kProposed;
  const std::size_t n = scenario.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const MovingPair pair{x, y};
      const std::uint64_t seed = PairSeed(master_seed, scenario, pair);
      result.seeds.push_back(seed);
      ++result.pair_runs;
      try {
        PairOutcome out = solver(scenario, grid, pair, seed, mode);
        if (!result.theta ||
            PreferCandidate(scenario, out.theta, out.profile, *result.theta,
                            *result.profile)) {
          result.theta = out.theta;
          result.profile = std::move(out.profile);
          result.pair = pair;
        }
      } catch (const NoFeasibleStrategyError& e) {
        result.skipped.push_back(fmt::format(
            "({}, {}): {}", scenario.user(x).id, scenario.user(y).id,
            e.what()));
      }
    }
  }
  Finish(scenario, mode, result);
  result.wall_time_s = Seconds(start);
  return result;
}

OptimizationResult BaselineNoMove(const Scenario& scenario, RateMode mode) {
  const auto start = Clock::now();
  OptimizationResult result;
  result.method = Method::kNoMove;
  PositionProfile initial = PositionProfile::Initial(scenario);
  if (IsCaptureFeasible(scenario, initial)) {
    result.theta = SystemThroughput(scenario, initial, mode);
    result.profile = std::move(initial);
  } else {
    result.skipped.push_back("initial profile violates capture");
  }
  Finish(scenario, mode, result);
  result.wall_time_s = Seconds(start);
  return result;
}

MovingPair NewUserPair(const Scenario& scenario) {
  const auto fresh = scenario.IndicesWithRole(UserRole::kNew);
  if (fresh.size() != 2) {
    throw ValidationError(fmt::format(
        "baseline needs exactly two users labelled new, found {}",
        fresh.size()));
  }
  return MovingPair{fresh[0], fresh[1]};
}

OptimizationResult BaselineGreedyNewUsers(const Scenario& scenario,
                                          const StrategyGrid& grid,
                                          RateMode mode) {
  const auto start = Clock::now();
  OptimizationResult result;
  result.method = Method::kGreedy;
  const auto fresh = scenario.IndicesWithRole(UserRole::kNew);
  if (fresh.empty()) {
    throw ValidationError("greedy baseline needs users labelled new");
  }
  const RadioModel& model = scenario.model();
  PositionProfile profile = PositionProfile::Initial(scenario);
  for (std::size_t user : fresh) {
    struct Candidate {
      double snr;
      double sep;
      std::size_t s;
    };
    std::vector<Candidate> order;
    for (std::size_t s = 0; s < grid.size(); ++s) {
      if (!grid.in_arena(s)) continue;
      const Position p = grid.position(s);
      order.push_back({model.Snr(p.distance_m), Separation(profile[user], p), s});
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const Candidate& a, const Candidate& b) {
                       if (a.snr != b.snr) return a.snr > b.snr;
                       return a.sep < b.sep;
                     });
    const Position stay = profile[user];
    bool moved = false;
    for (const Candidate& c : order) {
      profile[user] = grid.position(c.s);
      if (IsCaptureFeasible(scenario, profile)) {
        moved = true;
        break;
      }
    }
    if (!moved) {
      profile[user] = stay;
      result.skipped.push_back(fmt::format(
          "user '{}' found no feasible grid point", scenario.user(user).id));
    }
  }
  if (IsCaptureFeasible(scenario, profile)) {
    result.theta = SystemThroughput(scenario, profile, mode);
    result.profile = std::move(profile);
  }
  Finish(scenario, mode, result);
  result.wall_time_s = Seconds(start);
  return result;
}

OptimizationResult BaselineNewUsersGame(const Scenario& scenario,
                                        const StrategyGrid& grid,
                                        const PairSolver& solver,
                                        std::uint64_t master_seed,
                                        RateMode mode) {
  const auto start = Clock::now();
  OptimizationResult result;
  result.method = Method::kNewUsersGame;
  const MovingPair pair = NewUserPair(scenario);
  const std::uint64_t seed = PairSeed(master_seed, scenario, pair);
  result.seeds.push_back(seed);
  result.pair_runs = 1;
  result.pair = pair;
  try {
    PairOutcome out = solver(scenario, grid, pair, seed, mode);
    result.theta = out.theta;
    result.profile = std::move(out.profile);
  } catch (const NoFeasibleStrategyError& e) {
    result.skipped.push_back(e.what());
  }
  Finish(scenario, mode, result);
  result.wall_time_s = Seconds(start);
  return result;
}

}  // namespace apgame
