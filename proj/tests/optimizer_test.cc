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

#include <vector>

#include "apgame/errors.h"
#include "apgame/optimizer.h"
#include "apgame/patterns.h"
#include "doctest.h"
#include "reference_model.h"

namespace apgame {
namespace {

SapConfig Sap() { return SapConfig{}; }

TEST_CASE("all ordered pairs are run") {
  const Scenario two(Arena::Default(), RadioParams{},
                     {{"X", Position::Polar(4, 0)}, {"Y", Position::Polar(9, 90)}});
  const StrategyGrid g = StrategyGrid::Oracle(two.arena());
  const OptimizationResult r2 =
      OptimizeAllPairs(two, g, SapPairSolver(Sap()), 5, RateMode::kExact);
  CHECK(r2.pair_runs == 2);
  CHECK(r2.seeds.size() == 2);
  CHECK(r2.seeds[0] != r2.seeds[1]);
  // The better of the two runs.
  double best = 0;
  for (MovingPair p : {MovingPair{0, 1}, MovingPair{1, 0}}) {
    SapConfig c = Sap();
    c.rng_seed = PairSeed(5, two, p);
    best = std::max(best, RunSap(two, g, p, c, RateMode::kExact).theta);
  }
  CHECK(*r2.theta == best);

  const Scenario four = MakePattern(PatternId::kI, 12);
  const OptimizationResult r4 = OptimizeAllPairs(
      four, StrategyGrid::Default(four.arena()), SapPairSolver(Sap()), 5,
      RateMode::kExact);
  CHECK(r4.pair_runs == 12);
  CHECK(r4.skipped.empty());
  REQUIRE(r4.profile);
  CHECK(SystemThroughput(four, *r4.profile, RateMode::kExact) ==
        doctest::Approx(*r4.theta).epsilon(1e-9));
  CHECK(testing::RelErr(ThroughputFromRates(r4.rates), *r4.theta) < 1e-9);
}

TEST_CASE("no-move baseline") {
  const Scenario s = MakePattern(PatternId::kI, 5);
  const OptimizationResult r = BaselineNoMove(s, RateMode::kExact);
  REQUIRE(r.profile);
  CHECK(*r.profile == PositionProfile::Initial(s));
  for (double x : r.rates) CHECK(x == r.rates[0]);
  CHECK(*r.theta == doctest::Approx(r.rates[0]).epsilon(1e-12));
  CHECK(ImprovementRatio(*r.theta, *r.theta) == 1.0);

  const Scenario bad = MakePattern(PatternId::kI, 30);
  const OptimizationResult rb = BaselineNoMove(bad, RateMode::kExact);
  CHECK_FALSE(rb.feasible());
  CHECK_FALSE(rb.profile);
}

TEST_CASE("greedy baseline") {
  const Scenario s = MakePattern(PatternId::kII, 10);
  const StrategyGrid g = StrategyGrid::Default(s.arena());
  const OptimizationResult r = BaselineGreedyNewUsers(s, g, RateMode::kExact);
  REQUIRE(r.profile);
  CHECK((*r.profile)[0] == s.user(0).initial);
  CHECK((*r.profile)[1] == s.user(1).initial);
  // C moves toward the AP on its own bearing, stopping at the first radius
  // that keeps B (still at 15 m) above the capture threshold.
  const Position c = (*r.profile)[2];
  CHECK(c.angle_deg == 180);
  CHECK(c.distance_m < 15);
  CHECK(IsCaptureFeasible(s, *r.profile));
  PositionProfile closer = PositionProfile::Initial(s);
  closer[2] = Position{c.distance_m - 1, 180};
  CHECK_FALSE(IsCaptureFeasible(s, closer));

  // Without the capture constraint binding, a new user goes straight to 1 m.
  const Scenario lone(Arena::Default(), RadioParams{},
                      {{"A", Position::Polar(4, 90), UserRole::kExisting},
                       {"C", Position::Polar(15, 180), UserRole::kNew}});
  const OptimizationResult rl = BaselineGreedyNewUsers(lone, g, RateMode::kExact);
  CHECK((*rl.profile)[1] == Position{1, 180});

  // Pattern II with A far out: A's rate is the minimum and greedy loses.
  const Scenario far = MakePattern(PatternId::kII, 30);
  const OptimizationResult gr = BaselineGreedyNewUsers(far, g, RateMode::kExact);
  REQUIRE(gr.feasible());
  CHECK(gr.rates[0] == *std::min_element(gr.rates.begin(), gr.rates.end()));
  const OptimizationResult pr =
      OptimizeAllPairs(far, g, SapPairSolver(Sap()), 1, RateMode::kExact);
  CHECK(*pr.theta > *gr.theta);
}

TEST_CASE("new-users game baseline") {
  const Scenario s = MakePattern(PatternId::kI, 25);
  const StrategyGrid g = StrategyGrid::Default(s.arena());
  const OptimizationResult r =
      BaselineNewUsersGame(s, g, SapPairSolver(Sap()), 3, RateMode::kExact);
  REQUIRE(r.profile);
  CHECK(r.pair_runs == 1);
  CHECK((*r.profile)[0] == s.user(0).initial);
  CHECK((*r.profile)[1] == s.user(1).initial);
  const OptimizationResult pro =
      OptimizeAllPairs(s, g, SapPairSolver(Sap()), 3, RateMode::kExact);
  CHECK(*pro.theta > *r.theta);
  // Same seed as the (C, D) run inside the all-pairs search.
  CHECK(r.seeds[0] == PairSeed(3, s, MovingPair{2, 3}));

  const Scenario two(Arena::Default(), RadioParams{},
                     {{"X", Position::Polar(4, 0)}, {"Y", Position::Polar(9, 90)}});
  CHECK_THROWS_AS(BaselineNewUsersGame(two, g, SapPairSolver(Sap()), 1,
                                       RateMode::kExact),
                  ValidationError);
  CHECK_THROWS_AS(BaselineGreedyNewUsers(two, g, RateMode::kExact),
                  ValidationError);
}

TEST_CASE("dominance with oracle evaluation") {
  const StrategyGrid g = StrategyGrid::Oracle(Arena::Default());
  for (PatternId id : {PatternId::kI, PatternId::kII, PatternId::kIII}) {
    for (double da : {3.0, 15.0, 28.0}) {
      const Scenario s = MakePattern(id, da);
      const OptimizationResult pro =
          OptimizeAllPairs(s, g, OraclePairSolver(), 1, RateMode::kExact);
      const OptimizationResult nu =
          BaselineNewUsersGame(s, g, OraclePairSolver(), 1, RateMode::kExact);
      REQUIRE(pro.feasible());
      if (nu.feasible()) CHECK(*pro.theta >= *nu.theta);
    }
  }
}

TEST_CASE("pair with no feasible strategies is skipped") {
  const Scenario s(Arena::Default(), RadioParams{},
                   {{"A", Position::Polar(30, 90)},
                    {"B", Position::Polar(1, 0)},
                    {"C", Position::Polar(1, 180)}});
  const StrategyGrid g({1}, {0, 180}, s.arena());
  const OptimizationResult r =
      OptimizeAllPairs(s, g, OraclePairSolver(), 1, RateMode::kExact);
  CHECK(r.pair_runs == 6);
  CHECK_FALSE(r.skipped.empty());
}

TEST_CASE("method names") {
  CHECK(ParseMethod("new-users") == Method::kNewUsersGame);
  CHECK(MethodName(Method::kNoMove) == "no-move");
  CHECK_THROWS_AS(ParseMethod("best"), ValidationError);
}

}  // namespace
}  // namespace apgame
