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

#include <cmath>
#include <sstream>
#include <vector>

#include "apgame/errors.h"
#include "apgame/oracle.h"
#include "apgame/patterns.h"
#include "apgame/sap.h"
#include "doctest.h"

namespace apgame {
namespace {

Scenario TwoUsers(double d1, double d2) {
  return Scenario(Arena::Default(), RadioParams{},
                  {{"X", Position::Polar(d1, 0)}, {"Y", Position::Polar(d2, 90)}});
}

SapConfig Config(std::uint64_t seed, int steps = 1000) {
  SapConfig c;
  c.rng_seed = seed;
  c.max_steps = steps;
  return c;
}

TEST_CASE("softmax") {
  const std::vector<double> u = {-1, -2};
  const auto p = Softmax(u, 1.0);
  const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
  CHECK(p[0] == doctest::Approx(e1 / (e1 + e2)).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(e2 / (e1 + e2)).epsilon(1e-14));
  CHECK(p[0] == doctest::Approx(0.7311).epsilon(1e-4));

  const std::vector<double> eq = {-3, -3};
  CHECK(Softmax(eq, 5.0) == std::vector<double>{0.5, 0.5});

  const std::vector<double> spread = {-1, -4, -9, -2};
  for (double x : Softmax(spread, 1e-12)) CHECK(x == doctest::Approx(0.25));

  // Large magnitudes stay finite thanks to the max shift.
  const std::vector<double> big = {-1e6, -1e6 - 1};
  const auto pb = Softmax(big, 1.0);
  CHECK(pb[0] + pb[1] == doctest::Approx(1.0).epsilon(1e-12));

  double prev = 0;
  for (double beta : {0.1, 0.5, 1.0, 2.0, 8.0, 64.0}) {
    const double top = Softmax(spread, beta)[0];
    CHECK(top >= prev);
    prev = top;
  }
}

TEST_CASE("logit distribution over feasible strategies") {
  const Scenario s = MakePattern(PatternId::kII, 15);
  const StrategyGrid g = StrategyGrid::Oracle(s.arena());
  const PairGame game(s, g, MovingPair::FromIds(s, "C", "D"), RateMode::kExact);
  const auto dist = game.LogitDistribution(2, s.user(3).initial, 1.0);
  double total = 0;
  for (const auto& e : dist) total += e.probability;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dist.size() == 48);

  const auto flat = game.LogitDistribution(2, s.user(3).initial, 1e-30);
  for (const auto& e : flat) {
    CHECK(e.probability == doctest::Approx(1.0 / flat.size()).epsilon(1e-9));
  }
  CHECK_THROWS_AS(game.LogitDistribution(0, s.user(3).initial, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(game.LogitDistribution(2, s.user(3).initial, 0.0),
                  ValidationError);
}

TEST_CASE("logit distribution with no feasible strategy") {
  // A sits at 30 m; any mover position at or inside 1 m next to two close
  // users breaks A's capture.
  const Scenario s(Arena::Default(), RadioParams{},
                   {{"A", Position::Polar(30, 90)},
                    {"B", Position::Polar(1, 0)},
                    {"C", Position::Polar(1, 180)},
                    {"D", Position::Polar(1, 270)}});
  const StrategyGrid g({1}, {0, 180}, s.arena());
  const PairGame game(s, g, MovingPair::FromIds(s, "C", "D"), RateMode::kExact);
  CHECK_THROWS_AS(game.LogitDistribution(2, Position{1, 0}, 1.0),
                  NoFeasibleStrategyError);
  CHECK_THROWS_AS(RunSap(s, g, MovingPair::FromIds(s, "C", "D"), Config(1),
                         RateMode::kExact),
                  NoFeasibleStrategyError);
}

TEST_CASE("singleton grid returns that profile at step 1") {
  const Scenario s = TwoUsers(3, 9);
  const StrategyGrid g({8}, {45}, s.arena());
  const SapResult r = RunSap(s, g, MovingPair{0, 1}, Config(3, 5), RateMode::kExact);
  CHECK(r.profile[0] == Position{8, 45});
  CHECK(r.profile[1] == Position{8, 45});
  CHECK(r.trace.steps.front().step == 1);
  CHECK(r.trace.best_step <= 1);
}

TEST_CASE("determinism and trace invariants") {
  const Scenario s = MakePattern(PatternId::kI, 20);
  const StrategyGrid g = StrategyGrid::Default(s.arena());
  const MovingPair pair = MovingPair::FromIds(s, "A", "C");
  const SapResult a = RunSap(s, g, pair, Config(42), RateMode::kExact);
  const SapResult b = RunSap(s, g, pair, Config(42), RateMode::kExact);
  std::ostringstream ta, tb;
  WriteTraceCsv(ta, s, a.trace);
  WriteTraceCsv(tb, s, b.trace);
  CHECK(ta.str() == tb.str());
  CHECK(a.profile == b.profile);
  CHECK(ta.str().rfind("step,player,d,psi,u_hat,theta\n", 0) == 0);

  REQUIRE(a.trace.steps.size() == 1000);
  double prev = a.trace.initial_theta.value_or(0.0);
  for (const SapStep& st : a.trace.steps) {
    CHECK(st.best_theta >= prev);
    prev = st.best_theta;
    CHECK(st.theta > 0);
  }
  CHECK(a.theta == prev);
  CHECK(IsCaptureFeasible(s, a.profile));
  CHECK(SystemThroughput(s, a.profile, RateMode::kExact) ==
        doctest::Approx(a.theta).epsilon(1e-12));
  // Non-movers keep their initial positions.
  CHECK(a.profile[1] == s.user(1).initial);
  CHECK(a.profile[3] == s.user(3).initial);

  const SapResult c = RunSap(s, g, pair, Config(43), RateMode::kExact);
  std::ostringstream tc;
  WriteTraceCsv(tc, s, c.trace);
  CHECK(tc.str() != ta.str());
}

TEST_CASE("off-grid initial positions are snapped") {
  const Scenario s = TwoUsers(7.4, 12.6);
  const StrategyGrid g = StrategyGrid::Default(s.arena());
  const PairGame game(s, g, MovingPair{0, 1}, RateMode::kExact);
  const PositionProfile p = game.SnappedInitial();
  CHECK(p[0] == Position{7, 0});
  CHECK(p[1] == Position{13, 90});
}

TEST_CASE("sap reaches the oracle optimum on a coarse grid") {
  const Scenario s = TwoUsers(12, 20);
  const StrategyGrid g = StrategyGrid::Regular(5, 25, 5, 45, s.arena());
  const MovingPair pair{0, 1};
  const OracleReport best = BruteForceBest(s, pair, g, RateMode::kExact);
  REQUIRE(best.best_theta);
  double top = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    top = std::max(top, RunSap(s, g, pair, Config(seed), RateMode::kExact).theta);
  }
  CHECK(top >= 0.98 * *best.best_theta);
  CHECK(top <= *best.best_theta * (1 + 1e-12));
}

TEST_CASE("configuration validation") {
  SapConfig c;
  CHECK_NOTHROW(c.Validate());
  c.max_steps = 0;
  CHECK_THROWS_AS(c.Validate(), ValidationError);
  c = SapConfig{};
  c.beta.scale = 0;
  CHECK_THROWS_AS(c.Validate(), ValidationError);
  c = SapConfig{};
  c.utility_unit_bps = -1;
  CHECK_THROWS_AS(c.Validate(), ValidationError);
  BetaSchedule b;
  CHECK(b(1) == 1.0);
  CHECK(b(7) == 7.0);
  b.kind = BetaSchedule::Kind::kConstant;
  b.scale = 2.5;
  CHECK(b(7) == 2.5);
  CHECK(DeriveSeed(1, 2) == DeriveSeed(1, 2));
  CHECK(DeriveSeed(1, 2) != DeriveSeed(1, 3));
  CHECK(DeriveSeed(1, 2) != DeriveSeed(2, 2));
}

}  // namespace
}  // namespace apgame
