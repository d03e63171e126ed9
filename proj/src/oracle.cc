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

#include "apgame/oracle.h"

#include "json.hpp"

#include "apgame/errors.h"

namespace apgame {

OracleReport BruteForceBest(const Scenario& scenario, MovingPair pair,
                            const StrategyGrid& grid, RateMode mode,
                            std::size_t budget) {
  pair.Validate(scenario);
  const std::size_t n = grid.feasible_count();
  if (n * n > budget) throw BudgetExceededError(n * n, budget);

  OracleReport report;
  report.grid = grid.Describe();
  report.total_profiles = n * n;
  PositionProfile profile = PositionProfile::Initial(scenario);
  for (std::size_t si = 0; si < grid.size(); ++si) {
    if (!grid.in_arena(si)) continue;
    profile[pair.first] = grid.position(si);
    for (std::size_t sj = 0; sj < grid.size(); ++sj) {
      if (!grid.in_arena(sj)) continue;
      profile[pair.second] = grid.position(sj);
      if (!IsCaptureFeasible(scenario, profile)) continue;
      ++report.feasible_profiles;
      const double theta = SystemThroughput(scenario, profile, mode);
      if (!report.best_theta ||
          PreferCandidate(scenario, theta, profile, *report.best_theta,
                          *report.best_profile)) {
        report.best_theta = theta;
        report.best_profile = profile;
      }
    }
  }
  if (report.best_profile) {
    report.nash_certificate =
        VerifyNash(scenario, pair, grid, *report.best_profile, mode);
  }
  return report;
}

bool VerifyNash(const Scenario& scenario, MovingPair pair,
                const StrategyGrid& grid, const PositionProfile& profile,
                RateMode mode) {
  pair.Validate(scenario);
  if (profile.size() != scenario.size() ||
      !IsCaptureFeasible(scenario, profile)) {
    return false;
  }
  const double here = HatUtility(scenario, profile, mode);
  for (std::size_t player : {pair.first, pair.second}) {
    PositionProfile deviated = profile;
    for (std::size_t s = 0; s < grid.size(); ++s) {
      if (!grid.in_arena(s)) continue;
      deviated[player] = grid.position(s);
      if (!IsCaptureFeasible(scenario, deviated)) continue;
      if (HatUtility(scenario, deviated, mode) > here) return false;
    }
  }
  return true;
}

std::string OracleReportJson(const Scenario& scenario,
                             const OracleReport& report) {
  nlohmann::json j;
  j["grid"] = report.grid;
  j["total_profiles"] = report.total_profiles;
  j["feasible_profiles"] = report.feasible_profiles;
  j["nash_certificate"] = report.nash_certificate;
  if (report.best_theta) {
    j["best_theta_bps"] = *report.best_theta;
    nlohmann::json users = nlohmann::json::array();
    for (std::size_t i = 0; i < scenario.size(); ++i) {
      const Position& p = (*report.best_profile)[i];
      users.push_back(
          {{"id", scenario.user(i).id}, {"d", p.distance_m}, {"psi", p.angle_deg}});
    }
    j["best_profile"] = users;
  } else {
    j["best_theta_bps"] = nullptr;
    j["best_profile"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace apgame
