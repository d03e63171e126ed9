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

#include "apgame/sap.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "apgame/errors.h"

namespace apgame {
namespace {

double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double BetaSchedule::operator()(int step) const {
  const double raw = kind == Kind::kLinear ? scale * step : scale;
  return std::max(raw, floor);
}

void SapConfig::Validate() const {
  if (max_steps < 1) {
    throw ValidationError(fmt::format("sap.max_steps = {} must be >= 1",
                                      max_steps));
  }
  if (!(beta(1) > 0) || !std::isfinite(beta(max_steps))) {
    throw ValidationError("sap beta schedule must be positive and finite");
  }
  if (!(utility_unit_bps > 0)) {
    throw ValidationError("sap.utility_unit_bps must be > 0");
  }
}

std::vector<double> Softmax(std::span<const double> utilities, double beta) {
  std::vector<double> p(utilities.size());
  if (utilities.empty()) return p;
  const double top = *std::max_element(utilities.begin(), utilities.end());
  double total = 0.0;
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    p[i] = std::exp(beta * (utilities[i] - top));
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

PairGame::PairGame(const Scenario& scenario, const StrategyGrid& grid,
                   MovingPair pair, RateMode mode)
    : scenario_(&scenario), grid_(&grid), pair_(pair), mode_(mode) {
  pair_.Validate(scenario);
  const RadioModel& model = scenario.model();
  grid_power_.reserve(grid.distances().size());
  for (double d : grid.distances()) grid_power_.push_back(model.ReceivedPower(d));
  fixed_power_.reserve(scenario.size());
  for (const User& u : scenario.users()) {
    fixed_power_.push_back(model.ReceivedPower(u.initial.distance_m));
  }
}

PositionProfile PairGame::SnappedInitial() const {
  PositionProfile profile = PositionProfile::Initial(*scenario_);
  for (std::size_t mover : {pair_.first, pair_.second}) {
    profile[mover] = grid_->position(grid_->Nearest(profile[mover]));
  }
  return profile;
}

std::vector<std::optional<PairGame::Response>> PairGame::Responses(
    std::size_t player, const Position& opponent) const {
  const RadioModel& model = scenario_->model();
  std::vector<double> powers = fixed_power_;
  powers[pair_.Other(player)] = model.ReceivedPower(opponent.distance_m);
  std::vector<double> rates(powers.size());
  std::vector<std::optional<Response>> out(grid_power_.size());
  const double noise = model.params().noise_w;
  for (std::size_t di = 0; di < grid_power_.size(); ++di) {
    powers[player] = grid_power_[di];
    bool ok = true;
    for (std::size_t x = 0; x < powers.size() && ok; ++x) {
      const double sinr = model.SinrFromPowers(x, powers);
      if (!model.CaptureOk(sinr)) {
        ok = false;
        break;
      }
      rates[x] = model.RateFromRatios(powers[x] / noise, sinr, mode_);
    }
    if (!ok) continue;
    out[di] = Response{HatUtilityFromRates(rates), ThroughputFromRates(rates)};
  }
  return out;
}

std::vector<StrategyProbability> PairGame::LogitDistribution(
    std::size_t player, const Position& opponent, double beta,
    double utility_unit_bps) const {
  if (!pair_.Contains(player)) {
    throw ValidationError(fmt::format("user '{}' is not a mover",
                                      scenario_->user(player).id));
  }
  if (!(beta > 0)) {
    throw ValidationError(fmt::format("beta = {} must be > 0", beta));
  }
  const auto responses = Responses(player, opponent);
  std::vector<StrategyProbability> out;
  std::vector<double> scaled;
  for (std::size_t s = 0; s < grid_->size(); ++s) {
    if (!grid_->in_arena(s)) continue;
    const auto& r = responses[grid_->distance_index(s)];
    if (!r) continue;
    out.push_back({s, 0.0, r->hat_utility});
    scaled.push_back(r->hat_utility * utility_unit_bps);
  }
  if (out.empty()) {
    throw NoFeasibleStrategyError(fmt::format(
        "user '{}' has no feasible strategy with '{}' at ({} m, {} deg)",
        scenario_->user(player).id, scenario_->user(pair_.Other(player)).id,
        opponent.distance_m, opponent.angle_deg));
  }
  const auto p = Softmax(scaled, beta);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].probability = p[i];
  return out;
}

SapResult RunSap(const Scenario& scenario, const StrategyGrid& grid,
                 MovingPair pair, const SapConfig& config, RateMode mode) {
  config.Validate();
  const PairGame game(scenario, grid, pair, mode);
  std::mt19937_64 rng(config.rng_seed);

  // In-arena strategy count per radius: tied strategies share one logit
  // weight class.
  const std::size_t nd = grid.distances().size();
  std::vector<double> class_size(nd, 0.0);
  for (std::size_t s = 0; s < grid.size(); ++s) {
    if (grid.in_arena(s)) class_size[grid.distance_index(s)] += 1.0;
  }

  SapResult result;
  PositionProfile current = game.SnappedInitial();
  bool have_best = false;
  if (IsCaptureFeasible(scenario, current)) {
    result.profile = current;
    result.theta = SystemThroughput(scenario, current, mode);
    result.trace.initial_theta = result.theta;
    have_best = true;
  }

  std::vector<double> weights(nd);
  for (int k = 1; k <= config.max_steps; ++k) {
    const double beta = config.beta(k) * config.utility_unit_bps;
    std::size_t player = (rng() >> 63) ? pair.second : pair.first;
    auto responses = game.Responses(player, current[pair.Other(player)]);
    auto none = [&] {
      for (std::size_t di = 0; di < nd; ++di) {
        if (responses[di] && class_size[di] > 0) return false;
      }
      return true;
    };
    if (none()) {
      player = pair.Other(player);
      responses = game.Responses(player, current[pair.Other(player)]);
      if (none()) {
        throw NoFeasibleStrategyError(fmt::format(
            "step {}: neither '{}' nor '{}' has a feasible strategy", k,
            scenario.user(pair.first).id, scenario.user(pair.second).id));
      }
    }

    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t di = 0; di < nd; ++di) {
      if (responses[di] && class_size[di] > 0) {
        top = std::max(top, responses[di]->hat_utility);
      }
    }
    double total = 0.0;
    for (std::size_t di = 0; di < nd; ++di) {
      weights[di] = (responses[di] && class_size[di] > 0)
                        ? class_size[di] *
                              std::exp(beta * (responses[di]->hat_utility - top))
                        : 0.0;
      total += weights[di];
    }
    const double u = UniformUnit(rng) * total;
    std::size_t chosen = nd;
    double acc = 0.0;
    for (std::size_t di = 0; di < nd; ++di) {
      if (weights[di] == 0.0) continue;
      acc += weights[di];
      chosen = di;
      if (u < acc) break;
    }

    // Nearest strategy to the current position within the chosen radius.
    const Position here = current[player];
    std::size_t best_s = grid.size();
    double best_sep = std::numeric_limits<double>::infinity();
    const std::size_t na = grid.angles().size();
    for (std::size_t ai = 0; ai < na; ++ai) {
      const std::size_t s = chosen * na + ai;
      if (!grid.in_arena(s)) continue;
      const double sep = Separation(here, grid.position(s));
      if (sep < best_sep - 1e-9) {
        best_sep = sep;
        best_s = s;
      }
    }
    current[player] = grid.position(best_s);
    const auto& r = *responses[chosen];

    if (!have_best ||
        PreferCandidate(scenario, r.theta, current, result.theta,
                        result.profile)) {
      result.profile = current;
      result.theta = r.theta;
      result.trace.best_step = k;
      have_best = true;
    }
    if (config.record_trace) {
      result.trace.steps.push_back(SapStep{k, player, best_s, current[player],
                                           r.hat_utility, r.theta,
                                           result.theta});
    }
  }
  return result;
}

void WriteTraceCsv(std::ostream& out, const Scenario& scenario,
                   const SapTrace& trace) {
  out << "step,player,d,psi,u_hat,theta\n";
  for (const SapStep& s : trace.steps) {
    fmt::print(out, "{},{},{},{},{},{}\n", s.step, scenario.user(s.player).id,
               s.position.distance_m, s.position.angle_deg, s.hat_utility,
               s.theta);
  }
}

}  // namespace apgame
