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

#include "apgame/strategy_grid.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "apgame/errors.h"

namespace apgame {
namespace {

double ParseNumber(std::string_view text, std::string_view spec) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError(fmt::format(
        "grid spec '{}': '{}' is not a number", spec, text));
  }
  return value;
}

}  // namespace

StrategyGrid::StrategyGrid(std::vector<double> distances_m,
                           std::vector<double> angles_deg, const Arena& arena)
    : distances_(std::move(distances_m)), angles_(std::move(angles_deg)) {
  if (distances_.empty() || angles_.empty()) {
    throw ValidationError("strategy grid needs at least one distance and angle");
  }
  for (double d : distances_) {
    if (!std::isfinite(d) || d < 0) {
      throw ValidationError(fmt::format("grid distance {} m is invalid", d));
    }
  }
  for (double& a : angles_) {
    if (!std::isfinite(a)) {
      throw ValidationError(fmt::format("grid angle {} is invalid", a));
    }
    a = NormalizeAngleDeg(a);
  }
  in_arena_.resize(size());
  for (std::size_t s = 0; s < size(); ++s) {
    in_arena_[s] = arena.Contains(position(s));
    if (in_arena_[s]) ++feasible_count_;
  }
  if (feasible_count_ == 0) {
    throw ValidationError("strategy grid has no strategy inside the arena");
  }
}

StrategyGrid StrategyGrid::Regular(double d_min, double d_max, double d_step,
                                   double a_step, const Arena& arena) {
  if (!(d_step > 0) || !(a_step > 0) || d_max < d_min) {
    throw ValidationError(fmt::format(
        "regular grid [{}, {}] step {} / angle step {} is invalid", d_min,
        d_max, d_step, a_step));
  }
  std::vector<double> distances;
  const auto nd = static_cast<long>(std::floor((d_max - d_min) / d_step + 1e-9));
  for (long i = 0; i <= nd; ++i) distances.push_back(d_min + i * d_step);
  std::vector<double> angles;
  const auto na = static_cast<long>(std::ceil(360.0 / a_step - 1e-9));
  for (long i = 0; i < na; ++i) angles.push_back(i * a_step);
  return StrategyGrid(std::move(distances), std::move(angles), arena);
}

StrategyGrid StrategyGrid::Default(const Arena& arena) {
  return Regular(1, 30, 1, 10, arena);
}

StrategyGrid StrategyGrid::Oracle(const Arena& arena) {
  return Regular(5, 30, 5, 45, arena);
}

StrategyGrid StrategyGrid::Cardinal(const Arena& arena) {
  return Regular(1, 30, 1, 90, arena);
}

StrategyGrid StrategyGrid::Parse(std::string_view spec, const Arena& arena) {
  if (spec == "default") return Default(arena);
  if (spec == "oracle") return Oracle(arena);
  if (spec == "cardinal") return Cardinal(arena);
  const auto slash = spec.find('/');
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : spec.find(':', c1 + 1);
  if (slash == std::string_view::npos || c2 == std::string_view::npos ||
      c2 > slash) {
    throw ValidationError(fmt::format(
        "grid spec '{}': expected default, oracle, cardinal or "
        "DMIN:DSTEP:DMAX/ASTEP",
        spec));
  }
  const double d_min = ParseNumber(spec.substr(0, c1), spec);
  const double d_step = ParseNumber(spec.substr(c1 + 1, c2 - c1 - 1), spec);
  const double d_max = ParseNumber(spec.substr(c2 + 1, slash - c2 - 1), spec);
  const double a_step = ParseNumber(spec.substr(slash + 1), spec);
  return Regular(d_min, d_max, d_step, a_step, arena);
}

std::size_t StrategyGrid::Nearest(const Position& p) const {
  std::size_t best = size();
  double best_sep = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < size(); ++s) {
    if (!in_arena_[s]) continue;
    const double sep = Separation(p, position(s));
    if (best == size() || sep < best_sep - 1e-9 ||
        (std::abs(sep - best_sep) <= 1e-9 &&
         position(s).distance_m < position(best).distance_m)) {
      best = s;
      best_sep = std::min(sep, best_sep);
    }
  }
  return best;
}

std::size_t StrategyGrid::Find(const Position& p) const {
  for (std::size_t s = 0; s < size(); ++s) {
    if (position(s) == p) return s;
  }
  return size();
}

std::string StrategyGrid::Describe() const {
  return fmt::format("{} distances [{} .. {}] m x {} angles; {} in arena",
                     distances_.size(), distances_.front(), distances_.back(),
                     angles_.size(), feasible_count_);
}

}  // namespace apgame
