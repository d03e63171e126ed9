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

#ifndef APGAME_STRATEGY_GRID_H_
#define APGAME_STRATEGY_GRID_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "apgame/game.h"

namespace apgame {

// Discretized strategy space shared by both movers: the Cartesian product of
// candidate radii and bearings. Strategy s maps to
// (distances[s / angles.size()], angles[s % angles.size()]). Strategies whose
// image leaves the arena are kept but marked infeasible.
class StrategyGrid {
 public:
  StrategyGrid(std::vector<double> distances_m, std::vector<double> angles_deg,
               const Arena& arena);

  // {1, 2, ..., 30} m x {0, 10, ..., 350} deg.
  static StrategyGrid Default(const Arena& arena);
  // {5, 10, ..., 30} m x {0, 45, ..., 315} deg; 48 strategies per player.
  static StrategyGrid Oracle(const Arena& arena);
  // {1, ..., 30} m x {0, 90, 180, 270} deg.
  static StrategyGrid Cardinal(const Arena& arena);
  // Regular grid from [d_min, d_max] step d_step and [0, 360) step a_step.
  static StrategyGrid Regular(double d_min, double d_max, double d_step,
                              double a_step, const Arena& arena);
  // "default" | "oracle" | "cardinal" | "DMIN:DSTEP:DMAX/ASTEP".
  static StrategyGrid Parse(std::string_view spec, const Arena& arena);

  const std::vector<double>& distances() const { return distances_; }
  const std::vector<double>& angles() const { return angles_; }
  std::size_t size() const { return distances_.size() * angles_.size(); }
  std::size_t feasible_count() const { return feasible_count_; }

  Position position(std::size_t s) const {
    return Position{distances_[s / angles_.size()], angles_[s % angles_.size()]};
  }
  std::size_t distance_index(std::size_t s) const {
    return s / angles_.size();
  }
  bool in_arena(std::size_t s) const { return in_arena_[s]; }

  // Nearest in-arena strategy (Euclidean, Cartesian); ties go to the smaller
  // radius, then the smaller strategy index.
  std::size_t Nearest(const Position& p) const;
  // Index of a strategy exactly equal to p, or size() if none.
  std::size_t Find(const Position& p) const;

  std::string Describe() const;

 private:
  std::vector<double> distances_;
  std::vector<double> angles_;
  std::vector<bool> in_arena_;
  std::size_t feasible_count_ = 0;
};

}  // namespace apgame

#endif  // APGAME_STRATEGY_GRID_H_
