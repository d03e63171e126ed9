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

#ifndef APGAME_GAME_H_
#define APGAME_GAME_H_

// Data model of the all-user-movement game: users at polar positions around
// one AP, a pair of movers, and the common-interest utilities
//
//   u(a)     = 1 / sum_X 1/R_X(a)        (harmonic share)
//   u_hat(a) = sum_X -1/R_X(a)   = -1/u(a)
//   theta(a) = L * u(a)                  (system throughput)
//
// Every user's rate depends on the full profile, so u_hat is a single
// function of the joint profile and serves as the exact potential.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apgame/radio.h"

namespace apgame {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double NormalizeAngleDeg(double angle_deg);

// Polar coordinates relative to the AP; angle measured from the AP's
// horizontal axis and kept in [0, 360).
struct Position {
  double distance_m = 0.0;
  double angle_deg = 0.0;

  // Normalizes the angle; throws ValidationError on negative distance.
  static Position Polar(double distance_m, double angle_deg);

  friend bool operator==(const Position&, const Position&) = default;
};

// Euclidean distance between two polar positions.
double Separation(const Position& a, const Position& b);

class Arena {
 public:
  Arena(double width_m, double height_m, Point ap);
  // 60 m x 60 m with the AP in the centre.
  static Arena Default();

  double width_m() const { return width_m_; }
  double height_m() const { return height_m_; }
  Point ap() const { return ap_; }

  Point ToCartesian(const Position& p) const;
  // Boundary inclusive (1e-9 m slack for trigonometric round-off).
  bool Contains(const Position& p) const;

  friend bool operator==(const Arena&, const Arena&) = default;

 private:
  double width_m_;
  double height_m_;
  Point ap_;
};

enum class UserRole { kUnlabeled, kExisting, kNew };

std::string_view UserRoleName(UserRole role);
UserRole ParseUserRole(std::string_view name);

struct User {
  std::string id;
  Position initial;
  UserRole role = UserRole::kUnlabeled;

  friend bool operator==(const User&, const User&) = default;
};

class Scenario {
 public:
  // Throws ValidationError if L < 2, ids repeat, or a user lies outside the
  // arena. Set allow_single_user for degenerate radio-level checks.
  Scenario(Arena arena, RadioParams radio, std::vector<User> users,
           bool allow_single_user = false);

  const Arena& arena() const { return arena_; }
  const RadioParams& radio() const { return model_.params(); }
  const RadioModel& model() const { return model_; }
  const std::vector<User>& users() const { return users_; }
  std::size_t size() const { return users_.size(); }
  const User& user(std::size_t index) const { return users_.at(index); }

  std::optional<std::size_t> IndexOf(std::string_view id) const;
  std::vector<std::size_t> IndicesWithRole(UserRole role) const;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.arena_ == b.arena_ && a.radio() == b.radio() &&
           a.users_ == b.users_;
  }

 private:
  Arena arena_;
  RadioModel model_;
  std::vector<User> users_;
};

// The two users allowed to move; stored as indices into Scenario::users().
struct MovingPair {
  std::size_t first = 0;
  std::size_t second = 1;

  static MovingPair FromIds(const Scenario& scenario, std::string_view first,
                            std::string_view second);
  void Validate(const Scenario& scenario) const;
  std::size_t Other(std::size_t player) const {
    return player == first ? second : first;
  }
  bool Contains(std::size_t user) const {
    return user == first || user == second;
  }

  friend bool operator==(const MovingPair&, const MovingPair&) = default;
};

// One position per scenario user, indexed like Scenario::users().
class PositionProfile {
 public:
  PositionProfile() = default;
  explicit PositionProfile(std::vector<Position> positions)
      : positions_(std::move(positions)) {}
  static PositionProfile Initial(const Scenario& scenario);

  std::size_t size() const { return positions_.size(); }
  const Position& operator[](std::size_t i) const { return positions_[i]; }
  Position& operator[](std::size_t i) { return positions_[i]; }
  const std::vector<Position>& positions() const { return positions_; }
  std::vector<double> Distances() const;

  friend bool operator==(const PositionProfile&,
                         const PositionProfile&) = default;

 private:
  std::vector<Position> positions_;
};

// Throws ValidationError unless the profile covers every user and lies in
// the arena.
void ValidateProfile(const Scenario& scenario, const PositionProfile& profile);

std::vector<double> Sinrs(const Scenario& scenario,
                          const PositionProfile& profile);
bool IsCaptureFeasible(const Scenario& scenario,
                       const PositionProfile& profile);

// Throws InfeasibleProfileError naming the first user that fails capture.
std::vector<double> PerUserRates(const Scenario& scenario,
                                 const PositionProfile& profile,
                                 RateMode mode);

double HatUtilityFromRates(std::span<const double> rates);
double UtilityFromRates(std::span<const double> rates);
double ThroughputFromRates(std::span<const double> rates);

double HatUtility(const Scenario& scenario, const PositionProfile& profile,
                  RateMode mode);
double Utility(const Scenario& scenario, const PositionProfile& profile,
               RateMode mode);
double SystemThroughput(const Scenario& scenario,
                        const PositionProfile& profile, RateMode mode);

// theta_pro / theta_non_move; throws ValidationError if the denominator
// is not positive.
double ImprovementRatio(double theta_pro, double theta_non_move);

// Sum over users of the Euclidean displacement from their initial position.
double TotalDisplacement(const Scenario& scenario,
                         const PositionProfile& profile);

// Ordering for argmax contexts: larger theta wins; equal theta prefers
// smaller total displacement, then the lexicographically smaller position
// list (users visited in id order). Returns true if `a` beats `b`.
bool PreferCandidate(const Scenario& scenario, double theta_a,
                     const PositionProfile& a, double theta_b,
                     const PositionProfile& b);

}  // namespace apgame

#endif  // APGAME_GAME_H_
