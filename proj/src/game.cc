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

#include "apgame/game.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>

#include <fmt/core.h>

#include "apgame/errors.h"

namespace apgame {
namespace {

constexpr double kArenaSlackM = 1e-9;

double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

double NormalizeAngleDeg(double angle_deg) {
  double a = std::fmod(angle_deg, 360.0);
  if (a < 0) a += 360.0;
  // fmod of a tiny negative value can round back up to exactly 360.
  if (a >= 360.0) a -= 360.0;
  return a;
}

Position Position::Polar(double distance_m, double angle_deg) {
  if (!std::isfinite(distance_m) || distance_m < 0) {
    throw ValidationError(
        fmt::format("distance {} m must be finite and >= 0", distance_m));
  }
  if (!std::isfinite(angle_deg)) {
    throw ValidationError(fmt::format("angle {} deg is not finite", angle_deg));
  }
  return Position{distance_m, NormalizeAngleDeg(angle_deg)};
}

double Separation(const Position& a, const Position& b) {
  const double ax = a.distance_m * std::cos(DegToRad(a.angle_deg));
  const double ay = a.distance_m * std::sin(DegToRad(a.angle_deg));
  const double bx = b.distance_m * std::cos(DegToRad(b.angle_deg));
  const double by = b.distance_m * std::sin(DegToRad(b.angle_deg));
  return std::hypot(ax - bx, ay - by);
}

Arena::Arena(double width_m, double height_m, Point ap)
    : width_m_(width_m), height_m_(height_m), ap_(ap) {
  if (!(width_m > 0) || !(height_m > 0)) {
    throw ValidationError(fmt::format(
        "arena {} m x {} m must have positive extent", width_m, height_m));
  }
  if (!(ap.x > 0 && ap.x < width_m && ap.y > 0 && ap.y < height_m)) {
    throw ValidationError(fmt::format(
        "AP at ({}, {}) must lie strictly inside the {} x {} arena", ap.x,
        ap.y, width_m, height_m));
  }
}

Arena Arena::Default() { return Arena(60.0, 60.0, Point{30.0, 30.0}); }

Point Arena::ToCartesian(const Position& p) const {
  const double rad = DegToRad(p.angle_deg);
  return Point{ap_.x + p.distance_m * std::cos(rad),
               ap_.y + p.distance_m * std::sin(rad)};
}

bool Arena::Contains(const Position& p) const {
  const Point c = ToCartesian(p);
  return c.x >= -kArenaSlackM && c.x <= width_m_ + kArenaSlackM &&
         c.y >= -kArenaSlackM && c.y <= height_m_ + kArenaSlackM;
}

std::string_view UserRoleName(UserRole role) {
  switch (role) {
    case UserRole::kExisting:
      return "existing";
    case UserRole::kNew:
      return "new";
    case UserRole::kUnlabeled:
      break;
  }
  return "";
}

UserRole ParseUserRole(std::string_view name) {
  if (name == "existing") return UserRole::kExisting;
  if (name == "new") return UserRole::kNew;
  if (name.empty()) return UserRole::kUnlabeled;
  throw ValidationError(fmt::format(
      "unknown user label '{}' (expected existing, new or empty)", name));
}

Scenario::Scenario(Arena arena, RadioParams radio, std::vector<User> users,
                   bool allow_single_user)
    : arena_(arena), model_(radio), users_(std::move(users)) {
  if (users_.size() < (allow_single_user ? 1u : 2u)) {
    throw ValidationError(fmt::format(
        "scenario needs at least 2 users, got {}", users_.size()));
  }
  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < users_.size(); ++i) {
    const User& u = users_[i];
    if (u.id.empty()) {
      throw ValidationError(fmt::format("users[{}]: empty id", i));
    }
    if (!seen.insert(u.id).second) {
      throw ValidationError(
          fmt::format("users[{}]: duplicate id '{}'", i, u.id));
    }
    if (!(u.initial.distance_m >= 0) || !std::isfinite(u.initial.distance_m)) {
      throw ValidationError(fmt::format(
          "users[{}] (id '{}'): distance {} m must be >= 0", i, u.id,
          u.initial.distance_m));
    }
    users_[i].initial.angle_deg = NormalizeAngleDeg(u.initial.angle_deg);
    if (!arena_.Contains(users_[i].initial)) {
      throw ValidationError(fmt::format(
          "users[{}] (id '{}'): position ({} m, {} deg) lies outside the "
          "{} x {} m arena",
          i, u.id, u.initial.distance_m, u.initial.angle_deg, arena_.width_m(),
          arena_.height_m()));
    }
  }
}

std::optional<std::size_t> Scenario::IndexOf(std::string_view id) const {
  for (std::size_t i = 0; i < users_.size(); ++i) {
    if (users_[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> Scenario::IndicesWithRole(UserRole role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < users_.size(); ++i) {
    if (users_[i].role == role) out.push_back(i);
  }
  return out;
}

MovingPair MovingPair::FromIds(const Scenario& scenario,
                               std::string_view first,
                               std::string_view second) {
  auto a = scenario.IndexOf(first);
  auto b = scenario.IndexOf(second);
  if (!a) throw ValidationError(fmt::format("unknown user id '{}'", first));
  if (!b) throw ValidationError(fmt::format("unknown user id '{}'", second));
  MovingPair pair{*a, *b};
  pair.Validate(scenario);
  return pair;
}

void MovingPair::Validate(const Scenario& scenario) const {
  if (first >= scenario.size() || second >= scenario.size()) {
    throw ValidationError(fmt::format(
        "moving pair ({}, {}) out of range for {} users", first, second,
        scenario.size()));
  }
  if (first == second) {
    throw ValidationError(
        fmt::format("moving pair repeats user '{}'", scenario.user(first).id));
  }
}

PositionProfile PositionProfile::Initial(const Scenario& scenario) {
  std::vector<Position> positions;
  positions.reserve(scenario.size());
  for (const User& u : scenario.users()) positions.push_back(u.initial);
  return PositionProfile(std::move(positions));
}

std::vector<double> PositionProfile::Distances() const {
  std::vector<double> d;
  d.reserve(positions_.size());
  for (const Position& p : positions_) d.push_back(p.distance_m);
  return d;
}

void ValidateProfile(const Scenario& scenario,
                     const PositionProfile& profile) {
  if (profile.size() != scenario.size()) {
    throw ValidationError(fmt::format("profile has {} positions for {} users",
                                      profile.size(), scenario.size()));
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (!scenario.arena().Contains(profile[i])) {
      throw ValidationError(fmt::format(
          "user '{}' at ({} m, {} deg) lies outside the arena",
          scenario.user(i).id, profile[i].distance_m, profile[i].angle_deg));
    }
  }
}

std::vector<double> Sinrs(const Scenario& scenario,
                          const PositionProfile& profile) {
  const std::vector<double> d = profile.Distances();
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    out[i] = scenario.model().Sinr(i, d);
  }
  return out;
}

bool IsCaptureFeasible(const Scenario& scenario,
                       const PositionProfile& profile) {
  for (double s : Sinrs(scenario, profile)) {
    if (!scenario.model().CaptureOk(s)) return false;
  }
  return true;
}

std::vector<double> PerUserRates(const Scenario& scenario,
                                 const PositionProfile& profile,
                                 RateMode mode) {
  if (profile.size() != scenario.size()) {
    throw ValidationError(fmt::format("profile has {} positions for {} users",
                                      profile.size(), scenario.size()));
  }
  const std::vector<double> d = profile.Distances();
  std::vector<double> rates(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    try {
      rates[i] = scenario.model().EffectiveRate(i, d, mode);
    } catch (const InfeasibleProfileError& e) {
      throw InfeasibleProfileError(
          fmt::format("user '{}': {}", scenario.user(i).id, e.what()));
    }
  }
  return rates;
}

double HatUtilityFromRates(std::span<const double> rates) {
  double sum = 0.0;
  for (double r : rates) sum += -1.0 / r;
  return sum;
}

double UtilityFromRates(std::span<const double> rates) {
  return -1.0 / HatUtilityFromRates(rates);
}

double ThroughputFromRates(std::span<const double> rates) {
  return static_cast<double>(rates.size()) * UtilityFromRates(rates);
}

double HatUtility(const Scenario& scenario, const PositionProfile& profile,
                  RateMode mode) {
  return HatUtilityFromRates(PerUserRates(scenario, profile, mode));
}

double Utility(const Scenario& scenario, const PositionProfile& profile,
               RateMode mode) {
  return UtilityFromRates(PerUserRates(scenario, profile, mode));
}

double SystemThroughput(const Scenario& scenario,
                        const PositionProfile& profile, RateMode mode) {
  return ThroughputFromRates(PerUserRates(scenario, profile, mode));
}

double ImprovementRatio(double theta_pro, double theta_non_move) {
  if (!(theta_non_move > 0)) {
    throw ValidationError(fmt::format(
        "improvement ratio needs a positive baseline, got {}", theta_non_move));
  }
  return theta_pro / theta_non_move;
}

double TotalDisplacement(const Scenario& scenario,
                         const PositionProfile& profile) {
  double total = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    total += Separation(scenario.user(i).initial, profile[i]);
  }
  return total;
}

bool PreferCandidate(const Scenario& scenario, double theta_a,
                     const PositionProfile& a, double theta_b,
                     const PositionProfile& b) {
  if (theta_a != theta_b) return theta_a > theta_b;
  const double da = TotalDisplacement(scenario, a);
  const double db = TotalDisplacement(scenario, b);
  if (da != db) return da < db;
  std::vector<std::size_t> order(scenario.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return scenario.user(x).id < scenario.user(y).id;
  });
  for (std::size_t i : order) {
    auto ka = std::tie(a[i].distance_m, a[i].angle_deg);
    auto kb = std::tie(b[i].distance_m, b[i].angle_deg);
    if (ka != kb) return ka < kb;
  }
  return false;
}

}  // namespace apgame
