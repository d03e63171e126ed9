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

#include "apgame/patterns.h"

#include <fstream>

#include <fmt/core.h>

#include "apgame/errors.h"

namespace apgame {
namespace {

std::vector<double> DefaultSweep() {
  std::vector<double> d;
  for (int i = 1; i <= 30; ++i) d.push_back(i);
  return d;
}

PatternSpec Spec(PatternId id, double db, double dc, double dd,
                 bool approximate) {
  PatternSpec s;
  s.id = id;
  s.b = Position::Polar(db, 0.0);
  s.c = Position::Polar(dc, 180.0);
  s.d = Position::Polar(dd, -90.0);
  s.sweep_d_a_m = DefaultSweep();
  s.approximate = approximate;
  return s;
}

Position ReadPosition(const nlohmann::json& j, std::string_view where) {
  if (!j.is_object() || !j.contains("d") || !j.contains("psi") ||
      !j["d"].is_number() || !j["psi"].is_number()) {
    throw ValidationError(
        fmt::format("{}: expected {{\"d\": number, \"psi\": number}}", where));
  }
  return Position::Polar(j["d"].get<double>(), j["psi"].get<double>());
}

}  // namespace

std::string_view PatternName(PatternId id) {
  static constexpr std::string_view kNames[] = {"I", "II", "III",
                                                "IV", "V", "VI"};
  return kNames[static_cast<int>(id) - 1];
}

PatternId ParsePattern(std::string_view name) {
  for (PatternId id : AllPatterns()) {
    if (PatternName(id) == name ||
        std::to_string(static_cast<int>(id)) == name) {
      return id;
    }
  }
  throw ValidationError(
      fmt::format("unknown pattern '{}' (expected I..VI)", name));
}

std::vector<PatternId> AllPatterns() {
  return {PatternId::kI,  PatternId::kII, PatternId::kIII,
          PatternId::kIV, PatternId::kV,  PatternId::kVI};
}

const PatternTable& PatternTable::Builtin() {
  static const PatternTable table = [] {
    PatternTable t;
    t.specs_ = {
        Spec(PatternId::kI, 5, 5, 5, false),
        Spec(PatternId::kII, 15, 15, 15, false),
        Spec(PatternId::kIII, 30, 30, 30, false),
        // Mixed-distance layouts; placements are estimates and can be
        // replaced with data/patterns.json or a user table.
        Spec(PatternId::kIV, 15, 25, 5, true),
        Spec(PatternId::kV, 5, 15, 25, true),
        Spec(PatternId::kVI, 25, 25, 5, true),
    };
    return t;
  }();
  return table;
}

PatternTable PatternTable::FromJson(const nlohmann::json& j,
                                    std::string_view source) {
  if (!j.is_object() || !j.contains("patterns") || !j["patterns"].is_array()) {
    throw ValidationError(
        fmt::format("{}: expected an object with a \"patterns\" array", source));
  }
  PatternTable t;
  for (std::size_t i = 0; i < j["patterns"].size(); ++i) {
    const auto& e = j["patterns"][i];
    const std::string where = fmt::format("{}: patterns[{}]", source, i);
    if (!e.is_object() || !e.contains("id") || !e["id"].is_string()) {
      throw ValidationError(fmt::format("{}: missing string \"id\"", where));
    }
    PatternSpec s;
    s.id = ParsePattern(e["id"].get<std::string>());
    s.b = ReadPosition(e.value("B", nlohmann::json()), where + ".B");
    s.c = ReadPosition(e.value("C", nlohmann::json()), where + ".C");
    s.d = ReadPosition(e.value("D", nlohmann::json()), where + ".D");
    s.psi_a_deg = e.value("psi_A", 90.0);
    s.approximate = e.value("approximate", false);
    if (e.contains("sweep_d_A")) {
      s.sweep_d_a_m = e["sweep_d_A"].get<std::vector<double>>();
    } else {
      s.sweep_d_a_m = DefaultSweep();
    }
    for (const auto& prev : t.specs_) {
      if (prev.id == s.id) {
        throw ValidationError(fmt::format("{}: duplicate pattern {}", where,
                                          PatternName(s.id)));
      }
    }
    t.specs_.push_back(std::move(s));
  }
  return t;
}

PatternTable PatternTable::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open '{}'", path));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", path, e.what()));
  }
  return FromJson(j, path);
}

const PatternSpec& PatternTable::Get(PatternId id) const {
  for (const auto& s : specs_) {
    if (s.id == id) return s;
  }
  throw ValidationError(
      fmt::format("pattern {} not present in table", PatternName(id)));
}

nlohmann::json PatternTable::ToJson() const {
  nlohmann::json arr = nlohmann::json::array();
  auto pos = [](const Position& p) {
    return nlohmann::json{{"d", p.distance_m}, {"psi", p.angle_deg}};
  };
  for (const auto& s : specs_) {
    arr.push_back({{"id", std::string(PatternName(s.id))},
                   {"B", pos(s.b)},
                   {"C", pos(s.c)},
                   {"D", pos(s.d)},
                   {"psi_A", s.psi_a_deg},
                   {"sweep_d_A", s.sweep_d_a_m},
                   {"approximate", s.approximate}});
  }
  return nlohmann::json{{"patterns", arr}};
}

Scenario MakePattern(PatternId id, double d_a_m, double psi_a_deg,
                     const PatternTable& table) {
  const PatternSpec& s = table.Get(id);
  std::vector<User> users = {
      {"A", Position::Polar(d_a_m, psi_a_deg), UserRole::kExisting},
      {"B", s.b, UserRole::kExisting},
      {"C", s.c, UserRole::kNew},
      {"D", s.d, UserRole::kNew},
  };
  return Scenario(Arena::Default(), RadioParams{}, std::move(users));
}

}  // namespace apgame
