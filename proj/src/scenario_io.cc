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

#include "apgame/scenario_io.h"

#include <fstream>
#include <vector>

#include <fmt/core.h>

#include "apgame/errors.h"

namespace apgame {
namespace {

using nlohmann::json;

struct RadioField {
  const char* key;
  double RadioParams::*member;
};

constexpr RadioField kRadioFields[] = {
    {"bandwidth_hz", &RadioParams::bandwidth_hz},
    {"noise_w", &RadioParams::noise_w},
    {"tx_power_dbm", &RadioParams::tx_power_dbm},
    {"antenna_gain", &RadioParams::antenna_gain},
    {"path_loss_exp", &RadioParams::path_loss_exp},
    {"p_collision", &RadioParams::p_collision},
    {"p_non_collision", &RadioParams::p_non_collision},
    {"sinr_threshold_db", &RadioParams::sinr_threshold_db},
    {"min_distance_m", &RadioParams::min_distance_m},
};

double Number(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) {
    throw ValidationError(fmt::format("{}: missing \"{}\"", where, key));
  }
  if (!obj[key].is_number()) {
    throw ValidationError(
        fmt::format("{}.{}: expected a number", where, key));
  }
  return obj[key].get<double>();
}

void RequireObject(const json& j, std::string_view where) {
  if (!j.is_object()) {
    throw ValidationError(fmt::format("{}: expected an object", where));
  }
}

void RejectUnknown(const json& j, std::string_view where,
                   std::initializer_list<std::string_view> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == it.key();
    if (!ok) {
      throw ValidationError(
          fmt::format("{}: unknown key \"{}\"", where, it.key()));
    }
  }
}

}  // namespace

json RadioToJson(const RadioParams& radio) {
  json j = json::object();
  for (const auto& f : kRadioFields) j[f.key] = radio.*(f.member);
  return j;
}

RadioParams RadioFromJson(const json& j, std::string_view where) {
  RequireObject(j, where);
  RadioParams radio;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const RadioField* field = nullptr;
    for (const auto& f : kRadioFields) {
      if (it.key() == f.key) field = &f;
    }
    if (!field) {
      throw ValidationError(
          fmt::format("{}: unknown key \"{}\"", where, it.key()));
    }
    radio.*(field->member) = Number(j, field->key, where);
  }
  try {
    radio.Validate();
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", where, e.what()));
  }
  return radio;
}

json ScenarioToJson(const Scenario& scenario) {
  const Arena& a = scenario.arena();
  json users = json::array();
  for (const User& u : scenario.users()) {
    json e = {{"id", u.id},
              {"d", u.initial.distance_m},
              {"psi", u.initial.angle_deg}};
    if (u.role != UserRole::kUnlabeled) {
      e["label"] = std::string(UserRoleName(u.role));
    }
    users.push_back(std::move(e));
  }
  return json{{"arena",
               {{"width", a.width_m()},
                {"height", a.height_m()},
                {"ap", {a.ap().x, a.ap().y}}}},
              {"radio", RadioToJson(scenario.radio())},
              {"users", users}};
}

Scenario ScenarioFromJson(const json& j, std::string_view source) {
  RequireObject(j, source);
  RejectUnknown(j, source, {"arena", "radio", "users"});

  Arena arena = Arena::Default();
  if (j.contains("arena")) {
    const std::string where = fmt::format("{}: arena", source);
    const json& a = j["arena"];
    RequireObject(a, where);
    RejectUnknown(a, where, {"width", "height", "ap"});
    if (!a.contains("ap") || !a["ap"].is_array() || a["ap"].size() != 2 ||
        !a["ap"][0].is_number() || !a["ap"][1].is_number()) {
      throw ValidationError(fmt::format("{}.ap: expected [x, y]", where));
    }
    try {
      arena = Arena(Number(a, "width", where), Number(a, "height", where),
                    Point{a["ap"][0].get<double>(), a["ap"][1].get<double>()});
    } catch (const ValidationError& e) {
      if (std::string_view(e.what()).starts_with(where)) throw;
      throw ValidationError(fmt::format("{}: {}", where, e.what()));
    }
  }

  RadioParams radio;
  if (j.contains("radio")) {
    radio = RadioFromJson(j["radio"], fmt::format("{}: radio", source));
  }

  if (!j.contains("users") || !j["users"].is_array()) {
    throw ValidationError(fmt::format("{}: missing \"users\" array", source));
  }
  std::vector<User> users;
  for (std::size_t i = 0; i < j["users"].size(); ++i) {
    const json& e = j["users"][i];
    const std::string where = fmt::format("{}: users[{}]", source, i);
    RequireObject(e, where);
    RejectUnknown(e, where, {"id", "d", "psi", "label"});
    if (!e.contains("id") || !e["id"].is_string()) {
      throw ValidationError(fmt::format("{}: missing string \"id\"", where));
    }
    User u;
    u.id = e["id"].get<std::string>();
    const std::string named = fmt::format("{} (id '{}')", where, u.id);
    try {
      u.initial = Position::Polar(Number(e, "d", named), Number(e, "psi", named));
      u.role = ParseUserRole(e.value("label", std::string()));
    } catch (const ValidationError& err) {
      if (std::string_view(err.what()).starts_with(named)) throw;
      throw ValidationError(fmt::format("{}: {}", named, err.what()));
    }
    users.push_back(std::move(u));
  }
  try {
    return Scenario(arena, radio, std::move(users));
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", source, e.what()));
  }
}

void SaveScenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError(fmt::format("cannot write '{}'", path));
  out << ScenarioToJson(scenario).dump(2) << '\n';
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open '{}'", path));
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", path, e.what()));
  }
  return ScenarioFromJson(j, path);
}

}  // namespace apgame
