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

#include "apgame/manifest.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <fmt/core.h>

#include "apgame/errors.h"

namespace apgame {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

double ToNumber(std::string_view text, std::string_view whole) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError(
        fmt::format("range '{}': '{}' is not a number", whole, text));
  }
  return v;
}

std::string Resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

}  // namespace

std::vector<double> ParseRange(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = text.find(':', start);
      parts.push_back(ToNumber(text.substr(start, colon - start), text));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) {
      throw ValidationError(
          fmt::format("range '{}': expected A:B or A:B:STEP", text));
    }
    const double step = parts.size() == 3 ? parts[2] : 1.0;
    if (!(step > 0) || parts[1] < parts[0]) {
      throw ValidationError(fmt::format("range '{}' is empty", text));
    }
    const auto n = static_cast<long>(
        std::floor((parts[1] - parts[0]) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(parts[0] + i * step);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(ToNumber(text.substr(start, comma - start), text));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string DefaultOutDir() {
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "apgame_out";
}

void RunManifest::Validate() const {
  if (methods.empty()) throw ValidationError("manifest lists no methods");
  if (scenario.patterns.empty() && !scenario.file) {
    throw ValidationError("manifest scenario names no pattern and no file");
  }
  sap.Validate();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw ValidationError(fmt::format("output directory '{}': {}", out_dir,
                                      ec.message()));
  }
  const fs::path probe = fs::path(out_dir) / ".apgame_write_probe";
  {
    std::ofstream out(probe);
    if (!out) {
      throw ValidationError(
          fmt::format("output directory '{}' is not writable", out_dir));
    }
  }
  fs::remove(probe, ec);
}

json SapConfigToJson(const SapConfig& sap) {
  return json{
      {"max_steps", sap.max_steps},
      {"beta",
       {{"kind", sap.beta.kind == BetaSchedule::Kind::kLinear ? "linear"
                                                              : "constant"},
        {"scale", sap.beta.scale},
        {"floor", sap.beta.floor}}},
      {"utility_unit_bps", sap.utility_unit_bps}};
}

SapConfig SapConfigFromJson(const json& j, std::string_view where) {
  if (!j.is_object()) {
    throw ValidationError(fmt::format("{}: expected an object", where));
  }
  SapConfig sap;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "max_steps") {
      sap.max_steps = it->get<int>();
    } else if (key == "utility_unit_bps") {
      sap.utility_unit_bps = it->get<double>();
    } else if (key == "beta") {
      const json& b = *it;
      const std::string kind = b.value("kind", std::string("linear"));
      if (kind == "linear") {
        sap.beta.kind = BetaSchedule::Kind::kLinear;
      } else if (kind == "constant") {
        sap.beta.kind = BetaSchedule::Kind::kConstant;
      } else {
        throw ValidationError(
            fmt::format("{}.beta.kind: unknown schedule '{}'", where, kind));
      }
      sap.beta.scale = b.value("scale", 1.0);
      sap.beta.floor = b.value("floor", 0.0);
    } else {
      throw ValidationError(fmt::format("{}: unknown key \"{}\"", where, key));
    }
  }
  try {
    sap.Validate();
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", where, e.what()));
  }
  return sap;
}

RunManifest ManifestFromJson(const json& j, std::string_view source,
                             const fs::path& base_dir) {
  if (!j.is_object()) {
    throw ValidationError(fmt::format("{}: expected an object", source));
  }
  RunManifest m;
  m.out_dir = DefaultOutDir();
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const std::string where = fmt::format("{}: {}", source, key);
      if (key == "scenario") {
        const json& s = *it;
        if (!s.is_object()) {
          throw ValidationError(fmt::format("{}: expected an object", where));
        }
        for (auto si = s.begin(); si != s.end(); ++si) {
          if (si.key() == "patterns") {
            for (const auto& p : *si) {
              m.scenario.patterns.push_back(
                  ParsePattern(p.is_string() ? p.get<std::string>()
                                             : std::to_string(p.get<int>())));
            }
          } else if (si.key() == "pattern") {
            m.scenario.patterns.push_back(ParsePattern(si->get<std::string>()));
          } else if (si.key() == "file") {
            m.scenario.file = Resolve(base_dir, si->get<std::string>());
          } else if (si.key() == "d_A") {
            m.scenario.d_a_m = si->is_string()
                                   ? ParseRange(si->get<std::string>())
                                   : si->get<std::vector<double>>();
          } else if (si.key() == "psi_A") {
            m.scenario.psi_a_deg = si->get<double>();
          } else {
            throw ValidationError(
                fmt::format("{}: unknown key \"{}\"", where, si.key()));
          }
        }
      } else if (key == "grid") {
        m.grid = it->get<std::string>();
      } else if (key == "sap") {
        m.sap = SapConfigFromJson(*it, where);
      } else if (key == "seed") {
        m.master_seed = it->get<std::uint64_t>();
      } else if (key == "mode") {
        m.mode = ParseRateMode(it->get<std::string>());
      } else if (key == "methods") {
        for (const auto& name : *it) {
          m.methods.push_back(ParseMethod(name.get<std::string>()));
        }
      } else if (key == "out_dir") {
        m.out_dir = Resolve(base_dir, it->get<std::string>());
      } else if (key == "patterns_file") {
        m.patterns_file = Resolve(base_dir, it->get<std::string>());
      } else if (key == "threads") {
        m.threads = it->get<unsigned>();
      } else {
        throw ValidationError(
            fmt::format("{}: unknown key \"{}\"", source, key));
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("{}: {}", source, e.what()));
  }
  if (m.scenario.file && !m.scenario.patterns.empty()) {
    throw ValidationError(fmt::format(
        "{}: scenario takes either \"file\" or \"patterns\", not both",
        source));
  }
  return m;
}

RunManifest LoadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open '{}'", path));
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", path, e.what()));
  }
  return ManifestFromJson(j, path, fs::path(path).parent_path());
}

json ManifestToJson(const RunManifest& m) {
  json scenario = json::object();
  if (m.scenario.file) {
    scenario["file"] = *m.scenario.file;
  } else {
    json pats = json::array();
    for (PatternId p : m.scenario.patterns) {
      pats.push_back(std::string(PatternName(p)));
    }
    scenario["patterns"] = pats;
  }
  if (!m.scenario.d_a_m.empty()) scenario["d_A"] = m.scenario.d_a_m;
  if (m.scenario.psi_a_deg) scenario["psi_A"] = *m.scenario.psi_a_deg;
  json methods = json::array();
  for (Method x : m.methods) methods.push_back(std::string(MethodName(x)));
  json j = {{"scenario", scenario},
            {"grid", m.grid},
            {"sap", SapConfigToJson(m.sap)},
            {"seed", m.master_seed},
            {"mode", std::string(RateModeName(m.mode))},
            {"methods", methods},
            {"out_dir", m.out_dir},
            {"threads", m.threads}};
  if (m.patterns_file) j["patterns_file"] = *m.patterns_file;
  return j;
}

}  // namespace apgame
