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

#include "apgame/report.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "apgame/errors.h"
#include "apgame/scenario_io.h"
#include "apgame/strategy_grid.h"

namespace apgame {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "apgame 0.1.0";

struct PointTask {
  std::string pattern;
  std::optional<PatternId> id;
  double d_a_m;
  double psi_a_deg;
};

std::string PositionsJson(const std::vector<UserPlacement>& positions) {
  std::string s = "[";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i) s += ',';
    s += fmt::format(R"({{"id":"{}","d":{},"psi":{}}})", positions[i].id,
                     positions[i].position.distance_m,
                     positions[i].position.angle_deg);
  }
  return s + "]";
}

std::string CsvQuote(const std::string& field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsvLine(const std::string& line,
                                      std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) {
    throw ParseError(fmt::format("line {}: unterminated quote", line_no));
  }
  fields.push_back(std::move(cur));
  return fields;
}

double CsvNumber(const std::string& s, std::size_t line_no, const char* col) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(
        fmt::format("line {}: column {} '{}' is not a number", line_no, col, s));
  }
  return v;
}

std::string Cell(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

std::string NowIso8601() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string FileSafe(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  }
  return s;
}

}  // namespace

std::uint64_t PointSeed(std::uint64_t master, PatternId pattern, double d_a_m,
                        double psi_a_deg) {
  const auto d = static_cast<std::uint64_t>(std::llround(d_a_m * 1000.0));
  const auto psi = static_cast<std::uint64_t>(
      std::llround(NormalizeAngleDeg(psi_a_deg) * 1000.0));
  return DeriveSeed(DeriveSeed(master, static_cast<std::uint64_t>(pattern)),
                    (d << 20) ^ psi);
}

std::vector<SweepPoint> RunSweep(const SweepRequest& request) {
  if (request.methods.empty()) throw ValidationError("sweep needs a method");
  std::vector<PointTask> tasks;
  if (request.scenario) {
    const User& a = request.scenario->IndexOf("A")
                        ? request.scenario->user(*request.scenario->IndexOf("A"))
                        : request.scenario->user(0);
    tasks.push_back({request.scenario_label, std::nullopt,
                     a.initial.distance_m, a.initial.angle_deg});
  } else {
    if (request.patterns.empty()) {
      throw ValidationError("sweep needs a pattern or a scenario");
    }
    for (PatternId id : request.patterns) {
      const PatternSpec& spec = request.table.Get(id);
      const auto& ds =
          request.d_a_m.empty() ? spec.sweep_d_a_m : request.d_a_m;
      const double psi = request.psi_a_deg.value_or(spec.psi_a_deg);
      for (double d : ds) {
        tasks.push_back({std::string(PatternName(id)), id, d, psi});
      }
    }
  }

  const PairSolver solver =
      request.solver ? *request.solver : SapPairSolver(request.sap);
  std::vector<SweepPoint> points(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());

  auto work = [&](std::size_t i) {
    const PointTask& t = tasks[i];
    SweepPoint& p = points[i];
    p.pattern = t.pattern;
    p.d_a_m = t.d_a_m;
    p.psi_a_deg = NormalizeAngleDeg(t.psi_a_deg);
    p.seed = t.id ? PointSeed(request.master_seed, *t.id, t.d_a_m, t.psi_a_deg)
                  : DeriveSeed(request.master_seed, 0);
    p.scenario = t.id ? MakePattern(*t.id, t.d_a_m, t.psi_a_deg, request.table)
                      : *request.scenario;
    const Scenario& sc = *p.scenario;
    const StrategyGrid grid = StrategyGrid::Parse(request.grid, sc.arena());
    const OptimizationResult still = BaselineNoMove(sc, request.mode);
    p.theta_no_move = still.theta;
    for (Method m : request.methods) {
      switch (m) {
        case Method::kProposed:
          p.results.push_back(
              OptimizeAllPairs(sc, grid, solver, p.seed, request.mode));
          break;
        case Method::kNoMove:
          p.results.push_back(still);
          break;
        case Method::kGreedy:
          p.results.push_back(BaselineGreedyNewUsers(sc, grid, request.mode));
          break;
        case Method::kNewUsersGame:
          p.results.push_back(
              BaselineNewUsersGame(sc, grid, solver, p.seed, request.mode));
          break;
      }
    }
  };

  unsigned threads = request.threads ? request.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, tasks.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        work(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return points;
}

std::vector<SweepRow> ToRows(std::span<const SweepPoint> points,
                             std::span<const Method> methods) {
  std::vector<SweepRow> rows;
  for (const SweepPoint& p : points) {
    for (std::size_t k = 0; k < methods.size(); ++k) {
      const OptimizationResult& r = p.results.at(k);
      SweepRow row;
      row.pattern = p.pattern;
      row.method = std::string(MethodName(methods[k]));
      row.d_a_m = p.d_a_m;
      row.psi_a_deg = p.psi_a_deg;
      row.seed = p.seed;
      row.theta_bps = r.theta;
      if (r.theta && p.theta_no_move) {
        row.delta_theta = ImprovementRatio(*r.theta, *p.theta_no_move);
      }
      if (r.profile) {
        for (std::size_t i = 0; i < p.scenario->size(); ++i) {
          row.positions.push_back({p.scenario->user(i).id, (*r.profile)[i]});
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    fmt::print(out, "{},{},{},{},{},{},{},{}\n", r.pattern, r.method, r.d_a_m,
               r.psi_a_deg, Cell(r.theta_bps), Cell(r.delta_theta),
               r.positions.empty() ? std::string()
                                   : CsvQuote(PositionsJson(r.positions)),
               r.seed);
  }
}

std::vector<SweepRow> ReadSweepCsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw ParseError("line 1: sweep CSV header mismatch");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line, line_no);
    if (f.size() != 8) {
      throw ParseError(
          fmt::format("line {}: expected 8 columns, got {}", line_no, f.size()));
    }
    SweepRow r;
    r.pattern = f[0];
    r.method = f[1];
    r.d_a_m = CsvNumber(f[2], line_no, "d_A_m");
    r.psi_a_deg = CsvNumber(f[3], line_no, "psi_A_deg");
    if (!f[4].empty()) r.theta_bps = CsvNumber(f[4], line_no, "theta_bps");
    if (!f[5].empty()) r.delta_theta = CsvNumber(f[5], line_no, "delta_theta");
    if (!f[6].empty()) {
      try {
        for (const auto& e : json::parse(f[6])) {
          r.positions.push_back(
              {e.at("id").get<std::string>(),
               Position{e.at("d").get<double>(), e.at("psi").get<double>()}});
        }
      } catch (const json::exception& e) {
        throw ParseError(fmt::format("line {}: user_positions_json: {}",
                                     line_no, e.what()));
      }
    }
    r.seed = static_cast<std::uint64_t>(CsvNumber(f[7], line_no, "seed"));
    std::uint64_t seed = 0;
    auto [ptr, ec] =
        std::from_chars(f[7].data(), f[7].data() + f[7].size(), seed);
    if (ec == std::errc() && ptr == f[7].data() + f[7].size()) r.seed = seed;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string Summarize(std::span<const SweepRow> rows) {
  std::string out;
  if (rows.empty()) return out;
  if (rows.size() == 1) {
    const SweepRow& r = rows[0];
    return fmt::format(
        "{} {} d_A={} m psi_A={} deg theta={} bps delta_theta={}\n", r.pattern,
        r.method, r.d_a_m, r.psi_a_deg,
        r.theta_bps ? fmt::format("{:.6g}", *r.theta_bps) : "n/a",
        r.delta_theta ? fmt::format("{:.6f}", *r.delta_theta) : "n/a");
  }

  std::vector<std::string> patterns;
  for (const SweepRow& r : rows) {
    if (std::find(patterns.begin(), patterns.end(), r.pattern) == patterns.end()) {
      patterns.push_back(r.pattern);
    }
  }
  for (const std::string& pat : patterns) {
    out += fmt::format("Pattern {}\n", pat);
    std::vector<std::string> methods;
    // theta by method and d_A
    std::map<std::string, std::map<double, double>> theta;
    std::map<std::string, std::pair<double, int>> mean;
    std::optional<std::pair<double, double>> best_delta;
    for (const SweepRow& r : rows) {
      if (r.pattern != pat) continue;
      if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
        methods.push_back(r.method);
      }
      if (!r.theta_bps) continue;
      theta[r.method][r.d_a_m] = *r.theta_bps;
      mean[r.method].first += *r.theta_bps;
      mean[r.method].second += 1;
      if (r.method == "proposed" && r.delta_theta &&
          (!best_delta || *r.delta_theta > best_delta->first)) {
        best_delta = {{*r.delta_theta, r.d_a_m}};
      }
    }
    if (best_delta) {
      out += fmt::format("  max delta_theta (proposed/no-move): {:.6f} at d_A = {} m\n",
                         best_delta->first, best_delta->second);
    }
    if (theta.count("proposed")) {
      for (const std::string& m : methods) {
        if (m == "proposed" || !theta.count(m)) continue;
        std::optional<std::pair<double, double>> best;
        for (const auto& [d, t] : theta[m]) {
          auto it = theta["proposed"].find(d);
          if (it == theta["proposed"].end()) continue;
          const double ratio = it->second / t;
          if (!best || ratio > best->first) best = {{ratio, d}};
        }
        if (best) {
          out += fmt::format("  max proposed/{}: {:.6f} at d_A = {} m\n", m,
                             best->first, best->second);
        }
      }
    }
    std::vector<std::pair<std::string, double>> ranking;
    for (const auto& [m, acc] : mean) {
      ranking.push_back({m, acc.first / acc.second});
    }
    std::stable_sort(ranking.begin(), ranking.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranking.empty()) {
      out += "  ranking: no feasible rows\n";
    } else if (ranking.size() > 1 &&
               ranking.front().second == ranking.back().second) {
      out += fmt::format("  ranking by mean theta: tied ({:.6g} bps)\n",
                         ranking.front().second);
    } else {
      out += "  ranking by mean theta:";
      for (std::size_t i = 0; i < ranking.size(); ++i) {
        const bool tie = i > 0 && ranking[i].second == ranking[i - 1].second;
        out += fmt::format("{} {} ({:.6g} bps)", i == 0 ? "" : (tie ? " =" : " >"),
                           ranking[i].first, ranking[i].second);
      }
      out += "\n";
    }
  }
  return out;
}

ManifestOutcome ExecuteManifest(const RunManifest& manifest,
                                std::ostream& log) {
  manifest.Validate();
  SweepRequest req;
  req.patterns = manifest.scenario.patterns;
  if (manifest.scenario.file) {
    req.scenario = LoadScenario(*manifest.scenario.file);
    req.scenario_label = "file";
  }
  req.d_a_m = manifest.scenario.d_a_m;
  req.psi_a_deg = manifest.scenario.psi_a_deg;
  req.methods = manifest.methods;
  req.grid = manifest.grid;
  req.sap = manifest.sap;
  req.mode = manifest.mode;
  req.master_seed = manifest.master_seed;
  req.threads = manifest.threads;
  if (manifest.patterns_file) {
    req.table = PatternTable::FromFile(*manifest.patterns_file);
  }

  const auto start = std::chrono::steady_clock::now();
  const std::vector<SweepPoint> points = RunSweep(req);
  const double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  ManifestOutcome outcome;
  outcome.rows = ToRows(points, req.methods);

  const fs::path dir(manifest.out_dir);
  auto write = [&](const std::string& name, auto&& body) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    body(out);
    if (!out) throw Error(fmt::format("write to '{}' failed", path.string()));
    outcome.files.push_back(path.string());
  };

  std::vector<std::string> order;
  for (const SweepRow& r : outcome.rows) {
    if (std::find(order.begin(), order.end(), r.pattern) == order.end()) {
      order.push_back(r.pattern);
    }
  }
  for (const std::string& pat : order) {
    for (Method m : req.methods) {
      std::vector<SweepRow> subset;
      for (const SweepRow& r : outcome.rows) {
        if (r.pattern == pat && r.method == MethodName(m)) subset.push_back(r);
      }
      write(fmt::format("sweep_{}_{}.csv", FileSafe(pat), MethodName(m)),
            [&](std::ostream& o) { WriteSweepCsv(o, subset); });
    }
  }
  write("summary.csv", [&](std::ostream& o) { WriteSweepCsv(o, outcome.rows); });
  const std::string summary = Summarize(outcome.rows);
  write("summary.txt", [&](std::ostream& o) { o << summary; });

  json prov;
  prov["tool"] = kVersion;
  prov["created_utc"] = NowIso8601();
  prov["wall_time_s"] = elapsed;
  prov["manifest"] = ManifestToJson(manifest);
  prov["pattern_table"] = req.table.ToJson();
  prov["seed_rule"] =
      "point seed = DeriveSeed(DeriveSeed(seed, pattern ordinal), "
      "(round(1000 d_A) << 20) ^ round(1000 psi_A)); pair (X,Y) run seed = "
      "DeriveSeed(point seed, X * L + Y)";
  json pts = json::array();
  for (const SweepPoint& p : points) {
    json jp = {{"pattern", p.pattern},
               {"d_A_m", p.d_a_m},
               {"psi_A_deg", p.psi_a_deg},
               {"seed", p.seed},
               {"scenario", ScenarioToJson(*p.scenario)}};
    json skipped = json::array();
    for (std::size_t k = 0; k < p.results.size(); ++k) {
      for (const auto& s : p.results[k].skipped) {
        skipped.push_back(fmt::format("{}: {}", MethodName(req.methods[k]), s));
      }
    }
    jp["skipped"] = skipped;
    pts.push_back(std::move(jp));
  }
  prov["points"] = pts;
  write("provenance.json", [&](std::ostream& o) { o << prov.dump(2) << '\n'; });

  log << summary;
  for (const auto& f : outcome.files) log << "wrote " << f << '\n';
  return outcome;
}

}  // namespace apgame
