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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "apgame/errors.h"
#include "apgame/report.h"
#include "doctest.h"
#include "json.hpp"

namespace apgame {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("apgame_report_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SweepRequest Request(std::vector<Method> methods) {
  SweepRequest r;
  r.patterns = {PatternId::kI};
  r.methods = std::move(methods);
  r.threads = 2;
  return r;
}

TEST_CASE("sweep rows and improvement column") {
  const SweepRequest req = Request({Method::kProposed, Method::kNoMove});
  const auto points = RunSweep(req);
  const auto rows = ToRows(points, req.methods);
  CHECK(rows.size() == 60);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    const SweepRow& pro = rows[i];
    const SweepRow& still = rows[i + 1];
    CHECK(pro.method == "proposed");
    CHECK(still.method == "no-move");
    CHECK(pro.d_a_m == still.d_a_m);
    CHECK(pro.positions.size() == 4);
    if (still.theta_bps) {
      REQUIRE(pro.delta_theta);
      CHECK(*pro.delta_theta ==
            doctest::Approx(*pro.theta_bps / *still.theta_bps).epsilon(1e-9));
      CHECK(*still.delta_theta == 1.0);
    } else {
      CHECK_FALSE(pro.delta_theta);
      CHECK(still.positions.empty());
    }
  }
  CHECK(rows.front().d_a_m == 1);
  CHECK(rows.back().d_a_m == 30);
}

TEST_CASE("thread count does not change results") {
  SweepRequest a = Request({Method::kProposed, Method::kNewUsersGame});
  a.d_a_m = {4, 11, 27};
  SweepRequest b = a;
  a.threads = 1;
  b.threads = 3;
  CHECK(ToRows(RunSweep(a), a.methods) == ToRows(RunSweep(b), b.methods));
}

TEST_CASE("csv round trip") {
  SweepRequest req = Request({Method::kProposed, Method::kNoMove, Method::kGreedy});
  req.d_a_m = {2, 29};
  const auto rows = ToRows(RunSweep(req), req.methods);
  std::stringstream ss;
  WriteSweepCsv(ss, rows);
  const std::string text = ss.str();
  CHECK(text.rfind(std::string(kSweepCsvHeader) + "\n", 0) == 0);
  CHECK(text.find("nan") == std::string::npos);
  CHECK(text.find("inf") == std::string::npos);
  std::stringstream in(text);
  CHECK(ReadSweepCsv(in) == rows);

  std::stringstream bad_header("a,b\n");
  CHECK_THROWS_AS(ReadSweepCsv(bad_header), ParseError);
  std::stringstream bad_row(std::string(kSweepCsvHeader) + "\nI,proposed,x,90,,,,1\n");
  CHECK_THROWS_WITH_AS(ReadSweepCsv(bad_row), doctest::Contains("line 2"), ParseError);
}

TEST_CASE("summaries") {
  SweepRow r;
  r.pattern = "I";
  r.method = "proposed";
  r.d_a_m = 12;
  r.psi_a_deg = 90;
  r.theta_bps = 3.1e7;
  r.delta_theta = 1.02;
  const std::vector<SweepRow> one = {r};
  const std::string s1 = Summarize(one);
  CHECK(s1.find("d_A=12") != std::string::npos);
  CHECK(s1.find("1.020000") != std::string::npos);

  SweepRow g = r;
  g.method = "greedy";
  g.delta_theta.reset();
  std::vector<SweepRow> tied = {r, g};
  CHECK(Summarize(tied).find("tied") != std::string::npos);

  g.theta_bps = 3.0e7;
  SweepRow r2 = r, g2 = g;
  r2.d_a_m = g2.d_a_m = 25;
  r2.theta_bps = 3.3e7;
  r2.delta_theta = 1.05;
  std::vector<SweepRow> rows = {r, g, r2, g2};
  const std::string s = Summarize(rows);
  CHECK(s.find("max delta_theta (proposed/no-move): 1.050000 at d_A = 25 m") !=
        std::string::npos);
  CHECK(s.find("max proposed/greedy: 1.100000 at d_A = 25 m") != std::string::npos);
  CHECK(s.find("proposed (3.2e+07 bps) > greedy (3e+07 bps)") != std::string::npos);
}

TEST_CASE("pattern II improvement curve dips at the equal-distance point") {
  SweepRequest req = Request({Method::kProposed, Method::kNoMove});
  req.patterns = {PatternId::kII};
  req.d_a_m = {15, 20, 30};
  const auto rows = ToRows(RunSweep(req), req.methods);
  const double at15 = *rows[0].delta_theta;
  const double at20 = *rows[2].delta_theta;
  const double at30 = *rows[4].delta_theta;
  CHECK(at15 >= 1.0);
  CHECK(at20 > at15);
  CHECK(at30 > at20);
}

TEST_CASE("manifest execution is reproducible") {
  const fs::path dir = TempDir("exec");
  RunManifest m;
  m.scenario.patterns = {PatternId::kIII};
  m.scenario.d_a_m = {3, 16};
  m.methods = {Method::kProposed, Method::kNoMove};
  m.out_dir = (dir / "a").string();
  std::ostringstream log;
  const ManifestOutcome a = ExecuteManifest(m, log);
  m.out_dir = (dir / "b").string();
  const ManifestOutcome b = ExecuteManifest(m, log);
  CHECK(a.files.size() == 5);
  for (const char* f : {"sweep_III_proposed.csv", "sweep_III_no-move.csv", "summary.csv",
                        "summary.txt"}) {
    CHECK(Slurp(dir / "a" / f) == Slurp(dir / "b" / f));
  }
  const auto prov = nlohmann::json::parse(Slurp(dir / "a" / "provenance.json"));
  CHECK(prov.contains("created_utc"));
  CHECK(prov["points"].size() == 2);
  CHECK(prov["points"][0]["seed"].get<std::uint64_t>() == a.rows[0].seed);
  CHECK(Slurp(dir / "a" / "sweep_III_proposed.csv").find("created") == std::string::npos);
}

TEST_CASE("scenario file sweep") {
  const fs::path dir = TempDir("file");
  const Scenario s = MakePattern(PatternId::kII, 8);
  SweepRequest req;
  req.scenario = s;
  req.methods = {Method::kProposed, Method::kGreedy};
  const auto rows = ToRows(RunSweep(req), req.methods);
  CHECK(rows.size() == 2);
  CHECK(rows[0].pattern == "file");
  CHECK(rows[0].d_a_m == 8);
  CHECK(rows[0].seed == DeriveSeed(1, 0));
}

int Cli(const std::string& args) {
  const std::string cmd = std::string(APGAME_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TEST_CASE("command line") {
  const fs::path dir = TempDir("cli");
  CHECK(Cli("sweep --pattern I --method proposed --method no-move --d-a-range 5:6 --out " +
            (dir / "s").string()) == 0);
  CHECK(fs::exists(dir / "s" / "sweep_I_proposed.csv"));
  std::ifstream in(dir / "s" / "sweep_I_proposed.csv");
  CHECK(ReadSweepCsv(in).size() == 2);
  CHECK(Cli("show " + (dir / "s" / "summary.csv").string()) == 0);
  CHECK(Cli("oracle --pattern II --d-a 10 --pair A,C") == 0);
  CHECK(Cli("sweep --pattern I --method fastest --out " + (dir / "x").string()) != 0);
  CHECK(Cli("sweep --pattern IX --method proposed --out " + (dir / "x").string()) == 2);
  CHECK(Cli("oracle --pattern I --d-a 10 --pair A,Q") == 2);
  CHECK(Cli("") != 0);
  const std::string env_run = "APGAME_OUT_DIR=" + (dir / "env").string() + " " +
                              APGAME_CLI_PATH +
                              " sweep --pattern I --method no-move --d-a-range 5 >/dev/null";
  CHECK(std::system(env_run.c_str()) == 0);
  CHECK(fs::exists(dir / "env" / "summary.csv"));
}

}  // namespace
}  // namespace apgame
