// Copyright 2026 The ocf-games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path TempDir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("ocf_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CmdResult RunCli(const std::string& args) {
  const char* cli = std::getenv("OCF_CLI");
  REQUIRE(cli != nullptr);
  const fs::path out = TempDir() / "stdout.txt";
  const fs::path err = TempDir() / "stderr.txt";
  const std::string cmd = std::string(cli) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  CmdResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = ReadFile(out);
  res.err = ReadFile(err);
  return res;
}

int CountLines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("example reproduces the worked payoffs and exits 0") {
  const auto res = RunCli("example");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("welfare 3400") != std::string::npos);
  CHECK(res.out.find("welfare 4800") != std::string::npos);
  CHECK(res.out.find("(1200, 1200, 1000)") != std::string::npos);
  CHECK(res.out.find("(1600, 1600, 1600)") != std::string::npos);
}

TEST_CASE("example under equal division still passes the welfare check") {
  const auto res = RunCli("example --division equal");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("welfare 4800") != std::string::npos);
}

TEST_CASE("example under conservative arbitration converges") {
  const auto res = RunCli("example --arbitration conservative");
  CHECK(res.out.find("welfare trace") != std::string::npos);
  // welfare never decreases along the printed trace
  std::istringstream is(res.out.substr(res.out.find("welfare trace") + 13));
  double prev = -1.0, w = 0.0;
  while (is >> w) {
    CHECK(w >= prev);
    prev = w;
  }
}

TEST_CASE("missing config file exits 2 with a diagnostic") {
  const auto res = RunCli("hetnet --config /nonexistent.json");
  CHECK(res.exit_code == 2);
  CHECK(!res.err.empty());
}

TEST_CASE("malformed instance file exits 2") {
  const fs::path bad = TempDir() / "bad.json";
  std::ofstream(bad) << "{ not json";
  const auto res = RunCli("certify " + bad.string());
  CHECK(res.exit_code == 2);
  CHECK(!res.err.empty());
}

TEST_CASE("five-seed sensing run writes 15 data rows, byte-stable") {
  const fs::path cfg = TempDir() / "sensing.json";
  std::ofstream(cfg) << R"({"n_su": 8, "report_budget_bits": 3})";
  const fs::path csv1 = TempDir() / "s1.csv";
  const fs::path csv2 = TempDir() / "s2.csv";

  const auto r1 = RunCli("sensing --config " + cfg.string() + " --out " +
                         csv1.string() + " --seeds 1,2,3,4,5");
  CHECK(r1.exit_code == 0);
  const std::string text1 = ReadFile(csv1);
  CHECK(CountLines(text1) == 16);  // header + 3 strategies x 5 seeds
  CHECK(text1.rfind("scenario,seed,strategy,metric,welfare,iterations,wall_ms",
                    0) == 0);

  const auto r2 = RunCli("sensing --config " + cfg.string() + " --out " +
                         csv2.string() + " --seeds 1,2,3,4,5");
  CHECK(r2.exit_code == 0);
  CHECK(text1 == ReadFile(csv2));
}

TEST_CASE("hetnet run is byte-stable too") {
  const fs::path cfg = TempDir() / "hetnet.json";
  std::ofstream(cfg) << R"({"n_sbs": 8, "rb_pool": 8, "seeds": [1, 2]})";
  const fs::path csv1 = TempDir() / "h1.csv";
  const fs::path csv2 = TempDir() / "h2.csv";
  CHECK(RunCli("hetnet --config " + cfg.string() + " --out " + csv1.string())
            .exit_code == 0);
  CHECK(RunCli("hetnet --config " + cfg.string() + " --out " + csv2.string())
            .exit_code == 0);
  const std::string text = ReadFile(csv1);
  CHECK(text == ReadFile(csv2));
  CHECK(CountLines(text) == 7);  // header + 3 strategies x 2 seeds
}

TEST_CASE("certify verdicts for the built-in fixtures") {
  CHECK(RunCli("certify --fixture overlap").exit_code == 0);
  const auto bad = RunCli("certify --fixture disjoint");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("NOT stable") != std::string::npos);
}

TEST_CASE("emitted instance files round-trip through certify") {
  const fs::path dir = TempDir();
  CHECK(RunCli("example --emit-instances " + dir.string()).exit_code == 0);
  CHECK(RunCli("certify " + (dir / "overlap.json").string()).exit_code == 0);
  CHECK(RunCli("certify " + (dir / "disjoint.json").string()).exit_code == 1);
}
