// Copyright 2026 The Haraux Authors
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

#include "haraux_cli/cli.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "haraux/bounds.h"
#include "haraux/oracle.h"
#include "haraux_cli/csv.h"
#include "haraux_cli/figure1.h"
#include "haraux_cli/verify.h"

namespace haraux::cli {
namespace {

namespace fs = std::filesystem;

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    rows.push_back(fields);
  }
  return rows;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path TempDir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() /
                       ("haraux_cli_test_" + tag + "_" +
                        std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult RunCli(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = RunCommand(cfg, out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell.
RunResult RunBinary(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path dir = TempDir("bin" + std::to_string(counter++));
  const std::string cmd = env + " '" + std::string(HARAUX_BINARY) + "' " +
                          args + " > '" + (dir / "out").string() + "' 2> '" +
                          (dir / "err").string() + "'";
  const int status = std::system(cmd.c_str());
  RunResult r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, ReadFile(dir / "out"),
        ReadFile(dir / "err")};
  fs::remove_all(dir);
  return r;
}

// True when every opening tag is closed in order.
bool TagsBalanced(const std::string& xml) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  while ((pos = xml.find('<', pos)) != std::string::npos) {
    const std::size_t end = xml.find('>', pos);
    if (end == std::string::npos) return false;
    const std::string tag = xml.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag.back() == '/') continue;
    const std::string name = tag.substr(
        tag[0] == '/' ? 1 : 0, tag.find_first_of(" \t\n") - (tag[0] == '/'));
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else {
      stack.push_back(name);
    }
  }
  return stack.empty();
}

TEST(ParsePointTest, AcceptsAndRejects) {
  const DualPair p = ParsePoint("1,-2.5;+3,4e-1");
  EXPECT_EQ(p.x(), (Vec{1, -2.5}));
  EXPECT_EQ(p.u_star(), (Vec{3, 0.4}));
  EXPECT_THROW(ParsePoint("1,2"), UsageError);
  EXPECT_THROW(ParsePoint("1,2;3"), UsageError);
  EXPECT_THROW(ParsePoint("1;x"), UsageError);
  EXPECT_THROW(ParsePoint("1;2;3"), UsageError);
}

TEST(ParseGridTest, XIsTheSlowestAxis) {
  const auto g = ParseGrid("0:1:3;-1:1:2");
  ASSERT_EQ(g.size(), 6u);
  EXPECT_EQ(g[0].x()[0], 0.0);
  EXPECT_EQ(g[0].u_star()[0], -1.0);
  EXPECT_EQ(g[1].u_star()[0], 1.0);
  EXPECT_EQ(g[2].x()[0], 0.5);
  EXPECT_EQ(g[5].x()[0], 1.0);
  EXPECT_EQ(ParseGrid("2;-1:0:5").size(), 5u);
  EXPECT_THROW(ParseGrid("0:1:3"), UsageError);
  EXPECT_THROW(ParseGrid("0:1:0;0"), UsageError);
  EXPECT_THROW(ParseGrid("0:1;0"), UsageError);
}

TEST(ParseOperatorTest, Kinds) {
  EXPECT_EQ(ParseOperator("identity", 2).Apply(Vec{1, 2}), (Vec{1, 2}));
  EXPECT_NEAR(ParseOperator("grad:burg", 1).Apply(Vec{2})[0], -0.5, 1e-15);
  EXPECT_NEAR(ParseOperator("subdiff:quadratic", 1).Apply(Vec{3})[0], 3,
              1e-15);
  const Vec r = ParseOperator("joca16:1,quadratic", 2).Apply(Vec{1, 0});
  EXPECT_EQ(r.dim(), 2u);
  EXPECT_THROW(ParseOperator("joca16:1,quadratic", 1), UsageError);
  EXPECT_THROW(ParseOperator("nonsense", 1), UsageError);
  EXPECT_THROW(ParseOperator("grad:nonsense", 1), UsageError);
}

TEST(ReadMatrixFileTest, CommentsOffsetsAndSkew) {
  const fs::path dir = TempDir("matrix");
  {
    std::ofstream m(dir / "a.txt");
    m << "# affine map with offset\n2 0\n\n0 3\n1 -1\n";
  }
  const Matrix a = ReadMatrixFile((dir / "a.txt").string());
  EXPECT_EQ(a.rows(), 3u);
  EXPECT_EQ(a(1, 1), 3.0);
  const auto op = ParseOperator("affine:" + (dir / "a.txt").string(), 2);
  EXPECT_EQ(op.Apply(Vec{1, 1}), (Vec{3, 2}));
  {
    std::ofstream m(dir / "l.txt");
    m << "1 2\n";
  }
  const auto skew = ParseOperator("skew:" + (dir / "l.txt").string(), 3);
  EXPECT_NEAR(Pairing(Vec{1, 2, 3}, skew.Apply(Vec{1, 2, 3})), 0, 1e-15);
  EXPECT_THROW(ParseOperator("skew:" + (dir / "l.txt").string(), 2),
               UsageError);
  EXPECT_THROW(ReadMatrixFile((dir / "missing.txt").string()), UsageError);
  fs::remove_all(dir);
}

TEST(ResolveSeedTest, FlagThenEnvironmentThenDefault) {
  ::unsetenv("HARAUX_SEED");
  EXPECT_EQ(ResolveSeed(std::nullopt), kDefaultSeed);
  ::setenv("HARAUX_SEED", "0x10", 1);
  EXPECT_EQ(ResolveSeed(std::nullopt), 16u);
  EXPECT_EQ(ResolveSeed(7), 7u);
  ::setenv("HARAUX_SEED", "junk", 1);
  EXPECT_THROW(ResolveSeed(std::nullopt), UsageError);
  ::unsetenv("HARAUX_SEED");
}

TEST(RunCommandTest, BurgBregmanIsOneSixth) {
  const RunResult r = RunCli({.command = "bound",
                        .phi = "burg",
                        .methods = {"bregman", "burg_closed"},
                        .points = {"1;-2"}});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = ParseCsv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0][0], "x");
  for (int i = 1; i <= 2; ++i) {
    EXPECT_NEAR(std::stod(rows[i][4]), 1.0 / 6, 1e-12);
    EXPECT_NEAR(std::stod(rows[i][5]), 1 - std::log(2.0), 1e-12);
  }
}

TEST(RunCommandTest, CompositeCarlierAndGraphZero) {
  RunResult r = RunCli({.command = "bound",
                  .phi = "quad_plus:quadratic",
                  .methods = {"carlier_fy"},
                  .points = {"1;0"}});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(std::stod(ParseCsv(r.out)[1][4]), 4.0 / 9, 1e-12);
  r = RunCli({.command = "bound", .phi = "burg", .points = {"2;-0.5"}});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_LE(std::stod(ParseCsv(r.out)[1][4]), 1e-12);
}

TEST(RunCommandTest, OperatorModeHasNoExactColumn) {
  const RunResult r = RunCli({.command = "bound",
                        .op_a = "joca16:0.5,softplus",
                        .methods = {"pairing", "strong"},
                        .points = {"1,1;0,0"}});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = ParseCsv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][5], "");
  EXPECT_GT(std::stod(rows[1][4]), 0);
}

TEST(RunCommandTest, ExitCodes) {
  EXPECT_EQ(RunCli({.command = "bound", .phi = "nonsense", .points = {"1;1"}})
                .code,
            kExitConfigError);
  EXPECT_EQ(RunCli({.command = "bound", .points = {"1;1"}}).code,
            kExitConfigError);
  EXPECT_EQ(RunCli({.command = "bound",
                    .phi = "burg",
                    .gammas = {-1},
                    .points = {"1;-1"}})
                .code,
            kExitConfigError);
  EXPECT_EQ(RunCli({.command = "bound",
                    .op_a = "grad:burg",
                    .methods = {"bregman"},
                    .points = {"1;-1"}})
                .code,
            kExitConfigError);
  // No z > 0 solves -1/z - 1/z = 1/x + 2: the resolvent has no solution.
  const RunResult none = RunCli({.command = "bound",
                           .phi = "burg",
                           .methods = {"bregman"},
                           .points = {"1;2"}});
  EXPECT_EQ(none.code, kExitSolverFailure);
  EXPECT_FALSE(none.err.empty());
  EXPECT_EQ(RunCli({.command = "sweep", .phi = "burg"}).code,
            kExitConfigError);
  EXPECT_EQ(RunCli({.command = "frobnicate"}).code, kExitConfigError);
}

TEST(RunCommandTest, CsvValuesRoundTripAtFullPrecision) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> d(-1e3, 1e3);
  for (int k = 0; k < 10000; ++k) {
    const double v = d(rng) * std::pow(10.0, k % 40 - 20);
    ASSERT_EQ(std::strtod(FormatDouble(v).c_str(), nullptr), v);
  }
  const RunResult r = RunCli({.command = "bound",
                        .phi = "boltzmann_shannon",
                        .methods = {"pairing"},
                        .gammas = {0.3},
                        .points = {"0.7;0.2"}});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const double lib =
      FyBoundDispatch(SeparableFunction(BoltzmannShannon(), 1),
                      DualPair(Vec{0.7}, Vec{0.2}), 0.3, BoundMethod::kPairing,
                      {.modulus = UniformModulus::Strong(1.0)})
          .value;
  EXPECT_EQ(std::strtod(ParseCsv(r.out)[1][4].c_str(), nullptr), lib);
}

TEST(RunCommandTest, SweepIsOrderedAndDeterministic) {
  const RunConfig cfg{.command = "sweep",
                      .phi = "burg",
                      .methods = {"pairing", "carlier_fy"},
                      .gammas = {0.5, 2},
                      .grid = "0.1:3:17;-3:-0.1:13"};
  const RunResult a = RunCli(cfg), b = RunCli(cfg);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto rows = ParseCsv(a.out);
  ASSERT_EQ(rows.size(), 1u + 17 * 13 * 4);
  EXPECT_EQ(rows[1][0], "0.10000000000000001");
  EXPECT_EQ(rows[1][2], "0.5");
  EXPECT_EQ(rows[1][3], "pairing");
  EXPECT_EQ(rows[2][3], "carlier_fy");
  EXPECT_EQ(rows[3][2], "2");
  RunConfig svg = cfg;
  svg.format = "svg";
  const RunResult s = RunCli(svg);
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_TRUE(TagsBalanced(s.out));
}

TEST(RunCommandTest, GaugeOnHandSolvedInstance) {
  const fs::path dir = TempDir("gauge");
  {
    std::ofstream m(dir / "l.txt");
    m << "1\n";
  }
  const RunResult r = RunCli({.command = "gauge",
                        .points = {"0;0", "0.1;0.1"},
                        .op_c = "grad:quadratic",
                        .op_dinv = "grad:quadratic",
                        .matrix = (dir / "l.txt").string()});
  fs::remove_all(dir);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = ParseCsv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0][2], "gauge_value");
  EXPECT_LE(std::stod(rows[1][2]), 1e-12);
  EXPECT_NEAR(std::stod(rows[2][2]), 0.01, 1e-15);
}

TEST(Figure1Test, PanelsRowsAndDominance) {
  const auto panels = ComputeFigure1();
  ASSERT_EQ(panels.size(), 4u);
  for (const auto& panel : panels) {
    ASSERT_EQ(panel.rows.size(), 2u * kFigure1Points) << panel.id;
    bool gain = false;
    for (const auto& r : panel.rows) {
      gain = gain || r.new_bound - r.carlier_bound >= 1e-6;
      EXPECT_LE(r.new_bound, r.exact_l + 1e-9);
      EXPECT_LE(r.carlier_bound, r.exact_l + 1e-9);
    }
    EXPECT_TRUE(gain) << panel.id;
    EXPECT_TRUE(TagsBalanced(Figure1Svg(panel))) << panel.id;
  }
}

TEST(BinaryTest, Figure1WritesFiles) {
  const fs::path dir = TempDir("figure1");
  const RunResult r = RunBinary("figure1 --out '" + dir.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  int panels = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".csv") continue;
    ++panels;
    const auto rows = ParseCsv(ReadFile(entry.path()));
    EXPECT_EQ(rows.size(), 1u + 2 * kFigure1Points) << entry.path();
    fs::path svg = entry.path();
    svg.replace_extension(".svg");
    EXPECT_TRUE(TagsBalanced(ReadFile(svg))) << svg;
  }
  EXPECT_EQ(panels, 4);
  fs::remove_all(dir);
}

TEST(BinaryTest, VerifyPassesAndCorruptionFails) {
  const RunResult ok = RunBinary("verify");
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto rows = ParseCsv(ok.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"module", "check", "status",
                                               "measured", "threshold"}));
  std::set<std::string> modules;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    modules.insert(rows[i][0]);
    EXPECT_EQ(rows[i][2], "pass") << rows[i][1];
  }
  EXPECT_EQ(modules, (std::set<std::string>{"core", "functions", "operators",
                                            "solvers", "bounds", "oracle",
                                            "gauges", "cli"}));
  const RunResult bad = RunBinary("verify --corrupt-tolerance skew_pairing_zero");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("skew_pairing_zero"), std::string::npos);
  EXPECT_EQ(RunBinary("verify --corrupt-tolerance no_such_check").code, 2);
}

TEST(BinaryTest, SeedFlagOverridesEnvironment) {
  EXPECT_EQ(RunBinary("verify", "HARAUX_SEED=junk").code, 2);
  EXPECT_EQ(RunBinary("verify --seed 5", "HARAUX_SEED=junk").code, 0);
  EXPECT_EQ(RunBinary("verify", "HARAUX_SEED=12345").code, 0);
}

TEST(BinaryTest, ExitCodesAndConfigFile) {
  EXPECT_EQ(RunBinary("bound --phi nonsense --point '1;1'").code, 2);
  EXPECT_EQ(RunBinary("bound --phi burg --method bregman --point '1;2'").code,
            3);
  EXPECT_EQ(RunBinary("nonsense").code, 2);
  EXPECT_EQ(RunBinary("bound --no-such-flag").code, 2);
  EXPECT_EQ(RunBinary("--help").code, 0);

  const fs::path dir = TempDir("config");
  {
    std::ofstream c(dir / "run.ini");
    c << "command=bound\nphi=burg\nmethod=bregman\npoint=1;-2\n";
  }
  const RunResult r = RunBinary("--config '" + (dir / "run.ini").string() + "'");
  fs::remove_all(dir);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = ParseCsv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][4]), 1.0 / 6, 1e-12);
}

}  // namespace
}  // namespace haraux::cli
