// Copyright 2026 The Authors.
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


#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "support/fixtures.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(TIP_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / "tip_cli_pipeline";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ASSERT_EQ(run("gen --out " + p("raw") +
                  " --seed 9 --billboards 18 --trajectories 120 --width-km 3 --height-km 3"
                  " --mean-length-km 0.6"),
              0);
    ASSERT_EQ(run("cost --manifest " + p("raw/manifest.json") + " --out " + p("data") +
                  " --seed 3 --lambda 100 --prob-model uniform:0.3 --divisor 1 --unit 1"),
              0);
    ASSERT_EQ(run("index --manifest " + p("data/manifest.json") +
                  " --lambda 100 --prob-model uniform:0.3 --out " + p("index.json")),
              0);
    ASSERT_EQ(run("partition --index " + p("index.json") + " --theta 0.2 --mode volume --out " +
                  p("partition.json")),
              0);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string p(const std::string& name) { return (dir_ / name).string(); }

  static fs::path dir_;
};

fs::path Cli::dir_;

TEST_F(Cli, PipelineArtifacts) {
  const auto manifest = json::parse(read(p("data/manifest.json")));
  EXPECT_EQ(manifest["billboard_count"], 18);
  EXPECT_EQ(manifest["trajectory_count"], 120);
  const auto index = json::parse(read(p("index.json")));
  EXPECT_EQ(index["forward"].size(), 18u);
  const auto partition = json::parse(read(p("partition.json")));
  EXPECT_EQ(partition["mode"], "volume");
  EXPECT_EQ(run("ingest --manifest " + p("data/manifest.json")), 0);
}

TEST_F(Cli, EverySolverIsDeterministic) {
  for (const char* algo : {"greedy", "enum", "partsel", "lazyprobe", "topk", "anneal", "exact"}) {
    std::string args = std::string("select --index ") + p("index.json") + " --algo " + algo +
                       " --budget 20 --no-timing";
    if (std::string(algo) == "partsel" || std::string(algo) == "lazyprobe") {
      args += " --partition " + p("partition.json");
    }
    ASSERT_EQ(run(args + " --out " + p(std::string(algo) + "_a.json")), 0) << algo;
    ASSERT_EQ(run(args + " --out " + p(std::string(algo) + "_b.json")), 0) << algo;
    const auto a = read(p(std::string(algo) + "_a.json"));
    EXPECT_EQ(a, read(p(std::string(algo) + "_b.json"))) << algo;
    const auto r = json::parse(a);
    EXPECT_EQ(r["algorithm"], algo);
    EXPECT_LE(r["cost"].get<double>(), 20.0);
    EXPECT_EQ(r["wall_ms"], 0.0);
  }
}

TEST_F(Cli, DumpMatrices) {
  ASSERT_EQ(run("select --index " + p("index.json") + " --algo lazyprobe --budget 12 --theta 0.2" +
                " --dump-matrices " + p("tables.json") + " --out " + p("lazy.json")),
            0);
  const auto tables = json::parse(read(p("tables.json")));
  EXPECT_TRUE(tables.contains("theta"));
  EXPECT_TRUE(tables.contains("psi_upper"));
}

TEST_F(Cli, Bench) {
  std::ofstream(p("spec.json")) << json{{"dataset", p("data/manifest.json")},
                                         {"budgets", {8, 16}},
                                         {"lambdas", {100}},
                                         {"models", {"uniform:0.3"}},
                                         {"algorithms", {"greedy", "lazyprobe"}}}
                                       .dump();
  ASSERT_EQ(run("bench --spec " + p("spec.json") + " --no-timing --csv " + p("a.csv") +
                " --json " + p("a.json")),
            0);
  ASSERT_EQ(run("bench --spec " + p("spec.json") + " --no-timing --csv " + p("b.csv")), 0);
  const auto csv = read(p("a.csv"));
  EXPECT_EQ(csv.rfind("#tip-results,v1\n", 0), 0u);
  EXPECT_EQ(csv, read(p("b.csv")));
  EXPECT_EQ(json::parse(read(p("a.json")))["rows"].size(), 4u);
}

TEST_F(Cli, Errors) {
  EXPECT_NE(run(""), 0);
  EXPECT_NE(run("select --index " + p("index.json") + " --algo nope --budget 5"), 0);
  EXPECT_NE(run("select --index " + p("index.json") + " --algo greedy --budget -1"), 0);
  EXPECT_NE(run("select --index " + p("index.json") + " --algo partsel --budget 7 --theta 0.2"
                " --quantum 3"),
            0);
  EXPECT_NE(run("index --manifest " + p("data/manifest.json") + " --lambda 100 --prob-model bad"),
            0);
  EXPECT_NE(run("partition --index " + p("index.json") + " --theta 0.2 --mode wrong"), 0);
  EXPECT_NE(run("ingest --manifest " + p("missing.json")), 0);
  EXPECT_NE(run("gen --out " + p("x")), 0);
  ASSERT_EQ(run("gen --out " + p("big") + " --seed 1 --billboards 24 --trajectories 30"), 0);
  ASSERT_EQ(run("index --manifest " + p("big/manifest.json") + " --lambda 100 --prob-model " +
                "panel-half --out " + p("big.json")),
            0);
  EXPECT_NE(run("select --index " + p("big.json") + " --algo exact --budget 5000"), 0);
}

}  // namespace
