// Copyright 2026 The svcgraph Authors. All Rights Reserved.
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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "svcgraph/cli.hpp"

namespace svc {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ::unsetenv("SVC_SEED");
    root_ = fs::path(::testing::TempDir()) /
            ("svcgraph_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override {
    ::unsetenv("SVC_SEED");
    fs::remove_all(root_);
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run_cli(args, out_, err_);
  }

  std::string p(const std::string& rel) const { return (root_ / rel).string(); }

  void write(const std::string& rel, const std::string& body) const { io::write_file_atomic(root_ / rel, body); }

  fs::path root_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, HelpAndVersionExitZero) {
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_NE(out_.str().find("generate"), std::string::npos);
  EXPECT_EQ(run({"--version"}), 0);
  EXPECT_EQ(out_.str(), "0.1.0\n");
}

TEST_F(CliTest, BadArgumentsExitTwo) {
  EXPECT_EQ(run({"generate", "--out", p("d")}), cli::kExitConfig);
  EXPECT_EQ(run({"generate", "--count", "-3", "--out", p("d")}), cli::kExitConfig);
  EXPECT_EQ(run({"generate", "--count", "10", "--split", "0.5,0.5,0.5", "--out", p("d")}), cli::kExitConfig);
  EXPECT_EQ(run({"frobnicate"}), cli::kExitConfig);
  EXPECT_EQ(run({"render", "--image", p("x.png"), "--out", p("y.png")}), cli::kExitConfig);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, BadConfigFilesExitTwo) {
  EXPECT_EQ(run({"generate", "--count", "2", "--config", p("missing.json"), "--out", p("d")}), cli::kExitConfig);
  write("bad.json", R"({"p_striped": 2.0})");
  EXPECT_EQ(run({"generate", "--count", "2", "--config", p("bad.json"), "--out", p("d")}), cli::kExitConfig);
  write("typo.json", R"({"p_drp": 0.1})");
  EXPECT_EQ(run({"simulate", "--dataset", p("d"), "--noise-config", p("typo.json"), "--out", p("s")}),
            cli::kExitConfig);
  write("notjson.json", "{");
  EXPECT_EQ(run({"reconstruct", "--detections", p("a"), "--texts", p("b"), "--params", p("notjson.json"), "--out",
                 p("r")}),
            cli::kExitConfig);
  ::setenv("SVC_SEED", "banana", 1);
  EXPECT_EQ(run({"generate", "--count", "1", "--no-images", "--out", p("d")}), cli::kExitConfig);
  EXPECT_FALSE(fs::exists(root_ / "d"));
}

TEST_F(CliTest, MissingOrMalformedInputsExitThree) {
  EXPECT_EQ(run({"simulate", "--dataset", p("nowhere"), "--out", p("s")}), cli::kExitIo);
  ASSERT_EQ(run({"generate", "--count", "3", "--no-images", "--out", p("d")}), 0);
  write("d/train/labels/000001.txt", "0 0.5 0.5\n");
  EXPECT_EQ(run({"simulate", "--dataset", p("d"), "--out", p("s")}), cli::kExitIo);
  EXPECT_EQ(run({"render", "--image", p("nowhere.png"), "--graph", p("g.json"), "--out", p("o.png")}), cli::kExitIo);
}

TEST_F(CliTest, StemMismatchExitsFour) {
  ASSERT_EQ(run({"generate", "--count", "4", "--no-images", "--out", p("d")}), 0);
  fs::copy(root_ / "d/train/graphs", root_ / "pred");
  fs::remove(root_ / "pred/000000.json");
  fs::remove(root_ / "pred/000000.boxes.json");
  EXPECT_EQ(run({"evaluate", "--pred", p("pred"), "--gt", p("d/train/graphs"), "--report", p("r.json")}),
            cli::kExitMismatch);
  EXPECT_FALSE(fs::exists(root_ / "r.json"));
}

TEST_F(CliTest, FullPipelineIsDeterministicAndRerunnable) {
  for (const char* tag : {"a", "b"}) {
    const std::string t(tag);
    ASSERT_EQ(run({"generate", "--count", "5", "--seed", "3", "--workers", t == "a" ? "1" : "3", "--out", p(t + "/ds")}),
              0)
        << err_.str();
    ASSERT_EQ(run({"simulate", "--dataset", p(t + "/ds"), "--out", p(t + "/sim")}), 0) << err_.str();
    ASSERT_EQ(run({"reconstruct", "--detections", p(t + "/sim/train/detections"), "--texts",
                   p(t + "/sim/train/text_detections"), "--out", p(t + "/rec")}),
              0)
        << err_.str();
    ASSERT_EQ(run({"evaluate", "--pred", p(t + "/rec/graphs"), "--gt", p(t + "/ds/train/graphs"), "--report",
                   p(t + "/report.json"), "--detections", p(t + "/sim/train/detections"), "--labels",
                   p(t + "/ds/train/labels")}),
              0)
        << err_.str();
  }
  for (const char* f : {"ds/train/labels/000002.txt", "ds/train/images/000000.png", "ds/manifest.json",
                        "rec/graphs/000001.json", "sim/train/detections/000003.txt"}) {
    EXPECT_EQ(io::read_file(root_ / "a" / f), io::read_file(root_ / "b" / f)) << f;
  }
  const io::json report = io::parse_json(io::read_file(root_ / "a/report.json"));
  EXPECT_EQ(report["detection"]["map"], 100.0);
  EXPECT_EQ(io::read_file(root_ / "a/report.json"), io::read_file(root_ / "b/report.json"));

  // Rerunning the stored description reproduces the outputs.
  const std::string before = io::read_file(root_ / "a/rec/graphs/000001.json");
  fs::remove_all(root_ / "a/rec/graphs");
  EXPECT_EQ(run({"rerun", p("a/rec/run.json")}), 0) << err_.str();
  EXPECT_EQ(io::read_file(root_ / "a/rec/graphs/000001.json"), before);
  const std::string report_before = io::read_file(root_ / "a/report.json");
  fs::remove(root_ / "a/report.json");
  EXPECT_EQ(run({"rerun", p("a/report.json.run.json")}), 0);
  EXPECT_EQ(io::read_file(root_ / "a/report.json"), report_before);
}

TEST_F(CliTest, EnvironmentSeedOverridesFlag) {
  ASSERT_EQ(run({"generate", "--count", "1", "--seed", "99", "--no-images", "--out", p("flag")}), 0);
  ::setenv("SVC_SEED", "99", 1);
  ASSERT_EQ(run({"generate", "--count", "1", "--seed", "5", "--no-images", "--out", p("env")}), 0);
  EXPECT_EQ(io::read_file(root_ / "flag/train/labels/000000.txt"), io::read_file(root_ / "env/train/labels/000000.txt"));
  const io::json stored = io::parse_json(io::read_file(root_ / "env/run.json"));
  EXPECT_EQ(stored["args"]["seed"], 99);
}

TEST_F(CliTest, FullDropWritesEmptyDetectionFiles) {
  ASSERT_EQ(run({"generate", "--count", "2", "--out", p("d")}), 0);
  write("drop.json", R"({"p_drop": 1.0})");
  ASSERT_EQ(run({"simulate", "--dataset", p("d"), "--noise-config", p("drop.json"), "--out", p("s")}), 0)
      << err_.str();
  EXPECT_EQ(io::read_file(root_ / "s/train/detections/000000.txt"), "");
  EXPECT_EQ(io::read_file(root_ / "s/train/text_detections/000000.txt"), "");

  // An empty overlay leaves the image unchanged.
  ASSERT_EQ(run({"render", "--image", p("d/train/images/000000.png"), "--detections",
                 p("s/train/detections/000000.txt"), "--out", p("overlay.png")}),
            0)
      << err_.str();
  const RasterImage in = decode_png(io::read_file(root_ / "d/train/images/000000.png"));
  const RasterImage out = decode_png(io::read_file(root_ / "overlay.png"));
  EXPECT_EQ(in.width, out.width);
  EXPECT_EQ(in.pixels, out.pixels);

  ASSERT_EQ(run({"render", "--image", p("d/train/images/000000.png"), "--graph", p("d/train/graphs/000000.json"),
                 "--out", p("graph.png")}),
            0)
      << err_.str();
  EXPECT_TRUE(fs::exists(root_ / "graph.png"));
}

TEST_F(CliTest, BinaryReportsExitCodes) {
  const std::string bin = SVCGRAPH_CLI;
  const auto code = [](const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(code(bin + " --version"), 0);
  EXPECT_EQ(code(bin + " generate --count nope --out " + p("d")), 2);
  EXPECT_EQ(code(bin + " simulate --dataset " + p("missing") + " --out " + p("s")), 3);
  EXPECT_EQ(code(bin + " generate --count 2 --no-images --out " + p("d")), 0);
  EXPECT_TRUE(fs::exists(root_ / "d/manifest.json"));
}

}  // namespace
}  // namespace svc
