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

#include <atomic>
#include <filesystem>
#include <map>

#include "svcgraph/pipeline.hpp"

namespace svc {
namespace {

namespace fs = std::filesystem;

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = io::read_file(e.path());
  }
  return files;
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::path(::testing::TempDir()) /
            ("svcgraph_pipeline_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  DatasetOptions small(std::size_t count, int workers) const {
    DatasetOptions o;
    o.count = count;
    o.seed = 11;
    o.workers = workers;
    return o;
  }

  fs::path root_;
};

TEST(SplitCounts, TenImages) {
  const SplitCounts s = split_counts(10, {0.7, 0.2, 0.1});
  EXPECT_EQ(s.train, 7u);
  EXPECT_EQ(s.val, 2u);
  EXPECT_EQ(s.test, 1u);
}

TEST(SplitCounts, TwelveThousandImages) {
  const SplitCounts s = split_counts(12000, parse_split("0.7,0.2,0.1"));
  EXPECT_EQ(s.train, 8400u);
  EXPECT_EQ(s.val, 2400u);
  EXPECT_EQ(s.test, 1200u);
}

TEST(SplitCounts, RemainderGoesToTrain) {
  const SplitCounts s = split_counts(3, {0.7, 0.2, 0.1});
  EXPECT_EQ(s.train + s.val + s.test, 3u);
  EXPECT_EQ(s.train, 3u);
  for (std::size_t n : {1u, 7u, 99u, 1001u}) {
    const SplitCounts t = split_counts(n, {0.5, 0.25, 0.25});
    EXPECT_EQ(t.train + t.val + t.test, n);
  }
}

TEST(SplitCounts, InvalidFractionsRejected) {
  for (const auto& f : std::vector<std::array<double, 3>>{{0.5, 0.2, 0.1}, {1.2, -0.1, -0.1}}) {
    try {
      split_counts(10, f);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    }
  }
  EXPECT_THROW(parse_split("0.7,0.3"), Error);
  EXPECT_THROW(parse_split("a,b,c"), Error);
}

TEST(ParallelFor, VisitsEveryIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(500);
  parallel_for(hits.size(), 7, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(50, 4,
                            [](std::size_t i) {
                              if (i == 17) throw Error(ErrorCode::kIo, "boom");
                            }),
               Error);
}

TEST_F(PipelineTest, GenerateWritesSplitTreesAndManifest) {
  const DatasetManifest m = generate_dataset(small(10, 3), root_ / "ds");
  EXPECT_EQ(m.counts.train, 7u);
  for (const auto& [split, n] : std::vector<std::pair<std::string, std::size_t>>{{"train", 7}, {"val", 2}, {"test", 1}}) {
    const auto records = read_index(root_ / "ds" / split / "index.json");
    ASSERT_EQ(records.size(), n) << split;
    for (const auto& r : records) {
      for (const char* sub : {"labels", "texts"}) EXPECT_TRUE(fs::exists(root_ / "ds" / split / sub / (r.stem + ".txt")));
      EXPECT_TRUE(fs::exists(root_ / "ds" / split / "graphs" / (r.stem + ".json")));
      EXPECT_TRUE(fs::exists(root_ / "ds" / split / "graphs" / (r.stem + ".boxes.json")));
      EXPECT_TRUE(fs::exists(root_ / "ds" / split / "images" / (r.stem + ".png")));
    }
  }
  EXPECT_EQ(read_index(root_ / "ds" / "val" / "index.json")[0].stem, "000007");
  const io::json manifest = io::parse_json(io::read_file(root_ / "ds" / "manifest.json"));
  EXPECT_EQ(manifest["count"], 10);
  EXPECT_EQ(manifest["counts"]["test"], 1);
  EXPECT_EQ(split_dirs(root_ / "ds"), (std::vector<std::string>{"train", "val", "test"}));
}

TEST_F(PipelineTest, GenerationIndependentOfWorkerCount) {
  generate_dataset(small(6, 1), root_ / "a");
  generate_dataset(small(6, 4), root_ / "b");
  EXPECT_EQ(tree(root_ / "a"), tree(root_ / "b"));
}

TEST_F(PipelineTest, NoImagesOption) {
  DatasetOptions o = small(3, 1);
  o.write_images = false;
  generate_dataset(o, root_ / "ds");
  EXPECT_FALSE(fs::exists(root_ / "ds" / "train" / "images"));
  EXPECT_TRUE(fs::exists(root_ / "ds" / "train" / "labels" / "000000.txt"));
}

TEST_F(PipelineTest, FullChainWithOracleNoise) {
  DatasetOptions o = small(12, 4);
  o.write_images = false;
  generate_dataset(o, root_ / "ds");
  EXPECT_EQ(simulate_dataset(root_ / "ds", NoiseParams{}, root_ / "sim", 4), 12u);

  // Identity noise reproduces the labels with confidence 1.
  for (const auto& r : read_index(root_ / "sim" / "train" / "index.json")) {
    const auto dets = io::parse_detections(io::read_file(root_ / "sim" / "train" / "detections" / (r.stem + ".txt")),
                                           r.width, r.height);
    const auto labels =
        io::parse_labels(io::read_file(root_ / "ds" / "train" / "labels" / (r.stem + ".txt")), r.width, r.height);
    ASSERT_EQ(dets.size(), labels.size());
    for (std::size_t i = 0; i < dets.size(); ++i) {
      EXPECT_EQ(dets[i].cls, labels[i].cls);
      EXPECT_EQ(dets[i].box, labels[i].box);
      EXPECT_EQ(dets[i].confidence, 1.0);
    }
  }

  for (const char* split : {"train", "val", "test"}) {
    const fs::path sim = root_ / "sim" / split;
    reconstruct_tree(sim / "detections", sim / "text_detections", sim / "index.json", ReconstructParams{},
                     root_ / "rec" / split, 2);
  }
  EvaluateOptions eo;
  const io::json report = evaluate_graphs(root_ / "rec" / "train" / "graphs", root_ / "ds" / "train" / "graphs", eo);
  // 12 images split 9/2/1: train takes the remainder.
  EXPECT_EQ(report["images"], 9);
  EXPECT_EQ(report["per_image"].size() + report["degenerate"].size(), 9u);
  const auto& d = report["directed"]["norm_iso_error"];
  const auto& u = report["undirected"]["norm_iso_error"];
  EXPECT_LE(u["mean"].get<double>(), d["mean"].get<double>());
  EXPECT_GE(d["best"].get<double>(), 0.0);

  // Oracle detections give perfect per-class AP.
  const auto pairs = load_detection_pairs(root_ / "sim" / "train" / "detections", root_ / "ds" / "train" / "labels",
                                          root_ / "sim" / "train" / "index.json");
  const io::json det = detection_report(pairs);
  EXPECT_EQ(det["map"], 100.0);
  for (const auto& row : det["classes"]) {
    if (row["labels"] == 0) {
      EXPECT_EQ(row["ap"], "N/A");
    }
  }
}

TEST_F(PipelineTest, EvaluateRejectsMismatchedStems) {
  DatasetOptions o = small(4, 1);
  o.write_images = false;
  generate_dataset(o, root_ / "ds");
  fs::create_directories(root_ / "pred");
  fs::copy(root_ / "ds" / "train" / "graphs", root_ / "pred", fs::copy_options::recursive);
  fs::remove(root_ / "pred" / "000001.json");
  fs::remove(root_ / "pred" / "000001.boxes.json");
  try {
    evaluate_graphs(root_ / "pred", root_ / "ds" / "train" / "graphs", EvaluateOptions{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInputMismatch);
  }
}

TEST_F(PipelineTest, EvaluatingGroundTruthAgainstItselfIsPerfect) {
  DatasetOptions o = small(5, 2);
  o.write_images = false;
  generate_dataset(o, root_ / "ds");
  const fs::path g = root_ / "ds" / "train" / "graphs";
  const io::json r = evaluate_graphs(g, g, EvaluateOptions{});
  for (const auto& img : r["per_image"]) {
    EXPECT_EQ(img["directed_norm_iso_error"], 0.0);
    if (!img["text_rec_error"].is_null()) {
      EXPECT_EQ(img["text_rec_error"], 0.0);
    }
  }
  EvaluateOptions nodes;
  nodes.nodes_only = true;
  const io::json rn = evaluate_graphs(g, g, nodes);
  EXPECT_TRUE(rn["directed"].contains("node_norm_error"));
  EXPECT_FALSE(rn["directed"].contains("edge_norm_error"));
  EXPECT_FALSE(rn["directed"].contains("norm_iso_error"));
}

TEST_F(PipelineTest, MissingIndexIsIoError) {
  try {
    simulate_dataset(root_, NoiseParams{}, root_ / "out");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST_F(PipelineTest, MalformedLabelIsIoError) {
  DatasetOptions o = small(2, 1);
  o.write_images = false;
  generate_dataset(o, root_ / "ds");
  io::write_file_atomic(root_ / "ds" / "train" / "labels" / "000000.txt", "garbage\n");
  try {
    simulate_dataset(root_ / "ds", NoiseParams{}, root_ / "out");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace svc
