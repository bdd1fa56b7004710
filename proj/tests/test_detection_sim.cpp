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

#include <cmath>
#include <numbers>
#include <set>

#include "svcgraph/detection_sim.hpp"
#include "svcgraph/generator.hpp"
#include "svcgraph/metrics.hpp"

namespace svc {
namespace {

AnnotationSet sample_annotations(std::uint64_t seed) {
  return emit_ground_truth(sample_scene(GenConfig{}, seed)).annotations;
}

TEST(OracleDetections, OnePerObjectWithFullConfidence) {
  AnnotationSet a;
  a.objects.push_back({ObjectClass::node(), {0, 0, 10, 10}});
  a.objects.push_back({ObjectClass::edge(EdgeClass::kT2B), {5, 10, 15, 40}});
  a.objects.push_back({ObjectClass::node(), {0, 40, 10, 50}});
  const DetectionSet d = oracle_detections(a);
  ASSERT_EQ(d.size(), 3u);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(d[i].cls, a.objects[i].cls);
    EXPECT_EQ(d[i].box, a.objects[i].box);
    EXPECT_EQ(d[i].confidence, 1.0);
  }
  EXPECT_TRUE(oracle_detections(AnnotationSet{}).empty());
  EXPECT_TRUE(oracle_texts(AnnotationSet{}).empty());
}

TEST(PerturbDetections, IdentityNoiseIsIdentity) {
  const AnnotationSet a = sample_annotations(4);
  NoiseParams p;
  p.seed = 17;
  EXPECT_EQ(perturb_detections(oracle_detections(a), p, 2000, 2000), oracle_detections(a));
  EXPECT_EQ(perturb_texts(oracle_texts(a), p, 2000, 2000), oracle_texts(a));
}

TEST(PerturbDetections, DropAllGivesEmpty) {
  const AnnotationSet a = sample_annotations(5);
  NoiseParams p;
  p.p_drop = 1;
  EXPECT_TRUE(perturb_detections(oracle_detections(a), p, 2000, 2000).empty());
  EXPECT_TRUE(perturb_texts(oracle_texts(a), p, 2000, 2000).empty());
  EXPECT_TRUE(perturb_detections({}, NoiseParams{}, 10, 10).empty());
  EXPECT_TRUE(perturb_texts({}, NoiseParams{}, 10, 10).empty());
}

TEST(PerturbDetections, UpwardEdgeConfusedWithNeighbouringDiagonals) {
  const DetectionSet d{{ObjectClass::edge(EdgeClass::kB2T), {10, 10, 20, 60}, 1.0}};
  NoiseParams p;
  p.p_misclass = 1;
  std::set<EdgeClass> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    p.seed = seed;
    const auto out = perturb_detections(d, p, 100, 100);
    ASSERT_EQ(out.size(), 1u);
    seen.insert(out[0].cls.edge_class());
  }
  EXPECT_EQ(seen, (std::set<EdgeClass>{EdgeClass::kBl2Tr, EdgeClass::kBr2Tl}));
}

TEST(PerturbDetections, NodesAreNeverReclassified) {
  const DetectionSet d{{ObjectClass::node(), {10, 10, 20, 60}, 1.0}};
  NoiseParams p;
  p.p_misclass = 1;
  EXPECT_EQ(perturb_detections(d, p, 100, 100)[0].cls, ObjectClass::node());
}

// Oracle for the adjacency table: the two classes whose direction angle is
// nearest. Directed classes point from source to target; bidirectional
// classes are axes, so angles compare modulo 180 degrees.
double class_angle(EdgeClass c) {
  const BBox box{0, 0, 10, 10};
  const auto [a, b] = connection_points(c, box);
  return std::atan2(-(b.y - a.y), b.x - a.x);
}

TEST(AdjacentClasses, AreNearestByAngle) {
  for (EdgeClass c : kAllEdgeClasses) {
    const bool bi = is_bidirectional(c);
    const double period = bi ? std::numbers::pi : 2 * std::numbers::pi;
    std::vector<std::pair<double, EdgeClass>> gaps;
    for (EdgeClass o : kAllEdgeClasses) {
      if (o == c || is_bidirectional(o) != bi) continue;
      double g = std::fmod(std::abs(class_angle(o) - class_angle(c)), period);
      g = std::min(g, period - g);
      gaps.push_back({g, o});
    }
    std::sort(gaps.begin(), gaps.end());
    const auto adj = adjacent_classes(c);
    const std::set<EdgeClass> got{adj[0], adj[1]};
    EXPECT_EQ(got, (std::set<EdgeClass>{gaps[0].second, gaps[1].second})) << edge_class_name(c);
    EXPECT_LT(gaps[1].first, gaps[2].first - 1e-9);
  }
}

TEST(PerturbDetections, DeterministicUnderSeed) {
  const AnnotationSet a = sample_annotations(6);
  NoiseParams p;
  p.p_drop = 0.2;
  p.p_misclass = 0.3;
  p.jitter_sigma = 3;
  p.p_spurious = 2;
  p.confidence_range = {0.3, 0.9};
  p.text_edit_rate = 1;
  p.seed = 99;
  EXPECT_EQ(perturb_detections(oracle_detections(a), p, 800, 600), perturb_detections(oracle_detections(a), p, 800, 600));
  EXPECT_EQ(perturb_texts(oracle_texts(a), p, 800, 600), perturb_texts(oracle_texts(a), p, 800, 600));
  NoiseParams q = p;
  q.seed = 100;
  EXPECT_NE(perturb_detections(oracle_detections(a), p, 800, 600), perturb_detections(oracle_detections(a), q, 800, 600));
}

TEST(PerturbDetections, BoxesStayValidAndInsideImage) {
  NoiseParams p;
  p.jitter_sigma = 25;
  p.p_spurious = 3;
  p.spurious_edge_fraction = 0.5;
  p.confidence_range = {0.2, 0.8};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SceneSpec s = sample_scene(GenConfig{}, seed);
    const AnnotationSet a = emit_ground_truth(s).annotations;
    p.seed = seed;
    for (const auto& d : perturb_detections(oracle_detections(a), p, s.width, s.height)) {
      EXPECT_LE(d.box.x_min, d.box.x_max);
      EXPECT_LE(d.box.y_min, d.box.y_max);
      EXPECT_GE(d.box.x_min, 0);
      EXPECT_GE(d.box.y_min, 0);
      EXPECT_LE(d.box.x_max, s.width);
      EXPECT_LE(d.box.y_max, s.height);
      EXPECT_GE(d.confidence, 0.2);
      EXPECT_LE(d.confidence, 0.8);
    }
    for (const auto& t : perturb_texts(oracle_texts(a), p, s.width, s.height)) {
      EXPECT_LE(t.box.x_min, t.box.x_max);
      EXPECT_LE(t.box.y_min, t.box.y_max);
    }
  }
}

TEST(PerturbDetections, SpuriousCountHasPoissonMean) {
  NoiseParams p;
  p.p_spurious = 1.5;
  double total = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    p.seed = static_cast<std::uint64_t>(i);
    const auto out = perturb_detections({}, p, 400, 300);
    for (const auto& d : out) EXPECT_EQ(d.cls, ObjectClass::node());
    total += static_cast<double>(out.size());
  }
  // Standard error is sqrt(1.5 / 4000) ~ 0.02.
  EXPECT_NEAR(total / n, 1.5, 0.08);
}

TEST(PerturbDetections, DropRateMatchesProbability) {
  const DetectionSet d(50, Detection{ObjectClass::node(), {0, 0, 5, 5}, 1.0});
  NoiseParams p;
  p.p_drop = 0.3;
  double kept = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    p.seed = seed;
    kept += static_cast<double>(perturb_detections(d, p, 10, 10).size());
  }
  EXPECT_NEAR(kept / (400 * 50), 0.7, 0.01);
}

TEST(PerturbTexts, ZeroEditRateLeavesStrings) {
  const AnnotationSet a = sample_annotations(8);
  NoiseParams p;
  p.jitter_sigma = 2;
  p.seed = 3;
  const auto out = perturb_texts(oracle_texts(a), p, 2000, 2000);
  ASSERT_EQ(out.size(), a.texts.size());
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i].content, a.texts[i].content);
}

TEST(PerturbTexts, FullEditRateAltersWeightWord) {
  NoiseParams p;
  p.text_edit_rate = 10;
  int changed = 0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    p.seed = static_cast<std::uint64_t>(i);
    const auto out = perturb_texts({{"weight", {0, 0, 10, 10}, 1.0}}, p, 100, 100);
    changed += levenshtein("weight", out[0].content) >= 1;
  }
  EXPECT_GE(static_cast<double>(changed) / n, 0.99);
}

TEST(PerturbString, EditsAreBoundedByDistance) {
  // Each edit changes the Levenshtein distance by at most one, so the mean
  // distance cannot exceed the mean edit count (rate * length / 10).
  Rng rng(12);
  double total = 0;
  const int n = 5000;
  const std::string s = "abcdefghijklmnopqrst";
  for (int i = 0; i < n; ++i) total += static_cast<double>(levenshtein(s, perturb_string(s, 1.0, rng)));
  EXPECT_LE(total / n, 2.0 + 0.1);
  EXPECT_GE(total / n, 1.6);
}

TEST(PerturbString, EmptyStringUnchanged) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(perturb_string("", 10, rng), "");
}

TEST(NoiseParams, RejectsOutOfRange) {
  NoiseParams p;
  p.p_drop = 1.2;
  EXPECT_THROW(p.validate(), Error);
  p = NoiseParams{};
  p.jitter_sigma = -1;
  EXPECT_THROW(p.validate(), Error);
  p = NoiseParams{};
  p.confidence_range = {0.8, 0.2};
  EXPECT_THROW(p.validate(), Error);
}

}  // namespace
}  // namespace svc
