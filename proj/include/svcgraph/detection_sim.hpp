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

// Stand-in for the object detector and the OCR engine: oracle outputs read
// straight from the annotations, and a seeded noise model degrading them.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "svcgraph/core.hpp"
#include "svcgraph/generator.hpp"
#include "svcgraph/rng.hpp"

namespace svc {

struct NoiseParams {
  double p_drop = 0.0;
  double p_misclass = 0.0;
  double jitter_sigma = 0.0;
  // Expected number of spurious boxes per image.
  double p_spurious = 0.0;
  // Share of spurious boxes that get a random edge class instead of Node.
  double spurious_edge_fraction = 0.0;
  RealRange confidence_range{1.0, 1.0};
  // Expected character edits per 10 characters.
  double text_edit_rate = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    for (double p : {p_drop, p_misclass, spurious_edge_fraction}) {
      if (!(p >= 0 && p <= 1)) throw Error(ErrorCode::kInvalidArgument, "noise probability outside [0, 1]");
    }
    if (!(jitter_sigma >= 0) || !(p_spurious >= 0) || !(text_edit_rate >= 0)) {
      throw Error(ErrorCode::kInvalidArgument, "noise magnitudes must be non-negative");
    }
    if (!(confidence_range.min >= 0 && confidence_range.min <= confidence_range.max &&
          confidence_range.max <= 1)) {
      throw Error(ErrorCode::kInvalidArgument, "confidence_range must lie within [0, 1]");
    }
  }
};

inline DetectionSet oracle_detections(const AnnotationSet& annotations) {
  DetectionSet out;
  out.reserve(annotations.objects.size());
  for (const auto& o : annotations.objects) out.push_back({o.cls, o.box, 1.0});
  return out;
}

inline TextDetectionSet oracle_texts(const AnnotationSet& annotations) {
  TextDetectionSet out;
  out.reserve(annotations.texts.size());
  for (const auto& t : annotations.texts) out.push_back({t.content, t.box, 1.0});
  return out;
}

/// The two classes whose direction vectors are nearest by angle. Directed
/// classes sit on a ring of 45 degree steps, bidirectional ones on a ring of
/// axes.
inline std::array<EdgeClass, 2> adjacent_classes(EdgeClass c) {
  using E = EdgeClass;
  // Counter-clockwise from "pointing right".
  static constexpr std::array<E, 8> kDirected = {E::kL2R, E::kBl2Tr, E::kB2T, E::kBr2Tl,
                                                  E::kR2L, E::kTr2Bl, E::kT2B, E::kTl2Br};
  static constexpr std::array<E, 4> kAxes = {E::kBiR2L, E::kBiTr2Bl, E::kBiT2B, E::kBiTl2Br};
  if (is_bidirectional(c)) {
    const auto i = static_cast<std::size_t>(std::find(kAxes.begin(), kAxes.end(), c) - kAxes.begin());
    return {kAxes[(i + 3) % 4], kAxes[(i + 1) % 4]};
  }
  const auto i = static_cast<std::size_t>(std::find(kDirected.begin(), kDirected.end(), c) - kDirected.begin());
  return {kDirected[(i + 7) % 8], kDirected[(i + 1) % 8]};
}

namespace detail {

inline BBox jitter_box(const BBox& b, double sigma, int width, int height, Rng& rng) {
  double x0 = b.x_min + rng.normal(0, sigma);
  double y0 = b.y_min + rng.normal(0, sigma);
  double x1 = b.x_max + rng.normal(0, sigma);
  double y1 = b.y_max + rng.normal(0, sigma);
  if (x0 > x1) std::swap(x0, x1);
  if (y0 > y1) std::swap(y0, y1);
  const double w = width, h = height;
  return {std::clamp(x0, 0.0, w), std::clamp(y0, 0.0, h), std::clamp(x1, 0.0, w), std::clamp(y1, 0.0, h)};
}

inline constexpr std::string_view kEditAlphabet =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789.";

inline char random_char(Rng& rng) { return kEditAlphabet[rng.index(kEditAlphabet.size())]; }

}  // namespace detail

/// Applies the edit process: Poisson(rate * |s| / 10) edits, each a uniform
/// choice of substitution, deletion or insertion at a uniform position.
inline std::string perturb_string(std::string s, double edits_per_10, Rng& rng) {
  const int edits = rng.poisson(edits_per_10 * static_cast<double>(s.size()) / 10.0);
  for (int i = 0; i < edits; ++i) {
    const auto kind = rng.uniform_int(0, 2);
    if (kind == 2 || s.empty()) {
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(rng.index(s.size() + 1)), detail::random_char(rng));
    } else if (kind == 1) {
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(rng.index(s.size())));
    } else {
      const std::size_t pos = rng.index(s.size());
      char c = detail::random_char(rng);
      while (c == s[pos]) c = detail::random_char(rng);
      s[pos] = c;
    }
  }
  return s;
}

/// Drops, reclassifies, jitters and re-scores detections, then adds
/// Poisson(p_spurious) spurious boxes. `width`/`height` bound jittered and
/// spurious boxes.
inline DetectionSet perturb_detections(const DetectionSet& d, const NoiseParams& p, int width, int height) {
  p.validate();
  Rng rng(p.seed);
  DetectionSet out;
  for (const Detection& det : d) {
    if (rng.bernoulli(p.p_drop)) continue;
    Detection n = det;
    if (n.cls.is_edge() && rng.bernoulli(p.p_misclass)) {
      n.cls = ObjectClass::edge(adjacent_classes(n.cls.edge_class())[rng.index(2)]);
    }
    if (p.jitter_sigma > 0) n.box = detail::jitter_box(n.box, p.jitter_sigma, width, height, rng);
    n.confidence = rng.uniform(p.confidence_range.min, p.confidence_range.max);
    if (p.confidence_range.min == p.confidence_range.max) n.confidence = p.confidence_range.min;
    out.push_back(n);
  }
  const int spurious = rng.poisson(p.p_spurious);
  for (int i = 0; i < spurious; ++i) {
    const double w = rng.uniform(16.0, std::max(17.0, width / 4.0));
    const double h = rng.uniform(16.0, std::max(17.0, height / 4.0));
    const double x = rng.uniform(0.0, std::max(0.0, width - w));
    const double y = rng.uniform(0.0, std::max(0.0, height - h));
    Detection n;
    n.cls = ObjectClass::node();
    if (rng.bernoulli(p.spurious_edge_fraction)) {
      n.cls = ObjectClass::edge(kAllEdgeClasses[rng.index(kAllEdgeClasses.size())]);
    }
    n.box = BBox{x, y, std::min<double>(x + w, width), std::min<double>(y + h, height)};
    n.confidence = rng.uniform(p.confidence_range.min, p.confidence_range.max);
    out.push_back(n);
  }
  return out;
}

/// Text counterpart of perturb_detections: drop, jitter, re-score and edit
/// the strings.
inline TextDetectionSet perturb_texts(const TextDetectionSet& t, const NoiseParams& p, int width, int height) {
  p.validate();
  // Separate stream so text noise does not shift structure noise.
  Rng rng(splitmix64(p.seed ^ 0x7465787473ull));
  TextDetectionSet out;
  for (const TextDetection& td : t) {
    if (rng.bernoulli(p.p_drop)) continue;
    TextDetection n = td;
    if (p.jitter_sigma > 0) n.box = detail::jitter_box(n.box, p.jitter_sigma, width, height, rng);
    n.confidence = rng.uniform(p.confidence_range.min, p.confidence_range.max);
    if (p.confidence_range.min == p.confidence_range.max) n.confidence = p.confidence_range.min;
    if (p.text_edit_rate > 0) n.content = perturb_string(std::move(n.content), p.text_edit_rate, rng);
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace svc
