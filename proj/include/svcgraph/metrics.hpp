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

// Evaluation: IoU-based structure matching and the isomorphic error,
// COCO-style mAP@[.5,.95], Levenshtein distance and the text recognition
// error, plus the ambiguity filter for generated scenes.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svcgraph/core.hpp"
#include "svcgraph/generator.hpp"
#include "svcgraph/reconstructor.hpp"

namespace svc {

// ---------------------------------------------------------------------------
// Structure matching

enum class MatchMode { kDirected, kUndirected };

struct Matching {
  std::vector<std::pair<std::string, std::string>> node_pairs;  // (pred, gt)
  std::vector<std::pair<std::string, std::string>> edge_pairs;
  std::vector<std::string> unmatched_pred_nodes;
  std::vector<std::string> unmatched_gt_nodes;
  std::vector<std::string> unmatched_pred_edges;
  std::vector<std::string> unmatched_gt_edges;
};

namespace detail {

struct Candidate {
  double iou;
  std::size_t pred;
  std::size_t gt;
};

// Consumes candidates by descending IoU (ties by pred, then gt index).
inline void greedy_consume(std::vector<Candidate> cands, std::vector<int>& pred_to_gt,
                           std::vector<int>& gt_to_pred) {
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.gt < b.gt;
  });
  for (const auto& c : cands) {
    if (pred_to_gt[c.pred] >= 0 || gt_to_pred[c.gt] >= 0) continue;
    pred_to_gt[c.pred] = static_cast<int>(c.gt);
    gt_to_pred[c.gt] = static_cast<int>(c.pred);
  }
}

inline std::map<std::string, std::size_t> index_of(const std::vector<GraphNode>& nodes) {
  std::map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < nodes.size(); ++i) m[nodes[i].id] = i;
  return m;
}

}  // namespace detail

/// Whether predicted edge `p` may be paired with ground-truth edge `g` given
/// the node correspondence `node_pred_to_gt`.
inline bool endpoints_correspond(const GraphEdge& p, const GraphEdge& g,
                                 const std::map<std::string, std::string>& node_pred_to_gt, MatchMode mode) {
  const auto s = node_pred_to_gt.find(p.source);
  const auto t = node_pred_to_gt.find(p.target);
  if (s == node_pred_to_gt.end() || t == node_pred_to_gt.end()) return false;
  const bool same = s->second == g.source && t->second == g.target;
  const bool swapped = s->second == g.target && t->second == g.source;
  if (mode == MatchMode::kUndirected) return same || swapped;
  if (p.bidirectional != g.bidirectional) return false;
  return p.bidirectional ? (same || swapped) : same;
}

/// Greedy one-to-one matching of nodes with nodes and edges with edges by
/// descending IoU. Edges additionally need corresponding endpoints. In
/// undirected mode the directed matching is computed first and then
/// extended over the remaining edges, so it is always a superset.
inline Matching match_structures(const BoxedGraph& pred, const BoxedGraph& gt, double iou_threshold = 0.5,
                                 MatchMode mode = MatchMode::kDirected) {
  Matching m;
  const auto& pn = pred.doc.nodes;
  const auto& gn = gt.doc.nodes;
  std::vector<int> np(pn.size(), -1), ng(gn.size(), -1);
  {
    std::vector<detail::Candidate> cands;
    for (std::size_t i = 0; i < pn.size(); ++i) {
      for (std::size_t j = 0; j < gn.size(); ++j) {
        const double v = iou(pred.node_boxes[i], gt.node_boxes[j]);
        if (v >= iou_threshold) cands.push_back({v, i, j});
      }
    }
    detail::greedy_consume(std::move(cands), np, ng);
  }
  std::map<std::string, std::string> node_map;
  for (std::size_t i = 0; i < pn.size(); ++i) {
    if (np[i] >= 0) {
      node_map[pn[i].id] = gn[static_cast<std::size_t>(np[i])].id;
      m.node_pairs.emplace_back(pn[i].id, gn[static_cast<std::size_t>(np[i])].id);
    } else {
      m.unmatched_pred_nodes.push_back(pn[i].id);
    }
  }
  for (std::size_t j = 0; j < gn.size(); ++j) {
    if (ng[j] < 0) m.unmatched_gt_nodes.push_back(gn[j].id);
  }

  const auto& pe = pred.doc.edges;
  const auto& ge = gt.doc.edges;
  std::vector<int> ep(pe.size(), -1), eg(ge.size(), -1);
  const auto edge_pass = [&](MatchMode pass_mode) {
    std::vector<detail::Candidate> cands;
    for (std::size_t i = 0; i < pe.size(); ++i) {
      if (ep[i] >= 0) continue;
      for (std::size_t j = 0; j < ge.size(); ++j) {
        if (eg[j] >= 0) continue;
        const double v = iou(pred.edge_boxes[i], gt.edge_boxes[j]);
        if (v >= iou_threshold && endpoints_correspond(pe[i], ge[j], node_map, pass_mode)) {
          cands.push_back({v, i, j});
        }
      }
    }
    detail::greedy_consume(std::move(cands), ep, eg);
  };
  edge_pass(MatchMode::kDirected);
  if (mode == MatchMode::kUndirected) edge_pass(MatchMode::kUndirected);
  for (std::size_t i = 0; i < pe.size(); ++i) {
    if (ep[i] >= 0) {
      m.edge_pairs.emplace_back(pe[i].id, ge[static_cast<std::size_t>(ep[i])].id);
    } else {
      m.unmatched_pred_edges.push_back(pe[i].id);
    }
  }
  for (std::size_t j = 0; j < ge.size(); ++j) {
    if (eg[j] < 0) m.unmatched_gt_edges.push_back(ge[j].id);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Isomorphic error

struct IsoReport {
  std::size_t iso_error = 0;
  double norm_iso_error = 0.0;
  // Absent when the ground truth has no nodes (edges) to normalize by.
  std::optional<double> node_norm_error;
  std::optional<double> edge_norm_error;
  bool directed = true;
};

/// False positives plus false negatives over nodes and edges.
inline std::size_t isomorphic_error(const Matching& m) {
  return m.unmatched_pred_nodes.size() + m.unmatched_gt_nodes.size() + m.unmatched_pred_edges.size() +
         m.unmatched_gt_edges.size();
}

/// Normalizes by the ground-truth size. Throws DegenerateGraph when the
/// ground truth is empty. The result can exceed 1.
inline IsoReport norm_isomorphic_error(const Matching& m, std::size_t gt_node_count, std::size_t gt_edge_count,
                                       bool directed = true) {
  if (gt_node_count + gt_edge_count == 0) {
    throw Error(ErrorCode::kDegenerateGraph, "ground truth has neither nodes nor edges");
  }
  IsoReport r;
  r.directed = directed;
  r.iso_error = isomorphic_error(m);
  r.norm_iso_error = static_cast<double>(r.iso_error) / static_cast<double>(gt_node_count + gt_edge_count);
  if (gt_node_count > 0) {
    r.node_norm_error = static_cast<double>(m.unmatched_pred_nodes.size() + m.unmatched_gt_nodes.size()) /
                        static_cast<double>(gt_node_count);
  }
  if (gt_edge_count > 0) {
    r.edge_norm_error = static_cast<double>(m.unmatched_pred_edges.size() + m.unmatched_gt_edges.size()) /
                        static_cast<double>(gt_edge_count);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Levenshtein and TextRecError

/// Decodes UTF-8 into code points; invalid bytes map to U+FFFD.
inline std::u32string utf8_decode(std::string_view s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    const auto b = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (b < 0x80) {
      len = 1;
      cp = b;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2;
      cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
      cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      cp = b & 0x07;
    }
    bool ok = len > 0 && i + static_cast<std::size_t>(len) <= s.size();
    for (int k = 1; ok && k < len; ++k) {
      const auto c = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
      ok = (c & 0xC0) == 0x80;
      cp = (cp << 6) | (c & 0x3F);
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(len);
  }
  return out;
}

/// Minimum number of insertions, deletions and substitutions turning `x`
/// into `y`, counted in code points.
inline std::size_t levenshtein(std::string_view x, std::string_view y) {
  const std::u32string a = utf8_decode(x);
  const std::u32string b = utf8_decode(y);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

/// Text carried by an edge: its weight with two decimals, then any label.
inline std::string edge_content(const GraphEdge& e) {
  std::string s;
  if (e.weight) s = format_weight(*e.weight);
  if (!e.label.empty()) {
    if (!s.empty()) s += ' ';
    s += e.label;
  }
  return s;
}

/// Summed edit distance over matched structures divided by the summed
/// ground-truth length. Throws DegenerateGraph when that length is 0.
inline double text_rec_error(const Matching& m, const GraphDoc& pred, const GraphDoc& gt) {
  std::map<std::string, std::string> pred_content, gt_content;
  for (const auto& n : pred.nodes) pred_content["n:" + n.id] = n.content;
  for (const auto& n : gt.nodes) gt_content["n:" + n.id] = n.content;
  for (const auto& e : pred.edges) pred_content["e:" + e.id] = edge_content(e);
  for (const auto& e : gt.edges) gt_content["e:" + e.id] = edge_content(e);
  std::size_t dist = 0, total = 0;
  const auto add = [&](const std::string& p, const std::string& g) {
    const std::string& gs = gt_content.at(g);
    dist += levenshtein(gs, pred_content.at(p));
    total += utf8_decode(gs).size();
  };
  for (const auto& [p, g] : m.node_pairs) add("n:" + p, "n:" + g);
  for (const auto& [p, g] : m.edge_pairs) add("e:" + p, "e:" + g);
  if (total == 0) {
    throw Error(ErrorCode::kDegenerateGraph, "matched structures carry no ground-truth text");
  }
  return static_cast<double>(dist) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Average precision

struct ImageDetections {
  DetectionSet detections;
  std::vector<ObjectAnnotation> ground_truth;
};

inline std::vector<double> coco_iou_thresholds() {
  std::vector<double> t;
  for (int i = 0; i < 10; ++i) t.push_back((50.0 + 5.0 * i) / 100.0);
  return t;
}

struct ApReport {
  // Indexed by ObjectClass wire index; absent for classes without ground truth.
  std::array<std::optional<double>, kObjectClassCount> ap{};
  // TP / (TP + FP) at each threshold, averaged over thresholds.
  std::array<std::optional<double>, kObjectClassCount> precision{};
  std::array<std::size_t, kObjectClassCount> gt_count{};
  std::optional<double> map;
};

namespace detail {

// 101-point interpolated AP for one class at one threshold.
inline std::pair<double, double> class_ap(const std::vector<ImageDetections>& images, int cls, double threshold) {
  struct Det {
    double conf;
    std::size_t image;
    std::size_t index;
  };
  std::vector<Det> dets;
  std::size_t n_gt = 0;
  for (std::size_t im = 0; im < images.size(); ++im) {
    for (std::size_t k = 0; k < images[im].detections.size(); ++k) {
      if (images[im].detections[k].cls.index() == cls) dets.push_back({images[im].detections[k].confidence, im, k});
    }
    for (const auto& g : images[im].ground_truth) n_gt += g.cls.index() == cls;
  }
  std::stable_sort(dets.begin(), dets.end(), [](const Det& a, const Det& b) { return a.conf > b.conf; });
  std::vector<std::vector<bool>> taken(images.size());
  for (std::size_t im = 0; im < images.size(); ++im) taken[im].assign(images[im].ground_truth.size(), false);
  std::vector<double> precision, recall;
  std::size_t tp = 0, fp = 0;
  for (const Det& d : dets) {
    const auto& im = images[d.image];
    const BBox& box = im.detections[d.index].box;
    int best = -1;
    double best_iou = -1;
    for (std::size_t g = 0; g < im.ground_truth.size(); ++g) {
      if (taken[d.image][g] || im.ground_truth[g].cls.index() != cls) continue;
      const double v = iou(box, im.ground_truth[g].box);
      if (v >= threshold && v > best_iou) {
        best_iou = v;
        best = static_cast<int>(g);
      }
    }
    if (best >= 0) {
      taken[d.image][static_cast<std::size_t>(best)] = true;
      ++tp;
    } else {
      ++fp;
    }
    precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
    recall.push_back(n_gt ? static_cast<double>(tp) / static_cast<double>(n_gt) : 0.0);
  }
  for (std::size_t i = precision.size(); i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);
  double sum = 0;
  for (int r = 0; r <= 100; ++r) {
    const double level = r / 100.0;
    const auto it = std::lower_bound(recall.begin(), recall.end(), level - 1e-12);
    if (it != recall.end()) sum += precision[static_cast<std::size_t>(it - recall.begin())];
  }
  const double literal = dets.empty() ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  return {sum / 101.0, literal};
}

}  // namespace detail

/// Per-class AP averaged over `thresholds` and the unweighted mean over
/// classes with at least one ground-truth instance.
inline ApReport average_precision(const std::vector<ImageDetections>& images,
                                  const std::vector<double>& thresholds = coco_iou_thresholds()) {
  ApReport r;
  for (const auto& im : images) {
    for (const auto& g : im.ground_truth) ++r.gt_count[static_cast<std::size_t>(g.cls.index())];
  }
  double sum = 0;
  int classes = 0;
  for (int c = 0; c < kObjectClassCount; ++c) {
    if (r.gt_count[static_cast<std::size_t>(c)] == 0) continue;
    double ap = 0, prec = 0;
    for (double t : thresholds) {
      const auto [a, p] = detail::class_ap(images, c, t);
      ap += a;
      prec += p;
    }
    ap /= static_cast<double>(thresholds.size());
    prec /= static_cast<double>(thresholds.size());
    r.ap[static_cast<std::size_t>(c)] = ap;
    r.precision[static_cast<std::size_t>(c)] = prec;
    sum += ap;
    ++classes;
  }
  if (classes > 0) r.map = sum / classes;
  return r;
}

inline std::optional<double> mean_ap(const std::vector<ImageDetections>& images,
                                     const std::vector<double>& thresholds = coco_iou_thresholds()) {
  return average_precision(images, thresholds).map;
}

// ---------------------------------------------------------------------------
// Ambiguity filter

struct AmbiguityReport {
  bool ambiguous = false;
  std::vector<std::string> reasons;
};

inline constexpr double kAmbiguousEdgeIou = 0.3;
inline constexpr double kAmbiguousCourseGap = 2.0;

/// A scene is ambiguous when two edge boxes overlap with IoU > 0.3, or when
/// a weight text is not at least 2 px closer to its own edge's courses than
/// to every other edge box it touches.
inline AmbiguityReport ambiguity(const AnnotationSet& annotations) {
  AmbiguityReport r;
  std::vector<const ObjectAnnotation*> edges;
  for (const auto& o : annotations.objects) {
    if (o.cls.is_edge()) edges.push_back(&o);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (iou(edges[i]->box, edges[j]->box) > kAmbiguousEdgeIou) {
        r.reasons.push_back("edge boxes " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
  std::size_t k = 0;
  for (const auto& t : annotations.texts) {
    if (t.purpose != TextPurpose::kEdgeText) continue;
    const std::size_t own = k++;
    if (own >= edges.size()) {
      r.reasons.push_back("edge text without an edge");
      continue;
    }
    if (!intersects(t.box, edges[own]->box)) {
      r.reasons.push_back("weight text " + std::to_string(own) + " does not touch its edge");
      continue;
    }
    const Point c = t.box.center();
    const double d_own = course_distance(edges[own]->cls.edge_class(), edges[own]->box, c);
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (j == own || !intersects(t.box, edges[j]->box)) continue;
      if (course_distance(edges[j]->cls.edge_class(), edges[j]->box, c) < d_own + kAmbiguousCourseGap) {
        r.reasons.push_back("weight text " + std::to_string(own) + " is as close to edge " + std::to_string(j));
      }
    }
  }
  r.ambiguous = !r.reasons.empty();
  return r;
}

// ---------------------------------------------------------------------------
// Aggregation

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  double best = 0.0;
  double worst = 0.0;
};

inline Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double var = 0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(var / static_cast<double>(values.size()));
  s.best = *std::min_element(values.begin(), values.end());
  s.worst = *std::max_element(values.begin(), values.end());
  return s;
}

}  // namespace svc
