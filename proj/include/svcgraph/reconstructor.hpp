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

// Graph reconstruction from structure and text detections.
//
//   1. Groupings: a node box almost completely inside a larger node box is a
//      sub-node of the smallest such container.
//   2. Edge linking: the edge class names two connection points on the edge
//      box; each is attached to the nearest node box.
//   3. Text mapping: texts mostly inside a node become its content; the rest
//      go to the edge whose possible courses pass closest to the text
//      center, or are discarded as background.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "svcgraph/core.hpp"
#include "svcgraph/generator.hpp"

namespace svc {

struct ReconstructParams {
  double grouping_containment_min = 0.95;
  double node_text_overlap_min = 0.80;
  double edge_text_candidate_min = 0.01;
  double max_attach_distance = std::numeric_limits<double>::infinity();

  void validate() const {
    for (double r : {grouping_containment_min, node_text_overlap_min, edge_text_candidate_min}) {
      if (!(r >= 0 && r <= 1)) throw Error(ErrorCode::kInvalidArgument, "reconstruct ratios must be in [0, 1]");
    }
    if (!(max_attach_distance >= 0)) {
      throw Error(ErrorCode::kInvalidArgument, "max_attach_distance must be non-negative");
    }
  }
};

using ReconstructedGraph = BoxedGraph;

// Distances closer than this are ties, broken by input order, so results do
// not depend on rounding noise.
inline constexpr double kTieEpsilon = 1e-9;

/// Parent index per node (-1 for none). `nodes` are node-class boxes.
inline std::vector<int> detect_groupings(const std::vector<BBox>& nodes, const ReconstructParams& params,
                                         std::vector<std::string>* warnings = nullptr) {
  const std::size_t n = nodes.size();
  std::vector<int> parent(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const double area = nodes[i].area();
    int best = -1;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !(area < nodes[j].area())) continue;
      if (containment_ratio(nodes[i], nodes[j]) < params.grouping_containment_min) continue;
      if (best < 0 || nodes[j].area() < nodes[static_cast<std::size_t>(best)].area()) {
        best = static_cast<int>(j);
      }
    }
    parent[i] = best;
  }
  // One level only: a container that is itself contained loses its parent.
  std::vector<bool> has_children(n, false);
  for (int p : parent) {
    if (p >= 0) has_children[static_cast<std::size_t>(p)] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (has_children[i] && parent[i] >= 0) {
      parent[i] = -1;
      if (warnings) warnings->push_back("flattened nested grouping at node " + std::to_string(i));
    }
  }
  return parent;
}

inline std::vector<int> detect_groupings(const std::vector<Detection>& nodes, const ReconstructParams& params,
                                         std::vector<std::string>* warnings = nullptr) {
  std::vector<BBox> boxes;
  for (const auto& d : nodes) boxes.push_back(d.box);
  return detect_groupings(boxes, params, warnings);
}

struct LinkedEdge {
  // Index into the edge detections.
  std::size_t detection = 0;
  std::size_t source = 0;
  std::size_t target = 0;
  bool bidirectional = false;
};

namespace detail {

inline bool grouping_pair(const std::vector<int>& parent, std::size_t a, std::size_t b) {
  return parent[a] == static_cast<int>(b) || parent[b] == static_cast<int>(a);
}

// Nodes ordered by attachment distance to `p`, ties by index, limited to
// `max_distance`.
inline std::vector<std::pair<double, std::size_t>> ranked_nodes(const std::vector<BBox>& nodes,
                                                                const std::vector<bool>& grouping, Point p,
                                                                double max_distance) {
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double d = attach_distance(p, nodes[i], grouping[i]);
    if (d <= max_distance) ranked.emplace_back(d, i);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (std::abs(a.first - b.first) > kTieEpsilon) return a.first < b.first;
    return a.second < b.second;
  });
  return ranked;
}

}  // namespace detail

/// Attaches both connection points of every edge detection to node boxes.
/// Self-loops are dropped, as are links between a grouping and its own
/// sub-node (the farther endpoint moves to its next candidate).
inline std::vector<LinkedEdge> link_edges(const std::vector<BBox>& nodes, const std::vector<int>& parent,
                                          const std::vector<Detection>& edges, const ReconstructParams& params,
                                          std::vector<std::string>* warnings = nullptr) {
  std::vector<LinkedEdge> out;
  const auto warn = [&](const std::string& w) {
    if (warnings) warnings->push_back(w);
  };
  if (nodes.empty()) {
    if (!edges.empty()) {
      warn("NoNodesAvailable: dropped " + std::to_string(edges.size()) + " edges");
    }
    return out;
  }
  std::vector<bool> grouping(nodes.size(), false);
  for (int p : parent) {
    if (p >= 0) grouping[static_cast<std::size_t>(p)] = true;
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Detection& e = edges[k];
    if (!e.cls.is_edge()) continue;
    const EdgeClass cls = e.cls.edge_class();
    const auto [s, t] = connection_points(cls, e.box);
    const auto rs = detail::ranked_nodes(nodes, grouping, s, params.max_attach_distance);
    const auto rt = detail::ranked_nodes(nodes, grouping, t, params.max_attach_distance);
    if (rs.empty() || rt.empty()) {
      warn("edge " + std::to_string(k) + " has no node within max_attach_distance");
      continue;
    }
    std::size_t a = rs.front().second;
    std::size_t b = rt.front().second;
    if (a != b && detail::grouping_pair(parent, a, b)) {
      // Re-resolve the endpoint that is farther from its node.
      const bool move_target = rt.front().first >= rs.front().first;
      const auto& ranked = move_target ? rt : rs;
      const std::size_t fixed = move_target ? a : b;
      std::optional<std::size_t> next;
      for (const auto& [d, idx] : ranked) {
        if (idx != fixed && !detail::grouping_pair(parent, idx, fixed)) {
          next = idx;
          break;
        }
      }
      if (!next) {
        warn("edge " + std::to_string(k) + " only links a grouping to its own sub node; dropped");
        continue;
      }
      (move_target ? b : a) = *next;
    }
    if (a == b) {
      warn("edge " + std::to_string(k) + " starts and ends at the same node; dropped");
      continue;
    }
    LinkedEdge le;
    le.detection = k;
    le.bidirectional = is_bidirectional(cls);
    le.source = a;
    le.target = b;
    if (le.bidirectional && le.target < le.source) std::swap(le.source, le.target);
    out.push_back(le);
  }
  return out;
}

/// Whether `text` lexes as a number: optional sign, digits, at most one
/// decimal point, at least one digit.
inline std::optional<double> parse_weight(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  bool digit = false, dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      return std::nullopt;
    }
  }
  if (!digit) return std::nullopt;
  return std::strtod(text.c_str(), nullptr);
}

/// Assigns texts to the nodes and edges of `skeleton`, which must carry a
/// box per element and a class per edge.
inline ReconstructedGraph map_texts(ReconstructedGraph skeleton, const TextDetectionSet& texts,
                                    const ReconstructParams& params) {
  auto& doc = skeleton.doc;
  const auto& edge_classes = skeleton.edge_classes;
  std::vector<bool> used(texts.size(), false);

  // Phase 1: node contents. Sub-nodes win over groupings, then smaller boxes.
  std::vector<std::vector<std::size_t>> node_texts(doc.nodes.size());
  for (std::size_t t = 0; t < texts.size(); ++t) {
    std::optional<std::size_t> best;
    for (std::size_t n = 0; n < doc.nodes.size(); ++n) {
      if (containment_ratio(texts[t].box, skeleton.node_boxes[n]) < params.node_text_overlap_min) continue;
      if (!best) {
        best = n;
        continue;
      }
      const bool g_new = doc.nodes[n].is_grouping();
      const bool g_old = doc.nodes[*best].is_grouping();
      if (g_new != g_old) {
        if (!g_new) best = n;
      } else if (skeleton.node_boxes[n].area() < skeleton.node_boxes[*best].area()) {
        best = n;
      }
    }
    if (best) {
      node_texts[*best].push_back(t);
      used[t] = true;
    }
  }
  for (std::size_t n = 0; n < doc.nodes.size(); ++n) {
    auto& idx = node_texts[n];
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (texts[a].box.y_min != texts[b].box.y_min) return texts[a].box.y_min < texts[b].box.y_min;
      return texts[a].box.x_min < texts[b].box.x_min;
    });
    for (std::size_t t : idx) {
      if (!texts[t].content.empty()) {
        if (!doc.nodes[n].content.empty()) doc.nodes[n].content += ' ';
        doc.nodes[n].content += texts[t].content;
      }
    }
  }

  // Phase 2: edge texts by distance to the possible courses.
  for (std::size_t t = 0; t < texts.size(); ++t) {
    if (used[t]) continue;
    const Point c = texts[t].box.center();
    std::optional<std::size_t> best;
    double best_d = INFINITY;
    for (std::size_t e = 0; e < doc.edges.size(); ++e) {
      const BBox& eb = skeleton.edge_boxes[e];
      if (iou(texts[t].box, eb) < params.edge_text_candidate_min && !intersects(texts[t].box, eb)) continue;
      const double d = course_distance(edge_classes[e], eb, c);
      const bool closer = d < best_d - kTieEpsilon;
      const bool tie_smaller = std::abs(d - best_d) <= kTieEpsilon && best &&
                               eb.area() < skeleton.edge_boxes[*best].area();
      if (!best || closer || tie_smaller) {
        best = e;
        best_d = d;
      }
    }
    if (!best) continue;  // background text
    GraphEdge& edge = doc.edges[*best];
    const auto w = parse_weight(texts[t].content);
    if (w && !edge.weight) {
      edge.weight = *w;
    } else if (!texts[t].content.empty()) {
      if (!edge.label.empty()) edge.label += ' ';
      edge.label += texts[t].content;
    }
  }
  return skeleton;
}

/// Full reconstruction. Node ids are n0, n1, ... in node-detection order;
/// edge ids e0, e1, ... in order of the kept edge detections.
inline ReconstructedGraph reconstruct(const DetectionSet& detections, const TextDetectionSet& texts,
                                      const ReconstructParams& params) {
  params.validate();
  ReconstructedGraph out;
  std::vector<Detection> edge_dets;
  for (const auto& d : detections) {
    if (d.cls.is_node()) {
      out.node_boxes.push_back(d.box);
    } else {
      edge_dets.push_back(d);
    }
  }
  const std::vector<int> parent = detect_groupings(out.node_boxes, params, &out.warnings);
  for (std::size_t i = 0; i < out.node_boxes.size(); ++i) {
    out.doc.nodes.push_back({"n" + std::to_string(i), "", {}});
  }
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] >= 0) out.doc.nodes[static_cast<std::size_t>(parent[i])].sub_nodes.push_back(out.doc.nodes[i].id);
  }
  const auto linked = link_edges(out.node_boxes, parent, edge_dets, params, &out.warnings);
  for (const auto& le : linked) {
    GraphEdge e;
    e.id = "e" + std::to_string(out.doc.edges.size());
    e.source = out.doc.nodes[le.source].id;
    e.target = out.doc.nodes[le.target].id;
    e.bidirectional = le.bidirectional;
    out.doc.edges.push_back(std::move(e));
    out.edge_boxes.push_back(edge_dets[le.detection].box);
    out.edge_classes.push_back(edge_dets[le.detection].cls.edge_class());
  }
  return map_texts(std::move(out), texts, params);
}

}  // namespace svc
