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

// Domain types and geometric primitives shared by every stage of the
// pipeline: boxes, edge direction classes, connection points and the graph
// document.
//
// Coordinates are pixels with the origin at the top-left corner and y
// growing downward.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace svc {

enum class ErrorCode {
  kInvalidArgument,
  kPlacementExhausted,
  kIo,
  kParse,
  kDegenerateGraph,
  kInputMismatch,
  kNoNodesAvailable,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct BBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  Point center() const { return {(x_min + x_max) / 2, (y_min + y_max) / 2}; }
  bool valid() const {
    return std::isfinite(x_min) && std::isfinite(y_min) &&
           std::isfinite(x_max) && std::isfinite(y_max) && x_min <= x_max &&
           y_min <= y_max;
  }
  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  BBox expanded(double margin) const {
    return {x_min - margin, y_min - margin, x_max + margin, y_max + margin};
  }
  BBox translated(double dx, double dy) const {
    return {x_min + dx, y_min + dy, x_max + dx, y_max + dy};
  }

  friend bool operator==(const BBox&, const BBox&) = default;
};

inline BBox bbox_of(std::span<const Point> points) {
  if (points.empty()) return {};
  BBox b{points[0].x, points[0].y, points[0].x, points[0].y};
  for (const Point& p : points.subspan(1)) {
    b.x_min = std::min(b.x_min, p.x);
    b.y_min = std::min(b.y_min, p.y);
    b.x_max = std::max(b.x_max, p.x);
    b.y_max = std::max(b.y_max, p.y);
  }
  return b;
}

inline BBox box_union(const BBox& a, const BBox& b) {
  return {std::min(a.x_min, b.x_min), std::min(a.y_min, b.y_min),
          std::max(a.x_max, b.x_max), std::max(a.y_max, b.y_max)};
}

// Area of the overlap of two boxes, 0 when disjoint.
inline double intersection_area(const BBox& a, const BBox& b) {
  const double w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (w <= 0 || h <= 0) return 0.0;
  return w * h;
}

inline bool intersects(const BBox& a, const BBox& b) {
  return std::min(a.x_max, b.x_max) > std::max(a.x_min, b.x_min) &&
         std::min(a.y_max, b.y_max) > std::max(a.y_min, b.y_min);
}

/// Intersection over union. Returns 0 when the union has no area.
inline double iou(const BBox& a, const BBox& b) {
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return inter / uni;
}

/// Fraction of `inner`'s area that lies inside `outer`. A zero-area inner box
/// counts as fully contained when its center lies in `outer`.
inline double containment_ratio(const BBox& inner, const BBox& outer) {
  const double area = inner.area();
  if (area <= 0) return outer.contains(inner.center()) ? 1.0 : 0.0;
  return intersection_area(inner, outer) / area;
}

/// Euclidean distance from `p` to the closest point of `box`; 0 inside.
inline double point_box_distance(Point p, const BBox& box) {
  const double dx = std::max({box.x_min - p.x, 0.0, p.x - box.x_max});
  const double dy = std::max({box.y_min - p.y, 0.0, p.y - box.y_max});
  return std::hypot(dx, dy);
}

/// Distance from `p` to the outline of `box` (positive inside as well).
inline double point_box_outline_distance(Point p, const BBox& box) {
  if (!box.contains(p)) return point_box_distance(p, box);
  return std::min({p.x - box.x_min, box.x_max - p.x, p.y - box.y_min,
                   box.y_max - p.y});
}

/// Distance used to attach an edge endpoint to a node box. Groupings are
/// frames, so inside a grouping the distance is taken to its outline; any
/// other box counts as distance 0 from the points it contains.
inline double attach_distance(Point p, const BBox& box, bool grouping) {
  return grouping ? point_box_outline_distance(p, box) : point_box_distance(p, box);
}

inline double point_segment_distance(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return distance(p, {a.x + t * dx, a.y + t * dy});
}

inline double point_polyline_distance(Point p, std::span<const Point> line) {
  if (line.empty()) return INFINITY;
  if (line.size() == 1) return distance(p, line[0]);
  double best = INFINITY;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    best = std::min(best, point_segment_distance(p, line[i], line[i + 1]));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Edge direction classes

enum class EdgeClass : std::uint8_t {
  kTl2Br,
  kBr2Tl,
  kTr2Bl,
  kBl2Tr,
  kR2L,
  kL2R,
  kT2B,
  kB2T,
  kBiTl2Br,
  kBiTr2Bl,
  kBiR2L,
  kBiT2B,
};

inline constexpr int kEdgeClassCount = 12;

inline constexpr std::array<EdgeClass, kEdgeClassCount> kAllEdgeClasses = {
    EdgeClass::kTl2Br, EdgeClass::kBr2Tl,   EdgeClass::kTr2Bl,
    EdgeClass::kBl2Tr, EdgeClass::kR2L,     EdgeClass::kL2R,
    EdgeClass::kT2B,   EdgeClass::kB2T,     EdgeClass::kBiTl2Br,
    EdgeClass::kBiTr2Bl, EdgeClass::kBiR2L, EdgeClass::kBiT2B,
};

inline constexpr std::array<std::string_view, kEdgeClassCount> kEdgeClassNames = {
    "tl2br", "br2tl", "tr2bl", "bl2tr", "r2l", "l2r",
    "t2b",   "b2t",   "bi_tl2br", "bi_tr2bl", "bi_r2l", "bi_t2b",
};

inline std::string_view edge_class_name(EdgeClass c) {
  return kEdgeClassNames[static_cast<int>(c)];
}

inline bool is_bidirectional(EdgeClass c) {
  return static_cast<int>(c) >= static_cast<int>(EdgeClass::kBiTl2Br);
}

inline bool is_diagonal(EdgeClass c) {
  switch (c) {
    case EdgeClass::kTl2Br:
    case EdgeClass::kBr2Tl:
    case EdgeClass::kTr2Bl:
    case EdgeClass::kBl2Tr:
    case EdgeClass::kBiTl2Br:
    case EdgeClass::kBiTr2Bl:
      return true;
    default:
      return false;
  }
}

/// Maps a unidirectional class to its bidirectional counterpart on the same
/// axis; bidirectional classes map to themselves.
inline EdgeClass fold_bidirectional(EdgeClass c) {
  switch (c) {
    case EdgeClass::kTl2Br:
    case EdgeClass::kBr2Tl:
      return EdgeClass::kBiTl2Br;
    case EdgeClass::kTr2Bl:
    case EdgeClass::kBl2Tr:
      return EdgeClass::kBiTr2Bl;
    case EdgeClass::kR2L:
    case EdgeClass::kL2R:
      return EdgeClass::kBiR2L;
    case EdgeClass::kT2B:
    case EdgeClass::kB2T:
      return EdgeClass::kBiT2B;
    default:
      return c;
  }
}

// Half-width of the angular window around each axis inside which an edge is
// labeled horizontal or vertical.
inline constexpr double kSnapDegrees = 2.5;

/// Direction class of the vector start->end. Near-axis vectors (closed
/// +/-2.5 degree window) keep their travel direction as l2r/r2l/t2b/b2t.
inline EdgeClass edge_class_from_endpoints(Point start, Point end,
                                           bool bidirectional) {
  const double dx = end.x - start.x;
  const double dy = end.y - start.y;
  if (dx == 0 && dy == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge_class_from_endpoints: degenerate edge (start == end)");
  }
  // Math convention: counter-clockwise with y pointing up.
  const double angle = std::atan2(-dy, dx) * 180.0 / std::numbers::pi;  // (-180, 180]
  const double tol = kSnapDegrees + 1e-9;
  EdgeClass c;
  if (std::abs(angle) <= tol) {
    c = EdgeClass::kL2R;
  } else if (std::abs(angle - 90.0) <= tol) {
    c = EdgeClass::kB2T;
  } else if (180.0 - std::abs(angle) <= tol) {
    c = EdgeClass::kR2L;
  } else if (std::abs(angle + 90.0) <= tol) {
    c = EdgeClass::kT2B;
  } else if (dx > 0) {
    c = dy > 0 ? EdgeClass::kTl2Br : EdgeClass::kBl2Tr;
  } else {
    c = dy > 0 ? EdgeClass::kTr2Bl : EdgeClass::kBr2Tl;
  }
  return bidirectional ? fold_bidirectional(c) : c;
}

/// Start and end points an edge of class `c` has inside `box`: opposing
/// corners for diagonal classes, opposing side centers otherwise.
/// Bidirectional classes come back ordered left point first (top first when
/// both share x).
inline std::pair<Point, Point> connection_points(EdgeClass c, const BBox& box) {
  const Point tl{box.x_min, box.y_min};
  const Point tr{box.x_max, box.y_min};
  const Point bl{box.x_min, box.y_max};
  const Point br{box.x_max, box.y_max};
  const Point cl{box.x_min, (box.y_min + box.y_max) / 2};
  const Point cr{box.x_max, (box.y_min + box.y_max) / 2};
  const Point ct{(box.x_min + box.x_max) / 2, box.y_min};
  const Point cb{(box.x_min + box.x_max) / 2, box.y_max};
  switch (c) {
    case EdgeClass::kTl2Br: return {tl, br};
    case EdgeClass::kBr2Tl: return {br, tl};
    case EdgeClass::kTr2Bl: return {tr, bl};
    case EdgeClass::kBl2Tr: return {bl, tr};
    case EdgeClass::kR2L: return {cr, cl};
    case EdgeClass::kL2R: return {cl, cr};
    case EdgeClass::kT2B: return {ct, cb};
    case EdgeClass::kB2T: return {cb, ct};
    case EdgeClass::kBiTl2Br: return {tl, br};
    case EdgeClass::kBiTr2Bl: return {bl, tr};
    case EdgeClass::kBiR2L: return {cl, cr};
    case EdgeClass::kBiT2B: return {ct, cb};
  }
  return {tl, br};
}

/// Every course an edge of class `c` may take inside `box`: the straight
/// segment between the connection points, then the two one-corner paths.
inline std::array<std::vector<Point>, 3> edge_courses(EdgeClass c,
                                                      const BBox& box) {
  const auto [s, e] = connection_points(c, box);
  return {{
      {s, e},
      {s, Point{s.x, e.y}, e},
      {s, Point{e.x, s.y}, e},
  }};
}

/// Distance from `p` to the nearest possible course of an edge.
inline double course_distance(EdgeClass c, const BBox& box, Point p) {
  double best = INFINITY;
  for (const auto& course : edge_courses(c, box)) {
    best = std::min(best, point_polyline_distance(p, course));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Object classes and text purposes

/// Node, or an edge with its direction class. Wire index: Node = 0, edge
/// classes 1..12 in EdgeClass order.
class ObjectClass {
 public:
  ObjectClass() = default;
  static ObjectClass node() { return ObjectClass(); }
  static ObjectClass edge(EdgeClass c) { return ObjectClass(c); }

  static ObjectClass from_index(int index) {
    if (index < 0 || index > kEdgeClassCount) {
      throw Error(ErrorCode::kParse,
                  "object class index out of range: " + std::to_string(index));
    }
    if (index == 0) return node();
    return edge(static_cast<EdgeClass>(index - 1));
  }

  int index() const { return edge_ ? static_cast<int>(*edge_) + 1 : 0; }
  bool is_node() const { return !edge_.has_value(); }
  bool is_edge() const { return edge_.has_value(); }
  EdgeClass edge_class() const { return edge_.value(); }
  std::string_view name() const {
    return edge_ ? edge_class_name(*edge_) : std::string_view("node");
  }

  friend bool operator==(const ObjectClass&, const ObjectClass&) = default;

 private:
  explicit ObjectClass(EdgeClass c) : edge_(c) {}
  std::optional<EdgeClass> edge_;
};

inline constexpr int kObjectClassCount = kEdgeClassCount + 1;

enum class TextPurpose { kNodeText, kEdgeText, kPlain };

inline std::string_view purpose_token(TextPurpose p) {
  switch (p) {
    case TextPurpose::kNodeText: return "node";
    case TextPurpose::kEdgeText: return "edge";
    case TextPurpose::kPlain: return "plain";
  }
  return "plain";
}

inline TextPurpose purpose_from_token(std::string_view token) {
  if (token == "node") return TextPurpose::kNodeText;
  if (token == "edge") return TextPurpose::kEdgeText;
  if (token == "plain") return TextPurpose::kPlain;
  throw Error(ErrorCode::kParse, "unknown text purpose: " + std::string(token));
}

// ---------------------------------------------------------------------------
// Graph document

enum class TipStyle { kFilled, kLine };

struct GraphNode {
  std::string id;
  std::string content;
  std::vector<std::string> sub_nodes;

  bool is_grouping() const { return !sub_nodes.empty(); }
  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::string id;
  std::optional<double> weight;
  std::string source;
  std::string target;
  bool bidirectional = false;
  // Unknown for reconstructed graphs.
  std::optional<TipStyle> tip;
  // Edge text that did not parse as a number.
  std::string label;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct GraphDoc {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  const GraphNode* find_node(std::string_view id) const {
    for (const auto& n : nodes) {
      if (n.id == id) return &n;
    }
    return nullptr;
  }

  friend bool operator==(const GraphDoc&, const GraphDoc&) = default;
};

/// Returns a description of every violated GraphDoc invariant; empty when the
/// document is well formed.
inline std::vector<std::string> validate(const GraphDoc& doc) {
  std::vector<std::string> problems;
  std::set<std::string> node_ids;
  for (const auto& n : doc.nodes) {
    if (!node_ids.insert(n.id).second) problems.push_back("duplicate node id " + n.id);
  }
  std::set<std::string> members;
  for (const auto& n : doc.nodes) {
    for (const auto& sub : n.sub_nodes) {
      if (!node_ids.count(sub)) problems.push_back("unknown sub node " + sub);
      if (sub == n.id) problems.push_back("node contains itself: " + n.id);
      if (!members.insert(sub).second) problems.push_back("sub node in two groupings: " + sub);
    }
  }
  for (const auto& n : doc.nodes) {
    if (n.is_grouping() && members.count(n.id)) {
      problems.push_back("nested grouping " + n.id);
    }
  }
  std::set<std::string> edge_ids;
  for (const auto& e : doc.edges) {
    if (!edge_ids.insert(e.id).second) problems.push_back("duplicate edge id " + e.id);
    const GraphNode* s = doc.find_node(e.source);
    const GraphNode* t = doc.find_node(e.target);
    if (!s) problems.push_back("edge " + e.id + " has unknown source " + e.source);
    if (!t) problems.push_back("edge " + e.id + " has unknown target " + e.target);
    if (!s || !t) continue;
    const auto has = [](const GraphNode& g, const std::string& id) {
      return std::find(g.sub_nodes.begin(), g.sub_nodes.end(), id) != g.sub_nodes.end();
    };
    if (has(*s, t->id) || has(*t, s->id)) {
      problems.push_back("edge " + e.id + " links a grouping to its own sub node");
    }
  }
  return problems;
}

// ---------------------------------------------------------------------------
// Detector / OCR outputs

struct Detection {
  ObjectClass cls;
  BBox box;
  double confidence = 1.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct TextDetection {
  std::string content;
  BBox box;
  double confidence = 1.0;

  friend bool operator==(const TextDetection&, const TextDetection&) = default;
};

using DetectionSet = std::vector<Detection>;
using TextDetectionSet = std::vector<TextDetection>;

}  // namespace svc
