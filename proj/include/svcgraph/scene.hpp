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

// Sampled layout of one synthetic image, plus the shape geometry shared by
// the generator and the renderer.

#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "svcgraph/core.hpp"

namespace svc {

enum class NodeShape { kRectangle, kEllipse };

struct SceneNode {
  std::string id;
  NodeShape shape = NodeShape::kRectangle;
  // Geometric outline; the stroke extends half a line width beyond it.
  BBox box;
  std::string content;
  BBox text_box;
};

struct SceneGrouping {
  std::string id;
  BBox box;
  std::vector<std::string> member_ids;
};

struct SceneEdge {
  std::string id;
  std::string source;
  std::string target;
  // 2 points (straight) or 3 points (one corner).
  std::vector<Point> polyline;
  EdgeClass cls = EdgeClass::kL2R;
  bool bidirectional = false;
  // Rounded to two decimals; the rendered text is exactly format_weight().
  double weight = 0.0;
  BBox weight_text_box;
  bool striped = false;
  TipStyle tip = TipStyle::kFilled;
  bool weight_background = false;
};

struct BackgroundText {
  std::string content;
  BBox box;
};

struct SceneSpec {
  int width = 0;
  int height = 0;
  double text_size = 12.0;
  double line_width = 1.0;
  bool antialias = false;
  std::vector<SceneNode> nodes;
  std::vector<SceneGrouping> groupings;
  std::vector<SceneEdge> edges;
  std::vector<BackgroundText> background_texts;
  std::vector<std::string> warnings;
};

inline std::string format_weight(double weight) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", weight);
  return buf;
}

// Arrowhead: isosceles triangle with its apex on the edge endpoint.
inline double tip_length(double line_width) { return 4.0 * line_width; }

inline double tip_half_width(double line_width) {
  return tip_length(line_width) * std::tan(25.0 * std::numbers::pi / 180.0);
}

/// Margin added around an edge polyline to form its annotated box.
inline double edge_box_margin(double line_width) {
  return line_width / 2 + tip_half_width(line_width);
}

inline BBox edge_annotation_box(std::span<const Point> polyline, double line_width) {
  return bbox_of(polyline).expanded(edge_box_margin(line_width));
}

// ---------------------------------------------------------------------------
// Ellipse distance

namespace detail {

// Distance from (y0, y1), both >= 0, to the ellipse with semi-axes e0 >= e1
// centered at the origin, and the closest point. Bisection on the root of
// the Lagrange condition (Eberly, "Distance from a Point to an Ellipse").
inline double ellipse_distance_quadrant(double e0, double e1, double y0, double y1,
                                        double& x0, double& x1) {
  if (y1 > 0) {
    if (y0 > 0) {
      const double z0 = y0 / e0;
      const double z1 = y1 / e1;
      double g = z0 * z0 + z1 * z1 - 1;
      if (g != 0) {
        const double r0 = (e0 / e1) * (e0 / e1);
        const double n0 = r0 * z0;
        double s0 = z1 - 1;
        double s1 = g < 0 ? 0 : std::hypot(n0, z1) - 1;
        double s = 0;
        for (int i = 0; i < 200; ++i) {
          s = (s0 + s1) / 2;
          if (s == s0 || s == s1) break;
          const double ratio0 = n0 / (s + r0);
          const double ratio1 = z1 / (s + 1);
          g = ratio0 * ratio0 + ratio1 * ratio1 - 1;
          if (g > 0) {
            s0 = s;
          } else if (g < 0) {
            s1 = s;
          } else {
            break;
          }
        }
        x0 = r0 * y0 / (s + r0);
        x1 = y1 / (s + 1);
        return std::hypot(x0 - y0, x1 - y1);
      }
      x0 = y0;
      x1 = y1;
      return 0.0;
    }
    x0 = 0;
    x1 = e1;
    return std::abs(y1 - e1);
  }
  const double numer0 = e0 * y0;
  const double denom0 = e0 * e0 - e1 * e1;
  if (numer0 < denom0) {
    const double xde0 = numer0 / denom0;
    x0 = e0 * xde0;
    x1 = e1 * std::sqrt(std::max(0.0, 1 - xde0 * xde0));
    return std::hypot(x0 - y0, x1);
  }
  x0 = e0;
  x1 = 0;
  return std::abs(y0 - e0);
}

}  // namespace detail

/// Closest point on the outline of the ellipse inscribed in `box`, and its
/// distance to `p`.
inline std::pair<Point, double> ellipse_nearest(const BBox& box, Point p) {
  const Point c = box.center();
  double a = box.width() / 2;
  double b = box.height() / 2;
  double dx = std::abs(p.x - c.x);
  double dy = std::abs(p.y - c.y);
  const bool swapped = b > a;
  if (swapped) {
    std::swap(a, b);
    std::swap(dx, dy);
  }
  double x0 = 0, x1 = 0;
  double d;
  if (b <= 0) {
    x0 = std::min(dx, a);
    x1 = 0;
    d = std::hypot(dx - x0, dy);
  } else {
    d = detail::ellipse_distance_quadrant(a, b, dx, dy, x0, x1);
  }
  if (swapped) std::swap(x0, x1);
  const Point q{c.x + std::copysign(x0, p.x - c.x), c.y + std::copysign(x1, p.y - c.y)};
  return {q, d};
}

inline bool inside_ellipse(const BBox& box, Point p) {
  const Point c = box.center();
  const double a = box.width() / 2;
  const double b = box.height() / 2;
  if (a <= 0 || b <= 0) return false;
  const double u = (p.x - c.x) / a;
  const double v = (p.y - c.y) / b;
  return u * u + v * v <= 1.0;
}

/// Signed distance from `p` to the outline of a node shape (negative inside).
inline double shape_signed_distance(NodeShape shape, const BBox& box, Point p) {
  if (shape == NodeShape::kEllipse) {
    const double d = ellipse_nearest(box, p).second;
    return inside_ellipse(box, p) ? -d : d;
  }
  if (box.contains(p)) return -point_box_outline_distance(p, box);
  return point_box_distance(p, box);
}

/// Outline point of a node shape nearest to an outside point `p`.
inline Point shape_nearest_point(NodeShape shape, const BBox& box, Point p) {
  if (shape == NodeShape::kEllipse) return ellipse_nearest(box, p).first;
  return {std::clamp(p.x, box.x_min, box.x_max), std::clamp(p.y, box.y_min, box.y_max)};
}

/// Minimum signed distance between a node shape and segment [a, b]. The
/// signed distance to a convex shape is convex along a line, so a ternary
/// search finds the minimum.
inline double shape_segment_distance(NodeShape shape, const BBox& box, Point a, Point b) {
  const auto at = [&](double t) {
    return shape_signed_distance(shape, box, {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    const double m1 = lo + (hi - lo) / 3;
    const double m2 = hi - (hi - lo) / 3;
    if (at(m1) < at(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min({at(0.0), at(1.0), at((lo + hi) / 2)});
}

inline double shape_polyline_distance(NodeShape shape, const BBox& box,
                                      std::span<const Point> line) {
  double best = INFINITY;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    best = std::min(best, shape_segment_distance(shape, box, line[i], line[i + 1]));
  }
  return best;
}

inline double polyline_length(std::span<const Point> line) {
  double len = 0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) len += distance(line[i], line[i + 1]);
  return len;
}

/// Point at arc-length fraction `t` in [0, 1] along the polyline.
inline Point polyline_point_at(std::span<const Point> line, double t) {
  if (line.empty()) return {};
  double remaining = polyline_length(line) * std::clamp(t, 0.0, 1.0);
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const double seg = distance(line[i], line[i + 1]);
    if (remaining <= seg && seg > 0) {
      const double f = remaining / seg;
      return {line[i].x + f * (line[i + 1].x - line[i].x),
              line[i].y + f * (line[i + 1].y - line[i].y)};
    }
    remaining -= seg;
  }
  return line.back();
}

}  // namespace svc
