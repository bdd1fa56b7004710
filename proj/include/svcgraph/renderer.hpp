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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "svcgraph/core.hpp"
#include "svcgraph/font.hpp"
#include "svcgraph/generator.hpp"
#include "svcgraph/raster.hpp"
#include "svcgraph/scene.hpp"

namespace svc {

/// Draws `text` with its top-left corner at `origin`. Characters without a
/// glyph are drawn as a hollow box and reported through `warnings`.
inline void draw_text(RasterImage& img, std::string_view text, double size, Point origin, bool aa, Rgb color = kBlack,
                      std::vector<std::string>* warnings = nullptr) {
  if (text.empty()) return;
  for (char c : text) {
    if (!font::has_glyph(c) && warnings) {
      warnings->push_back("GlyphMissing: byte " + std::to_string(static_cast<unsigned char>(c)) + " in '" +
                          std::string(text) + "'");
    }
  }
  const double scale = font::scale_for(size);
  const BBox box = font::text_box(text, size, origin);
  paint(img, box, aa, color, [&](double x, double y) {
    if (x < box.x_min || y < box.y_min || x >= box.x_max || y >= box.y_max) return false;
    const int col = static_cast<int>(std::floor((x - origin.x) / scale));
    const int row = static_cast<int>(std::floor((y - origin.y) / scale));
    const auto ch = static_cast<std::size_t>(col / glyphs::kCellWidth);
    if (ch >= text.size()) return false;
    return font::glyph_bit(text[ch], col % glyphs::kCellWidth, row);
  });
}

namespace detail {

// Draws [a, b] as dashes of 6 line widths separated by gaps of 4, carrying
// the pattern phase `offset` across segments.
inline void draw_dashed(RasterImage& img, Point a, Point b, double lw, bool aa, double& offset) {
  const double on = 6 * lw, period = 10 * lw;
  const double len = distance(a, b);
  if (len <= 0) return;
  const Point d{(b.x - a.x) / len, (b.y - a.y) / len};
  // Dash k covers [k * period, k * period + on] in pattern coordinates.
  for (double k = std::floor(offset / period); k * period < offset + len; k += 1) {
    const double from = std::max(k * period, offset) - offset;
    const double to = std::min(k * period + on, offset + len) - offset;
    if (to <= from) continue;
    draw_capsule(img, {a.x + d.x * from, a.y + d.y * from}, {a.x + d.x * to, a.y + d.y * to}, lw / 2, aa);
  }
  offset += len;
}

// Arrowhead whose apex is `apex`, pointing away from `from`.
inline void draw_tip(RasterImage& img, Point from, Point apex, double lw, TipStyle style, bool aa) {
  const double len = distance(from, apex);
  if (len <= 0) return;
  const Point d{(apex.x - from.x) / len, (apex.y - from.y) / len};
  const Point n{-d.y, d.x};
  const double tl = tip_length(lw), hw = tip_half_width(lw);
  const Point base{apex.x - d.x * tl, apex.y - d.y * tl};
  const Point left{base.x + n.x * hw, base.y + n.y * hw};
  const Point right{base.x - n.x * hw, base.y - n.y * hw};
  if (style == TipStyle::kFilled) {
    fill_triangle(img, apex, left, right, aa);
  } else {
    draw_capsule(img, apex, left, lw / 2, aa);
    draw_capsule(img, apex, right, lw / 2, aa);
  }
}

}  // namespace detail

/// Rasterizes a scene: white background, black strokes and text, optional
/// anti-aliasing. Same scene, same pixels.
inline RasterImage render_scene(const SceneSpec& scene, std::vector<std::string>* warnings = nullptr) {
  RasterImage img(scene.width, scene.height);
  const double lw = scene.line_width;
  const bool aa = scene.antialias;
  for (const auto& g : scene.groupings) draw_rect_outline(img, g.box, lw, aa);
  for (const auto& n : scene.nodes) {
    if (n.shape == NodeShape::kEllipse) {
      draw_ellipse_outline(img, n.box, lw, aa);
    } else {
      draw_rect_outline(img, n.box, lw, aa);
    }
  }
  for (const auto& e : scene.edges) {
    if (e.polyline.size() < 2) continue;
    std::vector<Point> line = e.polyline;
    const std::size_t last = line.size() - 1;
    // A filled tip covers the stroke end, so the stroke stops inside it.
    if (e.tip == TipStyle::kFilled) {
      const auto pull = [&](Point& end, Point toward) {
        const double len = distance(end, toward);
        const double k = std::min(tip_length(lw) / 2, len / 2) / std::max(len, 1e-12);
        end = {end.x + (toward.x - end.x) * k, end.y + (toward.y - end.y) * k};
      };
      pull(line[last], line[last - 1]);
      if (e.bidirectional) pull(line[0], line[1]);
    }
    double offset = 0;
    for (std::size_t i = 0; i < last; ++i) {
      if (e.striped) {
        detail::draw_dashed(img, line[i], line[i + 1], lw, aa, offset);
      } else {
        draw_capsule(img, line[i], line[i + 1], lw / 2, aa);
      }
    }
    detail::draw_tip(img, e.polyline[last - 1], e.polyline[last], lw, e.tip, aa);
    if (e.bidirectional) detail::draw_tip(img, e.polyline[1], e.polyline[0], lw, e.tip, aa);
  }
  for (const auto& e : scene.edges) {
    if (e.weight_background) fill_rect(img, e.weight_text_box.expanded(1), false, kWhite);
  }
  const double ts = scene.text_size;
  for (const auto& n : scene.nodes) {
    draw_text(img, n.content, ts, {n.text_box.x_min, n.text_box.y_min}, aa, kBlack, warnings);
  }
  for (const auto& e : scene.edges) {
    draw_text(img, format_weight(e.weight), ts, {e.weight_text_box.x_min, e.weight_text_box.y_min}, aa, kBlack,
              warnings);
  }
  for (const auto& t : scene.background_texts) {
    draw_text(img, t.content, ts, {t.box.x_min, t.box.y_min}, aa, kBlack, warnings);
  }
  return img;
}

// ---------------------------------------------------------------------------
// Debug overlays

inline Rgb class_color(ObjectClass cls) {
  static constexpr std::array<Rgb, kObjectClassCount> kPalette = {{
      {0, 114, 178},   {213, 94, 0},   {0, 158, 115},  {204, 121, 167}, {230, 159, 0},
      {86, 180, 233},  {240, 50, 50},  {120, 60, 200}, {0, 150, 150},   {160, 120, 0},
      {200, 0, 120},   {60, 160, 40},  {100, 100, 100},
  }};
  return kPalette[static_cast<std::size_t>(cls.index())];
}

inline constexpr Rgb kTextBoxColor{255, 0, 255};

namespace detail {

inline BBox clip(const BBox& b, const RasterImage& img) {
  const double w = img.width - 1, h = img.height - 1;
  return {std::clamp(b.x_min, 0.0, w), std::clamp(b.y_min, 0.0, h), std::clamp(b.x_max, 0.0, w),
          std::clamp(b.y_max, 0.0, h)};
}

inline void labelled_box(RasterImage& img, const BBox& box, Rgb color, std::string_view label) {
  const BBox b = clip(box, img);
  draw_rect_outline(img, b, 1.0, false, color);
  if (!label.empty()) {
    const double ts = 11;
    const double y = b.y_min >= ts + 1 ? b.y_min - ts - 1 : b.y_min + 2;
    draw_text(img, label, ts, {b.x_min + 2, y}, false, color);
  }
}

}  // namespace detail

/// Copy of `image` with class-colored, labelled detection boxes and magenta
/// text boxes. Boxes are clipped to the image.
inline RasterImage render_overlay(const RasterImage& image, const DetectionSet& detections,
                                  const TextDetectionSet& texts) {
  RasterImage out = image;
  for (const auto& d : detections) detail::labelled_box(out, d.box, class_color(d.cls), d.cls.name());
  for (const auto& t : texts) detail::labelled_box(out, t.box, kTextBoxColor, "");
  return out;
}

/// Copy of `image` showing a reconstructed graph: element boxes labelled by
/// id, and a line from every edge's source node to its target node.
inline RasterImage render_graph_overlay(const RasterImage& image, const BoxedGraph& graph) {
  RasterImage out = image;
  std::map<std::string, BBox> node_box;
  for (std::size_t i = 0; i < graph.doc.nodes.size() && i < graph.node_boxes.size(); ++i) {
    node_box[graph.doc.nodes[i].id] = graph.node_boxes[i];
    detail::labelled_box(out, graph.node_boxes[i], class_color(ObjectClass::node()), graph.doc.nodes[i].id);
  }
  for (std::size_t i = 0; i < graph.doc.edges.size() && i < graph.edge_boxes.size(); ++i) {
    const GraphEdge& e = graph.doc.edges[i];
    const ObjectClass cls = i < graph.edge_classes.size() ? ObjectClass::edge(graph.edge_classes[i])
                                                          : ObjectClass::edge(EdgeClass::kL2R);
    detail::labelled_box(out, graph.edge_boxes[i], class_color(cls), e.id);
    const auto s = node_box.find(e.source);
    const auto t = node_box.find(e.target);
    if (s != node_box.end() && t != node_box.end()) {
      const BBox cs = detail::clip(s->second, out), ct = detail::clip(t->second, out);
      draw_capsule(out, cs.center(), ct.center(), 0.5, false, class_color(cls));
    }
  }
  return out;
}

}  // namespace svc
