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

// Random scene sampling on a cell grid and ground-truth emission.
//
// A scene is built in stages: every grid cell hosts a node, a background
// text or nothing; one block of neighbouring nodes may be framed by a
// grouping; edges are then placed between distinct top-level elements by
// rejection sampling; finally each edge gets its weight text and background
// texts that ended up under an edge are dropped.
//
// Every accepted edge is legible from its annotation alone: the connection
// points of its class resolve to its own endpoints under the attachment rule
// the reconstructor uses, and its weight text is closer to one of its
// courses than to any other edge. Scenes therefore reconstruct exactly from
// oracle detections unless two edge boxes overlap heavily.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "svcgraph/core.hpp"
#include "svcgraph/default_words.hpp"
#include "svcgraph/font.hpp"
#include "svcgraph/rng.hpp"
#include "svcgraph/scene.hpp"

namespace svc {

struct IntRange {
  int min = 0;
  int max = 0;
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct RealRange {
  double min = 0.0;
  double max = 0.0;
  friend bool operator==(const RealRange&, const RealRange&) = default;
};

// Defaults were tuned so that large samples have about 1.3 node objects
// (groupings included) per edge.
struct GenConfig {
  IntRange image_width{640, 1280};
  IntRange image_height{480, 960};
  IntRange grid_rows{2, 5};
  IntRange grid_cols{2, 5};
  double p_cell_node = 0.6;
  double p_cell_bgtext = 0.15;
  double p_cell_empty = 0.25;
  IntRange edge_count{3, 11};
  double p_bidirectional = 0.20;
  double p_grouping = 0.3;
  double p_angled = 0.5;
  double p_ellipse = 0.5;
  RealRange text_size{10.0, 16.0};
  RealRange line_width{1.0, 3.0};
  double p_striped = 0.5;
  double p_filled_tip = 0.5;
  double p_weight_background = 0.5;
  double p_antialias = 0.5;
  int placement_retries = 100;
  int weight_retries = 60;
  // Throw PlacementExhausted instead of degrading the edge count.
  bool strict_placement = false;
  // Empty means the bundled list.
  std::vector<std::string> word_list;
  std::uint64_t seed = 0;

  void validate() const {
    const auto prob = [](double p, const char* name) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be in [0, 1]");
      }
    };
    prob(p_cell_node, "p_cell_node");
    prob(p_cell_bgtext, "p_cell_bgtext");
    prob(p_cell_empty, "p_cell_empty");
    prob(p_bidirectional, "p_bidirectional");
    prob(p_grouping, "p_grouping");
    prob(p_angled, "p_angled");
    prob(p_ellipse, "p_ellipse");
    prob(p_striped, "p_striped");
    prob(p_filled_tip, "p_filled_tip");
    prob(p_weight_background, "p_weight_background");
    prob(p_antialias, "p_antialias");
    if (std::abs(p_cell_node + p_cell_bgtext + p_cell_empty - 1.0) > 1e-9) {
      throw Error(ErrorCode::kInvalidArgument, "p_cell_* must sum to 1");
    }
    const auto irange = [](IntRange r, int floor, const char* name) {
      if (r.min > r.max || r.min < floor) {
        throw Error(ErrorCode::kInvalidArgument, std::string(name) + " is not a valid range");
      }
    };
    irange(image_width, 16, "image_width_range");
    irange(image_height, 16, "image_height_range");
    irange(grid_rows, 1, "grid_rows_range");
    irange(grid_cols, 1, "grid_cols_range");
    irange(edge_count, 0, "edge_count_range");
    const auto rrange = [](RealRange r, const char* name) {
      if (!(r.min <= r.max) || r.min <= 0) {
        throw Error(ErrorCode::kInvalidArgument, std::string(name) + " is not a valid range");
      }
    };
    rrange(text_size, "text_size_range");
    rrange(line_width, "line_width_range");
    if (placement_retries < 1 || weight_retries < 1) {
      throw Error(ErrorCode::kInvalidArgument, "retry budgets must be positive");
    }
    for (const auto& w : word_list) {
      if (w.empty()) throw Error(ErrorCode::kInvalidArgument, "word_list contains an empty word");
    }
  }
};

struct ObjectAnnotation {
  ObjectClass cls;
  BBox box;
  friend bool operator==(const ObjectAnnotation&, const ObjectAnnotation&) = default;
};

struct TextAnnotation {
  TextPurpose purpose = TextPurpose::kPlain;
  BBox box;
  std::string content;
  friend bool operator==(const TextAnnotation&, const TextAnnotation&) = default;
};

// Objects are ordered nodes, groupings, edges; texts are ordered node texts,
// edge weights, background texts. The k-th edge text belongs to the k-th
// edge object.
struct AnnotationSet {
  std::vector<ObjectAnnotation> objects;
  std::vector<TextAnnotation> texts;
  friend bool operator==(const AnnotationSet&, const AnnotationSet&) = default;
};

/// A graph document whose elements carry the boxes they were detected or
/// annotated with. node_boxes[i] belongs to doc.nodes[i], likewise edges.
struct BoxedGraph {
  GraphDoc doc;
  std::vector<BBox> node_boxes;
  std::vector<BBox> edge_boxes;
  // Direction class each edge box was detected or annotated with.
  std::vector<EdgeClass> edge_classes;
  std::vector<std::string> warnings;
};

struct GroundTruth {
  AnnotationSet annotations;
  GraphDoc graph;

  BoxedGraph boxed() const {
    BoxedGraph g;
    g.doc = graph;
    for (const auto& o : annotations.objects) {
      if (o.cls.is_node()) {
        g.node_boxes.push_back(o.box);
      } else {
        g.edge_boxes.push_back(o.box);
        g.edge_classes.push_back(o.cls.edge_class());
      }
    }
    return g;
  }
};

namespace detail {

struct Attachable {
  std::string id;
  NodeShape shape;
  BBox box;      // geometric outline
  BBox ink;      // outline plus half a line width
  bool grouping;
  bool top_level;
};

inline Point unit(Point from, Point to) {
  const double d = distance(from, to);
  if (d <= 0) return {0, 0};
  return {(to.x - from.x) / d, (to.y - from.y) / d};
}

inline Point push(Point p, Point dir, double amount) {
  return {p.x + dir.x * amount, p.y + dir.y * amount};
}

// Index of the attachable nearest to `p` and the gap to the runner-up.
inline std::pair<std::size_t, double> nearest_attachable(const std::vector<Attachable>& all, Point p) {
  std::size_t best = 0;
  double d1 = INFINITY, d2 = INFINITY;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double d = attach_distance(p, all[i].ink, all[i].grouping);
    if (d < d1) {
      d2 = d1;
      d1 = d;
      best = i;
    } else if (d < d2) {
      d2 = d;
    }
  }
  return {best, d2 - d1};
}

inline std::string join_words(const std::vector<std::string>& words, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n && i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

class SceneSampler {
 public:
  SceneSampler(const GenConfig& config, std::uint64_t seed) : cfg_(config), rng_(seed) {
    if (cfg_.word_list.empty()) {
      for (auto w : kDefaultWords) words_.emplace_back(w);
    } else {
      words_ = cfg_.word_list;
    }
  }

  SceneSpec run() {
    scene_.width = static_cast<int>(rng_.uniform_int(cfg_.image_width.min, cfg_.image_width.max));
    scene_.height = static_cast<int>(rng_.uniform_int(cfg_.image_height.min, cfg_.image_height.max));
    rows_ = static_cast<int>(rng_.uniform_int(cfg_.grid_rows.min, cfg_.grid_rows.max));
    cols_ = static_cast<int>(rng_.uniform_int(cfg_.grid_cols.min, cfg_.grid_cols.max));
    scene_.text_size = rng_.uniform(cfg_.text_size.min, cfg_.text_size.max);
    scene_.line_width = rng_.uniform(cfg_.line_width.min, cfg_.line_width.max);
    scene_.antialias = rng_.bernoulli(cfg_.p_antialias);

    fill_cells();
    place_grouping();
    place_edges();
    place_weights();
    filter_background_texts();
    return std::move(scene_);
  }

 private:
  enum class Cell { kEmpty, kNode, kText };

  std::string random_word() { return words_[rng_.index(words_.size())]; }

  BBox cell_inner(int r, int c) const {
    const double cw = static_cast<double>(scene_.width) / cols_;
    const double ch = static_cast<double>(scene_.height) / rows_;
    const double mx = std::max(12.0, 0.1 * cw);
    const double my = std::max(12.0, 0.1 * ch);
    return {c * cw + mx, r * ch + my, (c + 1) * cw - mx, (r + 1) * ch - my};
  }

  void fill_cells() {
    cells_.assign(static_cast<std::size_t>(rows_ * cols_), Cell::kEmpty);
    cell_node_.assign(cells_.size(), -1);
    const double ts = scene_.text_size;
    const double lw = scene_.line_width;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        const std::size_t idx = static_cast<std::size_t>(r * cols_ + c);
        const double u = rng_.uniform();
        const BBox inner = cell_inner(r, c);
        if (u < cfg_.p_cell_node) {
          const NodeShape shape = rng_.bernoulli(cfg_.p_ellipse) ? NodeShape::kEllipse : NodeShape::kRectangle;
          std::vector<std::string> words;
          const auto n = rng_.uniform_int(1, 3);
          for (int i = 0; i < n; ++i) words.push_back(random_word());
          const double pad = std::max(4.0, 0.4 * ts) + lw;
          const double grow = shape == NodeShape::kEllipse ? std::numbers::sqrt2 : 1.0;
          std::size_t k = words.size();
          std::string content;
          double w = 0, h = 0;
          for (; k >= 1; --k) {
            content = join_words(words, k);
            w = font::text_width(content, ts) * grow + 2 * pad;
            h = ts * grow + 2 * pad;
            if (w <= inner.width() && h <= inner.height()) break;
          }
          if (k == 0) {
            scene_.warnings.push_back("cell too small for a node; left empty");
            continue;
          }
          const double x = rng_.uniform(inner.x_min, inner.x_max - w);
          const double y = rng_.uniform(inner.y_min, inner.y_max - h);
          SceneNode node;
          node.id = "n" + std::to_string(scene_.nodes.size());
          node.shape = shape;
          node.box = {x, y, x + w, y + h};
          node.content = content;
          const Point c0 = node.box.center();
          const double tw = font::text_width(content, ts);
          node.text_box = {c0.x - tw / 2, c0.y - ts / 2, c0.x + tw / 2, c0.y + ts / 2};
          cells_[idx] = Cell::kNode;
          cell_node_[idx] = static_cast<int>(scene_.nodes.size());
          scene_.nodes.push_back(std::move(node));
        } else if (u < cfg_.p_cell_node + cfg_.p_cell_bgtext) {
          std::string content = random_word();
          const double tw = font::text_width(content, ts);
          if (tw > inner.width() || ts > inner.height()) continue;
          const double x = rng_.uniform(inner.x_min, inner.x_max - tw);
          const double y = rng_.uniform(inner.y_min, inner.y_max - ts);
          cells_[idx] = Cell::kText;
          scene_.background_texts.push_back({std::move(content), {x, y, x + tw, y + ts}});
        }
      }
    }
  }

  // Frames one block of 1x2, 2x1 or 2x2 cells holding at least two nodes and
  // no background text.
  void place_grouping() {
    if (!rng_.bernoulli(cfg_.p_grouping)) return;
    struct Block { int r, c, h, w; };
    std::vector<Block> blocks;
    for (const auto& [bh, bw] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}) {
      for (int r = 0; r + bh <= rows_; ++r) {
        for (int c = 0; c + bw <= cols_; ++c) {
          int nodes = 0;
          bool text = false;
          for (int i = r; i < r + bh; ++i) {
            for (int j = c; j < c + bw; ++j) {
              const Cell cell = cells_[static_cast<std::size_t>(i * cols_ + j)];
              nodes += cell == Cell::kNode;
              text |= cell == Cell::kText;
            }
          }
          if (nodes >= 2 && !text) blocks.push_back({r, c, bh, bw});
        }
      }
    }
    // Fisher-Yates so the retry order is random too.
    for (std::size_t i = blocks.size(); i > 1; --i) std::swap(blocks[i - 1], blocks[rng_.index(i)]);
    const double lw = scene_.line_width;
    const double pad = std::max(10.0, 0.8 * scene_.text_size) + lw;
    for (const Block& b : blocks) {
      std::vector<int> members;
      for (int i = b.r; i < b.r + b.h; ++i) {
        for (int j = b.c; j < b.c + b.w; ++j) {
          const int n = cell_node_[static_cast<std::size_t>(i * cols_ + j)];
          if (n >= 0) members.push_back(n);
        }
      }
      BBox box = scene_.nodes[static_cast<std::size_t>(members[0])].box;
      for (int m : members) box = box_union(box, scene_.nodes[static_cast<std::size_t>(m)].box);
      box = box.expanded(pad);
      if (box.x_min < 4 || box.y_min < 4 || box.x_max > scene_.width - 4 || box.y_max > scene_.height - 4) {
        continue;
      }
      bool clash = false;
      for (std::size_t n = 0; n < scene_.nodes.size() && !clash; ++n) {
        if (std::find(members.begin(), members.end(), static_cast<int>(n)) != members.end()) continue;
        clash = intersects(box.expanded(lw + 4), scene_.nodes[n].box);
      }
      for (const auto& t : scene_.background_texts) clash = clash || intersects(box, t.box);
      if (clash) continue;
      SceneGrouping g;
      g.id = "n" + std::to_string(scene_.nodes.size());
      g.box = box;
      for (int m : members) g.member_ids.push_back(scene_.nodes[static_cast<std::size_t>(m)].id);
      scene_.groupings.push_back(std::move(g));
      return;
    }
  }

  std::vector<Attachable> attachables() const {
    const double half = scene_.line_width / 2;
    std::vector<std::string> members;
    for (const auto& g : scene_.groupings) {
      members.insert(members.end(), g.member_ids.begin(), g.member_ids.end());
    }
    std::vector<Attachable> all;
    for (const auto& n : scene_.nodes) {
      const bool member = std::find(members.begin(), members.end(), n.id) != members.end();
      all.push_back({n.id, n.shape, n.box, n.box.expanded(half), false, !member});
    }
    for (const auto& g : scene_.groupings) {
      all.push_back({g.id, NodeShape::kRectangle, g.box, g.box.expanded(half), true, true});
    }
    return all;
  }

  // Candidate polyline from `a` to `b`, or nothing when the geometry cannot
  // hold the requested style.
  std::optional<std::vector<Point>> route(const Attachable& a, const Attachable& b, bool angled) {
    const double lw = scene_.line_width;
    const Point ca = a.box.center();
    const Point cb = b.box.center();
    if (!angled) {
      const Point pa = shape_nearest_point(a.shape, a.box, cb);
      const Point pb = shape_nearest_point(b.shape, b.box, ca);
      return std::vector<Point>{push(pa, unit(pa, cb), lw), push(pb, unit(pb, ca), lw)};
    }
    const bool vertical_first = rng_.bernoulli(0.5);
    const Point corner = vertical_first ? Point{ca.x, cb.y} : Point{cb.x, ca.y};
    if (shape_signed_distance(a.shape, a.box, corner) <= 0 ||
        shape_signed_distance(b.shape, b.box, corner) <= 0) {
      return std::nullopt;
    }
    Point pa = shape_nearest_point(a.shape, a.box, corner);
    Point pb = shape_nearest_point(b.shape, b.box, corner);
    pa = push(pa, unit(pa, corner), lw);
    pb = push(pb, unit(pb, corner), lw);
    const Point knee = vertical_first ? Point{pa.x, pb.y} : Point{pb.x, pa.y};
    return std::vector<Point>{pa, knee, pb};
  }

  bool acceptable(const std::vector<Attachable>& all, std::size_t ia, std::size_t ib,
                  const std::vector<Point>& line, bool bidirectional) const {
    const double lw = scene_.line_width;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      if (distance(line[i], line[i + 1]) < 2 * tip_length(lw) + 4) return false;
    }
    const BBox box = edge_annotation_box(line, lw);
    if (box.x_min < 1 || box.y_min < 1 || box.x_max > scene_.width - 1 || box.y_max > scene_.height - 1) {
      return false;
    }
    // Endpoint elements may only be touched at the attachment points.
    for (std::size_t e : {ia, ib}) {
      if (shape_polyline_distance(all[e].shape, all[e].box, line) < lw * 0.5) return false;
    }
    const double clearance = lw + tip_half_width(lw) + 4;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (i == ia || i == ib) continue;
      // Members of an endpoint grouping are shielded by the frame check.
      if (shape_polyline_distance(all[i].shape, all[i].box, line) < clearance) return false;
    }
    const EdgeClass cls = edge_class_from_endpoints(line.front(), line.back(), bidirectional);
    auto [s, e] = connection_points(cls, box);
    if (bidirectional && distance(s, line.front()) > distance(e, line.front())) std::swap(s, e);
    const auto [ns, gap_s] = nearest_attachable(all, s);
    const auto [ne, gap_e] = nearest_attachable(all, e);
    return ns == ia && ne == ib && gap_s >= 2.0 && gap_e >= 2.0;
  }

  void place_edges() {
    const auto all = attachables();
    std::vector<std::size_t> top;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i].top_level) top.push_back(i);
    }
    std::vector<std::pair<std::size_t, std::size_t>> free_pairs;
    for (std::size_t i = 0; i < top.size(); ++i) {
      for (std::size_t j = i + 1; j < top.size(); ++j) free_pairs.emplace_back(top[i], top[j]);
    }
    const int wanted = static_cast<int>(rng_.uniform_int(cfg_.edge_count.min, cfg_.edge_count.max));
    for (int k = 0; k < wanted && !free_pairs.empty(); ++k) {
      bool placed = false;
      for (int attempt = 0; attempt < cfg_.placement_retries && !free_pairs.empty(); ++attempt) {
        const std::size_t pick = rng_.index(free_pairs.size());
        auto [ia, ib] = free_pairs[pick];
        if (rng_.bernoulli(0.5)) std::swap(ia, ib);
        const bool bidirectional = rng_.bernoulli(cfg_.p_bidirectional);
        const bool angled = rng_.bernoulli(cfg_.p_angled);
        const auto line = route(all[ia], all[ib], angled);
        if (!line || !acceptable(all, ia, ib, *line, bidirectional)) continue;
        SceneEdge edge;
        edge.id = "e" + std::to_string(scene_.edges.size());
        edge.source = all[ia].id;
        edge.target = all[ib].id;
        edge.polyline = *line;
        edge.bidirectional = bidirectional;
        edge.cls = edge_class_from_endpoints(line->front(), line->back(), bidirectional);
        edge.weight = std::round(rng_.uniform() * 100.0) / 100.0;
        edge.striped = rng_.bernoulli(cfg_.p_striped);
        edge.tip = rng_.bernoulli(cfg_.p_filled_tip) ? TipStyle::kFilled : TipStyle::kLine;
        edge.weight_background = rng_.bernoulli(cfg_.p_weight_background);
        scene_.edges.push_back(std::move(edge));
        free_pairs.erase(free_pairs.begin() + static_cast<std::ptrdiff_t>(pick));
        placed = true;
        break;
      }
      if (!placed) {
        const std::string msg = "PlacementExhausted: placed " + std::to_string(scene_.edges.size()) +
                                " of " + std::to_string(wanted) + " edges";
        if (cfg_.strict_placement) throw Error(ErrorCode::kPlacementExhausted, msg);
        scene_.warnings.push_back(msg);
        break;
      }
    }
  }

  // Weight texts go near the middle of their edge. A position is accepted
  // when the text stays clear of nodes and other texts, touches its own
  // edge box, and is at least 2 px closer to its own edge's courses than to
  // any other edge box it touches. Edges whose weight cannot be placed are
  // removed.
  void place_weights() {
    const double ts = scene_.text_size;
    const double lw = scene_.line_width;
    std::vector<BBox> edge_boxes;
    for (const auto& e : scene_.edges) edge_boxes.push_back(edge_annotation_box(e.polyline, lw));
    std::vector<BBox> obstacles;
    for (const auto& n : scene_.nodes) obstacles.push_back(n.box.expanded(lw / 2 + 2));
    for (const auto& g : scene_.groupings) obstacles.push_back(g.box.expanded(lw / 2 + 2));
    std::vector<bool> keep(scene_.edges.size(), false);
    std::vector<BBox> placed;
    for (std::size_t i = 0; i < scene_.edges.size(); ++i) {
      SceneEdge& e = scene_.edges[i];
      const std::string text = format_weight(e.weight);
      const double tw = font::text_width(text, ts);
      const Point mid = polyline_point_at(e.polyline, 0.5);
      for (int attempt = 0; attempt < cfg_.weight_retries; ++attempt) {
        const double r = 1.5 * ts * std::sqrt(rng_.uniform());
        const double phi = rng_.uniform(0.0, 2.0 * std::numbers::pi);
        const Point c{mid.x + r * std::cos(phi), mid.y + r * std::sin(phi)};
        const BBox box{c.x - tw / 2, c.y - ts / 2, c.x + tw / 2, c.y + ts / 2};
        if (box.x_min < 2 || box.y_min < 2 || box.x_max > scene_.width - 2 || box.y_max > scene_.height - 2) {
          continue;
        }
        if (!intersects(box, edge_boxes[i])) continue;
        bool ok = true;
        for (const auto& o : obstacles) ok = ok && !intersects(box, o);
        for (const auto& p : placed) ok = ok && !intersects(box.expanded(2), p);
        if (!ok) continue;
        const double own = course_distance(e.cls, edge_boxes[i], c);
        for (std::size_t j = 0; j < scene_.edges.size() && ok; ++j) {
          if (j == i || !intersects(box, edge_boxes[j])) continue;
          ok = course_distance(scene_.edges[j].cls, edge_boxes[j], c) >= own + 2.0;
        }
        if (!ok) continue;
        e.weight_text_box = box;
        placed.push_back(box);
        keep[i] = true;
        break;
      }
    }
    std::vector<SceneEdge> kept;
    for (std::size_t i = 0; i < scene_.edges.size(); ++i) {
      if (keep[i]) {
        kept.push_back(std::move(scene_.edges[i]));
        kept.back().id = "e" + std::to_string(kept.size() - 1);
      } else {
        scene_.warnings.push_back("dropped an edge whose weight text could not be placed");
      }
    }
    scene_.edges = std::move(kept);
  }

  // Free texts under an edge or a weight would read as edge labels.
  void filter_background_texts() {
    const double lw = scene_.line_width;
    std::vector<BackgroundText> kept;
    for (auto& t : scene_.background_texts) {
      bool clash = false;
      for (const auto& e : scene_.edges) {
        clash = clash || intersects(t.box, edge_annotation_box(e.polyline, lw)) ||
                intersects(t.box, e.weight_text_box);
      }
      for (const auto& g : scene_.groupings) clash = clash || intersects(t.box, g.box.expanded(lw));
      if (!clash) kept.push_back(std::move(t));
    }
    scene_.background_texts = std::move(kept);
  }

  const GenConfig& cfg_;
  Rng rng_;
  std::vector<std::string> words_;
  SceneSpec scene_;
  int rows_ = 1;
  int cols_ = 1;
  std::vector<Cell> cells_;
  std::vector<int> cell_node_;
};

}  // namespace detail

/// Samples one scene. Deterministic for a given (config, seed).
inline SceneSpec sample_scene(const GenConfig& config, std::uint64_t seed) {
  config.validate();
  return detail::SceneSampler(config, seed).run();
}

/// Object and text annotations plus the graph document of a scene.
inline GroundTruth emit_ground_truth(const SceneSpec& scene) {
  GroundTruth gt;
  const double half = scene.line_width / 2;
  for (const auto& n : scene.nodes) {
    gt.annotations.objects.push_back({ObjectClass::node(), n.box.expanded(half)});
    gt.graph.nodes.push_back({n.id, n.content, {}});
  }
  for (const auto& g : scene.groupings) {
    gt.annotations.objects.push_back({ObjectClass::node(), g.box.expanded(half)});
    gt.graph.nodes.push_back({g.id, "", g.member_ids});
  }
  for (const auto& e : scene.edges) {
    const EdgeClass cls = edge_class_from_endpoints(e.polyline.front(), e.polyline.back(), e.bidirectional);
    gt.annotations.objects.push_back(
        {ObjectClass::edge(cls), edge_annotation_box(e.polyline, scene.line_width)});
    GraphEdge ge;
    ge.id = e.id;
    ge.weight = e.weight;
    ge.source = e.source;
    ge.target = e.target;
    ge.bidirectional = e.bidirectional;
    ge.tip = e.tip;
    gt.graph.edges.push_back(std::move(ge));
  }
  for (const auto& n : scene.nodes) {
    gt.annotations.texts.push_back({TextPurpose::kNodeText, n.text_box, n.content});
  }
  for (const auto& e : scene.edges) {
    gt.annotations.texts.push_back({TextPurpose::kEdgeText, e.weight_text_box, format_weight(e.weight)});
  }
  for (const auto& t : scene.background_texts) {
    gt.annotations.texts.push_back({TextPurpose::kPlain, t.box, t.content});
  }
  return gt;
}

}  // namespace svc
