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

// File formats.
//
//   labels           <class> <cx> <cy> <w> <h>
//   texts            <purpose> <cx> <cy> <w> <h> <content>
//   detections       <class> <cx> <cy> <w> <h> <confidence>
//   text detections  <cx> <cy> <w> <h> <confidence> <content>
//
// Geometry is normalized by the image size and printed with six decimals.
// Content runs to the end of the line and may contain spaces. Graph
// documents and configuration files are JSON.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "svcgraph/core.hpp"
#include "svcgraph/detection_sim.hpp"
#include "svcgraph/generator.hpp"
#include "svcgraph/reconstructor.hpp"

namespace svc::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a sibling temporary file and renames it into place, so
/// readers never observe a partial file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view data) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename into " + path.string() + ": " + ec.message());
}

// ---------------------------------------------------------------------------
// Line formats

namespace detail {

inline std::string geometry(const BBox& b, int width, int height) {
  const double w = width, h = height;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f %.6f", (b.x_min + b.x_max) / 2 / w, (b.y_min + b.y_max) / 2 / h,
                b.width() / w, b.height() / h);
  return buf;
}

inline std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline BBox box_from(double cx, double cy, double w, double h, int width, int height) {
  return {(cx - w / 2) * width, (cy - h / 2) * height, (cx + w / 2) * width, (cy + h / 2) * height};
}

// Splits off `n` whitespace-separated fields; the remainder after one
// separator space is returned in `rest`.
inline std::vector<std::string> fields(std::string_view line, std::size_t n, std::string* rest) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (out.size() < n) {
    while (i < line.size() && line[i] == ' ') ++i;
    if (i >= line.size()) break;
    const std::size_t j = std::min(line.find(' ', i), line.size());
    out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  if (rest) *rest = i < line.size() ? std::string(line.substr(i + 1)) : std::string();
  return out;
}

inline double number(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": not a number: '" + s + "'");
}

inline std::vector<std::string> lines(std::string_view data) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < data.size()) {
    std::size_t j = data.find('\n', i);
    if (j == std::string_view::npos) j = data.size();
    std::string line(data.substr(i, j - i));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
    i = j + 1;
  }
  return out;
}

inline ObjectClass object_class(const std::string& s, std::size_t line_no) {
  const double v = number(s, line_no);
  if (v != static_cast<int>(v)) throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": bad class");
  return ObjectClass::from_index(static_cast<int>(v));
}

}  // namespace detail

inline std::string format_labels(const std::vector<ObjectAnnotation>& objects, int width, int height) {
  std::string out;
  for (const auto& o : objects) {
    out += std::to_string(o.cls.index()) + ' ' + detail::geometry(o.box, width, height) + '\n';
  }
  return out;
}

inline std::string format_texts(const std::vector<TextAnnotation>& texts, int width, int height) {
  std::string out;
  for (const auto& t : texts) {
    out += std::string(purpose_token(t.purpose)) + ' ' + detail::geometry(t.box, width, height) + ' ' +
           t.content + '\n';
  }
  return out;
}

inline std::string format_detections(const DetectionSet& dets, int width, int height) {
  std::string out;
  for (const auto& d : dets) {
    out += std::to_string(d.cls.index()) + ' ' + detail::geometry(d.box, width, height) + ' ' +
           detail::fixed6(d.confidence) + '\n';
  }
  return out;
}

inline std::string format_text_detections(const TextDetectionSet& texts, int width, int height) {
  std::string out;
  for (const auto& t : texts) {
    out += detail::geometry(t.box, width, height) + ' ' + detail::fixed6(t.confidence) + ' ' + t.content + '\n';
  }
  return out;
}

/// Reads a detections file. Label files (no confidence column) are accepted
/// with confidence 1.
inline DetectionSet parse_detections(std::string_view data, int width, int height) {
  DetectionSet out;
  const auto all = detail::lines(data);
  for (std::size_t n = 0; n < all.size(); ++n) {
    if (all[n].find_first_not_of(' ') == std::string::npos) continue;
    const auto f = detail::fields(all[n], 7, nullptr);
    if (f.size() != 5 && f.size() != 6) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(n + 1) + ": expected 5 or 6 fields");
    }
    Detection d;
    d.cls = detail::object_class(f[0], n + 1);
    d.box = detail::box_from(detail::number(f[1], n + 1), detail::number(f[2], n + 1), detail::number(f[3], n + 1),
                             detail::number(f[4], n + 1), width, height);
    d.confidence = f.size() == 6 ? detail::number(f[5], n + 1) : 1.0;
    if (!d.box.valid() || d.confidence < 0 || d.confidence > 1) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(n + 1) + ": invalid box or confidence");
    }
    out.push_back(d);
  }
  return out;
}

inline std::vector<ObjectAnnotation> parse_labels(std::string_view data, int width, int height) {
  std::vector<ObjectAnnotation> out;
  for (const auto& d : parse_detections(data, width, height)) out.push_back({d.cls, d.box});
  return out;
}

inline std::vector<TextAnnotation> parse_texts(std::string_view data, int width, int height) {
  std::vector<TextAnnotation> out;
  const auto all = detail::lines(data);
  for (std::size_t n = 0; n < all.size(); ++n) {
    if (all[n].empty()) continue;
    std::string rest;
    const auto f = detail::fields(all[n], 5, &rest);
    if (f.size() != 5) throw Error(ErrorCode::kParse, "line " + std::to_string(n + 1) + ": expected 5 fields");
    TextAnnotation t;
    try {
      t.purpose = purpose_from_token(f[0]);
    } catch (const Error&) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(n + 1) + ": unknown purpose '" + f[0] + "'");
    }
    t.box = detail::box_from(detail::number(f[1], n + 1), detail::number(f[2], n + 1), detail::number(f[3], n + 1),
                             detail::number(f[4], n + 1), width, height);
    t.content = rest;
    out.push_back(std::move(t));
  }
  return out;
}

inline TextDetectionSet parse_text_detections(std::string_view data, int width, int height) {
  TextDetectionSet out;
  const auto all = detail::lines(data);
  for (std::size_t n = 0; n < all.size(); ++n) {
    if (all[n].empty()) continue;
    std::string rest;
    const auto f = detail::fields(all[n], 5, &rest);
    if (f.size() != 5) throw Error(ErrorCode::kParse, "line " + std::to_string(n + 1) + ": expected 5 fields");
    TextDetection t;
    t.box = detail::box_from(detail::number(f[0], n + 1), detail::number(f[1], n + 1), detail::number(f[2], n + 1),
                             detail::number(f[3], n + 1), width, height);
    t.confidence = detail::number(f[4], n + 1);
    t.content = rest;
    out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graph documents

inline json to_json(const GraphDoc& doc) {
  json nodes = json::array();
  for (const auto& n : doc.nodes) {
    nodes.push_back({{"id", n.id}, {"content", n.content}, {"sub_nodes", n.sub_nodes}});
  }
  json edges = json::array();
  for (const auto& e : doc.edges) {
    json j = {{"id", e.id}};
    j["weight"] = e.weight ? json(*e.weight) : json(nullptr);
    j["source"] = e.source;
    j["target"] = e.target;
    j["bidirectional"] = e.bidirectional;
    if (e.tip) j["tip"] = *e.tip == TipStyle::kFilled ? "filled" : "line";
    if (!e.label.empty()) j["label"] = e.label;
    edges.push_back(std::move(j));
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

inline GraphDoc graph_from_json(const json& j) {
  try {
    GraphDoc doc;
    for (const auto& n : j.at("nodes")) {
      GraphNode node;
      node.id = n.at("id").get<std::string>();
      node.content = n.value("content", std::string());
      node.sub_nodes = n.value("sub_nodes", std::vector<std::string>());
      doc.nodes.push_back(std::move(node));
    }
    for (const auto& e : j.at("edges")) {
      GraphEdge edge;
      edge.id = e.at("id").get<std::string>();
      if (e.contains("weight") && !e["weight"].is_null()) edge.weight = e["weight"].get<double>();
      edge.source = e.at("source").get<std::string>();
      edge.target = e.at("target").get<std::string>();
      edge.bidirectional = e.value("bidirectional", false);
      if (e.contains("tip")) {
        const auto tip = e["tip"].get<std::string>();
        if (tip != "filled" && tip != "line") throw Error(ErrorCode::kParse, "unknown tip '" + tip + "'");
        edge.tip = tip == "filled" ? TipStyle::kFilled : TipStyle::kLine;
      }
      edge.label = e.value("label", std::string());
      doc.edges.push_back(std::move(edge));
    }
    return doc;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("malformed graph document: ") + ex.what());
  }
}

namespace detail {

inline json box_json(const BBox& b) { return json::array({b.x_min, b.y_min, b.x_max, b.y_max}); }

inline BBox box_from_json(const json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 4) throw Error(ErrorCode::kParse, "a box needs four numbers");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace detail

/// Per-element pixel boxes, edge classes and warnings that accompany a graph
/// document.
inline json sidecar_json(const BoxedGraph& g) {
  json nodes = json::array(), edges = json::array(), classes = json::array();
  for (const auto& b : g.node_boxes) nodes.push_back(detail::box_json(b));
  for (const auto& b : g.edge_boxes) edges.push_back(detail::box_json(b));
  for (auto c : g.edge_classes) classes.push_back(std::string(edge_class_name(c)));
  return {{"node_boxes", nodes}, {"edge_boxes", edges}, {"edge_classes", classes}, {"warnings", g.warnings}};
}

inline BoxedGraph boxed_from_json(const json& graph, const json& sidecar) {
  BoxedGraph g;
  g.doc = graph_from_json(graph);
  try {
    for (const auto& b : sidecar.at("node_boxes")) g.node_boxes.push_back(detail::box_from_json(b));
    for (const auto& b : sidecar.at("edge_boxes")) g.edge_boxes.push_back(detail::box_from_json(b));
    for (const auto& c : sidecar.value("edge_classes", json::array())) {
      const auto name = c.get<std::string>();
      bool found = false;
      for (auto ec : kAllEdgeClasses) {
        if (edge_class_name(ec) == name) {
          g.edge_classes.push_back(ec);
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::kParse, "unknown edge class '" + name + "'");
    }
    g.warnings = sidecar.value("warnings", std::vector<std::string>());
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("malformed box sidecar: ") + ex.what());
  }
  if (g.node_boxes.size() != g.doc.nodes.size() || g.edge_boxes.size() != g.doc.edges.size()) {
    throw Error(ErrorCode::kParse, "box sidecar does not match its graph document");
  }
  return g;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------
// Configuration

namespace detail {

// Reads the known keys of `j` into the fields bound by `bind`, rejecting
// unknown keys so typos surface as configuration errors.
template <typename Bind>
void read_object(const json& j, const char* what, Bind&& bind) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, std::string(what) + " must be a JSON object");
  std::vector<std::string> known;
  try {
    bind(known);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + ex.what());
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::kParse, std::string(what) + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void field(const json& j, const char* key, T& out, std::vector<std::string>& known) {
  known.emplace_back(key);
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline void field(const json& j, const char* key, IntRange& out, std::vector<std::string>& known) {
  known.emplace_back(key);
  if (!j.contains(key)) return;
  const auto v = j.at(key).get<std::vector<int>>();
  if (v.size() != 2) throw Error(ErrorCode::kParse, std::string(key) + " must be [min, max]");
  out = {v[0], v[1]};
}

inline void field(const json& j, const char* key, RealRange& out, std::vector<std::string>& known) {
  known.emplace_back(key);
  if (!j.contains(key)) return;
  const auto v = j.at(key).get<std::vector<double>>();
  if (v.size() != 2) throw Error(ErrorCode::kParse, std::string(key) + " must be [min, max]");
  out = {v[0], v[1]};
}

}  // namespace detail

inline json to_json(const GenConfig& c) {
  return {{"image_width_range", {c.image_width.min, c.image_width.max}},
          {"image_height_range", {c.image_height.min, c.image_height.max}},
          {"grid_rows_range", {c.grid_rows.min, c.grid_rows.max}},
          {"grid_cols_range", {c.grid_cols.min, c.grid_cols.max}},
          {"p_cell_node", c.p_cell_node},
          {"p_cell_bgtext", c.p_cell_bgtext},
          {"p_cell_empty", c.p_cell_empty},
          {"edge_count_range", {c.edge_count.min, c.edge_count.max}},
          {"p_bidirectional", c.p_bidirectional},
          {"p_grouping", c.p_grouping},
          {"p_angled", c.p_angled},
          {"p_ellipse", c.p_ellipse},
          {"text_size_range", {c.text_size.min, c.text_size.max}},
          {"line_width_range", {c.line_width.min, c.line_width.max}},
          {"p_striped", c.p_striped},
          {"p_filled_tip", c.p_filled_tip},
          {"p_weight_background", c.p_weight_background},
          {"p_antialias", c.p_antialias},
          {"placement_retries", c.placement_retries},
          {"weight_retries", c.weight_retries},
          {"strict_placement", c.strict_placement},
          {"word_list", c.word_list},
          {"seed", c.seed}};
}

inline GenConfig gen_config_from_json(const json& j) {
  GenConfig c;
  detail::read_object(j, "generator config", [&](std::vector<std::string>& k) {
    detail::field(j, "image_width_range", c.image_width, k);
    detail::field(j, "image_height_range", c.image_height, k);
    detail::field(j, "grid_rows_range", c.grid_rows, k);
    detail::field(j, "grid_cols_range", c.grid_cols, k);
    detail::field(j, "p_cell_node", c.p_cell_node, k);
    detail::field(j, "p_cell_bgtext", c.p_cell_bgtext, k);
    detail::field(j, "p_cell_empty", c.p_cell_empty, k);
    detail::field(j, "edge_count_range", c.edge_count, k);
    detail::field(j, "p_bidirectional", c.p_bidirectional, k);
    detail::field(j, "p_grouping", c.p_grouping, k);
    detail::field(j, "p_angled", c.p_angled, k);
    detail::field(j, "p_ellipse", c.p_ellipse, k);
    detail::field(j, "text_size_range", c.text_size, k);
    detail::field(j, "line_width_range", c.line_width, k);
    detail::field(j, "p_striped", c.p_striped, k);
    detail::field(j, "p_filled_tip", c.p_filled_tip, k);
    detail::field(j, "p_weight_background", c.p_weight_background, k);
    detail::field(j, "p_antialias", c.p_antialias, k);
    detail::field(j, "placement_retries", c.placement_retries, k);
    detail::field(j, "weight_retries", c.weight_retries, k);
    detail::field(j, "strict_placement", c.strict_placement, k);
    detail::field(j, "word_list", c.word_list, k);
    detail::field(j, "seed", c.seed, k);
  });
  return c;
}

inline json to_json(const NoiseParams& p) {
  return {{"p_drop", p.p_drop},
          {"p_misclass", p.p_misclass},
          {"jitter_sigma", p.jitter_sigma},
          {"p_spurious", p.p_spurious},
          {"spurious_edge_fraction", p.spurious_edge_fraction},
          {"confidence_range", {p.confidence_range.min, p.confidence_range.max}},
          {"text_edit_rate", p.text_edit_rate},
          {"seed", p.seed}};
}

inline NoiseParams noise_params_from_json(const json& j) {
  NoiseParams p;
  detail::read_object(j, "noise config", [&](std::vector<std::string>& k) {
    detail::field(j, "p_drop", p.p_drop, k);
    detail::field(j, "p_misclass", p.p_misclass, k);
    detail::field(j, "jitter_sigma", p.jitter_sigma, k);
    detail::field(j, "p_spurious", p.p_spurious, k);
    detail::field(j, "spurious_edge_fraction", p.spurious_edge_fraction, k);
    detail::field(j, "confidence_range", p.confidence_range, k);
    detail::field(j, "text_edit_rate", p.text_edit_rate, k);
    detail::field(j, "seed", p.seed, k);
  });
  return p;
}

inline json to_json(const ReconstructParams& p) {
  json j = {{"grouping_containment_min", p.grouping_containment_min},
            {"node_text_overlap_min", p.node_text_overlap_min},
            {"edge_text_candidate_min", p.edge_text_candidate_min}};
  // JSON has no infinity; null stands for "unbounded".
  j["max_attach_distance"] = std::isfinite(p.max_attach_distance) ? json(p.max_attach_distance) : json(nullptr);
  return j;
}

inline ReconstructParams reconstruct_params_from_json(const json& j) {
  ReconstructParams p;
  detail::read_object(j, "reconstruct params", [&](std::vector<std::string>& k) {
    detail::field(j, "grouping_containment_min", p.grouping_containment_min, k);
    detail::field(j, "node_text_overlap_min", p.node_text_overlap_min, k);
    detail::field(j, "edge_text_candidate_min", p.edge_text_candidate_min, k);
    k.emplace_back("max_attach_distance");
    if (j.contains("max_attach_distance") && !j["max_attach_distance"].is_null()) {
      p.max_attach_distance = j["max_attach_distance"].get<double>();
    }
  });
  return p;
}

}  // namespace svc::io
