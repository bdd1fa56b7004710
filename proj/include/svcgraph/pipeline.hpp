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

// File-tree stages: dataset generation, detection simulation,
// reconstruction and evaluation.
//
// A split directory holds an index.json listing its images (stem, size,
// seed) next to per-image folders. Dataset roots hold train/, val/ and
// test/ split directories plus manifest.json.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "svcgraph/detection_sim.hpp"
#include "svcgraph/generator.hpp"
#include "svcgraph/io.hpp"
#include "svcgraph/metrics.hpp"
#include "svcgraph/reconstructor.hpp"
#include "svcgraph/renderer.hpp"

namespace svc {

namespace fs = std::filesystem;
using nlohmann::json;

/// Runs fn(0) ... fn(n - 1) on up to `workers` threads. The first exception
/// thrown by any task is rethrown after all threads finish.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Splits

struct SplitCounts {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

inline constexpr std::array<const char*, 3> kSplitNames = {"train", "val", "test"};

/// Validation and test counts are floored; training takes the remainder.
inline SplitCounts split_counts(std::size_t count, const std::array<double, 3>& fractions) {
  for (double f : fractions) {
    if (!(f >= 0 && f <= 1)) throw Error(ErrorCode::kInvalidArgument, "split fractions must lie in [0, 1]");
  }
  if (std::abs(fractions[0] + fractions[1] + fractions[2] - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "split fractions must sum to 1");
  }
  SplitCounts s;
  const auto part = [&](double f) { return static_cast<std::size_t>(std::floor(static_cast<double>(count) * f + 1e-9)); };
  s.val = part(fractions[1]);
  s.test = part(fractions[2]);
  s.train = count - s.val - s.test;
  return s;
}

inline std::array<double, 3> parse_split(const std::string& text) {
  std::array<double, 3> f{};
  std::size_t pos = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t comma = text.find(',', pos);
    if ((k < 2) == (comma == std::string::npos)) {
      throw Error(ErrorCode::kInvalidArgument, "split must be three comma-separated fractions");
    }
    const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      f[k] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad split fraction '" + part + "'");
    }
    pos = comma + 1;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Index files

struct ImageRecord {
  std::string stem;
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

inline json index_json(const std::string& split, const std::vector<ImageRecord>& images) {
  json list = json::array();
  for (const auto& r : images) {
    list.push_back({{"stem", r.stem}, {"width", r.width}, {"height", r.height}, {"seed", r.seed},
                    {"warnings", r.warnings}});
  }
  return {{"split", split}, {"images", list}};
}

inline std::vector<ImageRecord> read_index(const fs::path& path) {
  const json j = io::parse_json(io::read_file(path));
  std::vector<ImageRecord> out;
  try {
    for (const auto& r : j.at("images")) {
      ImageRecord rec;
      rec.stem = r.at("stem").get<std::string>();
      rec.width = r.at("width").get<int>();
      rec.height = r.at("height").get<int>();
      rec.seed = r.value("seed", std::uint64_t{0});
      rec.warnings = r.value("warnings", std::vector<std::string>());
      if (rec.width <= 0 || rec.height <= 0 || rec.stem.empty()) throw Error(ErrorCode::kParse, "bad image record");
      out.push_back(std::move(rec));
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParse, "malformed index " + path.string() + ": " + ex.what());
  }
  return out;
}

/// Split directories under `root`: `root` itself when it has an index.json,
/// otherwise its train/val/test children that have one. Names are relative.
inline std::vector<std::string> split_dirs(const fs::path& root) {
  if (fs::exists(root / "index.json")) return {""};
  std::vector<std::string> out;
  for (const char* s : kSplitNames) {
    if (fs::exists(root / s / "index.json")) out.emplace_back(s);
  }
  if (out.empty()) throw Error(ErrorCode::kIo, "no index.json found under " + root.string());
  return out;
}

// ---------------------------------------------------------------------------
// Generation

struct DatasetOptions {
  GenConfig config;
  std::size_t count = 0;
  std::array<double, 3> split{0.7, 0.2, 0.1};
  std::uint64_t seed = 0;
  int workers = 1;
  bool write_images = true;
};

struct DatasetManifest {
  SplitCounts counts;
  std::array<std::size_t, kObjectClassCount> class_counts{};
  std::size_t text_count = 0;
  std::vector<std::string> warnings;

  json to_json() const {
    json classes = json::object();
    for (int c = 0; c < kObjectClassCount; ++c) {
      classes[std::string(ObjectClass::from_index(c).name())] = class_counts[static_cast<std::size_t>(c)];
    }
    return {{"counts", {{"train", counts.train}, {"val", counts.val}, {"test", counts.test}}},
            {"class_counts", classes},
            {"text_count", text_count},
            {"warnings", warnings}};
  }
};

inline std::string stem_for(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu", i);
  return buf;
}

/// Everything written for one generated image.
struct GeneratedImage {
  SceneSpec scene;
  GroundTruth truth;
};

inline GeneratedImage generate_image(const GenConfig& config, std::uint64_t seed) {
  GeneratedImage g;
  g.scene = sample_scene(config, seed);
  g.truth = emit_ground_truth(g.scene);
  return g;
}

/// Writes `count` images with labels, texts, graphs and box sidecars into
/// `out/{train,val,test}`. Image i gets seed derive_seed(seed, i) and goes
/// to train, val or test in index order.
inline DatasetManifest generate_dataset(const DatasetOptions& opt, const fs::path& out) {
  opt.config.validate();
  if (opt.count < 1) throw Error(ErrorCode::kInvalidArgument, "count must be at least 1");
  DatasetManifest manifest;
  manifest.counts = split_counts(opt.count, opt.split);
  const std::array<std::size_t, 3> sizes{manifest.counts.train, manifest.counts.val, manifest.counts.test};
  std::vector<ImageRecord> records(opt.count);
  std::vector<std::size_t> split_of(opt.count);
  for (std::size_t i = 0, s = 0, used = 0; i < opt.count; ++i) {
    while (used >= sizes[s]) {
      ++s;
      used = 0;
    }
    split_of[i] = s;
    ++used;
  }
  std::vector<AnnotationSet> annotations(opt.count);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw Error(ErrorCode::kIo, "cannot create " + out.string());

  parallel_for(opt.count, opt.workers, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(opt.seed, i);
    GeneratedImage g = generate_image(opt.config, seed);
    const fs::path dir = out / kSplitNames[split_of[i]];
    const std::string stem = stem_for(i);
    const int w = g.scene.width, h = g.scene.height;
    io::write_file_atomic(dir / "labels" / (stem + ".txt"), io::format_labels(g.truth.annotations.objects, w, h));
    io::write_file_atomic(dir / "texts" / (stem + ".txt"), io::format_texts(g.truth.annotations.texts, w, h));
    const BoxedGraph boxed = g.truth.boxed();
    io::write_file_atomic(dir / "graphs" / (stem + ".json"), io::dump(io::to_json(boxed.doc)));
    io::write_file_atomic(dir / "graphs" / (stem + ".boxes.json"), io::dump(io::sidecar_json(boxed)));
    std::vector<std::string> warnings = g.scene.warnings;
    if (opt.write_images) {
      const RasterImage img = render_scene(g.scene, &warnings);
      io::write_file_atomic(dir / "images" / (stem + ".png"), encode_png(img));
    }
    records[i] = {stem, w, h, seed, std::move(warnings)};
    annotations[i] = std::move(g.truth.annotations);
  });

  for (std::size_t s = 0; s < 3; ++s) {
    std::vector<ImageRecord> part;
    for (std::size_t i = 0; i < opt.count; ++i) {
      if (split_of[i] == s) part.push_back(records[i]);
    }
    if (!part.empty()) {
      io::write_file_atomic(out / kSplitNames[s] / "index.json", io::dump(index_json(kSplitNames[s], part)));
    }
  }
  for (std::size_t i = 0; i < opt.count; ++i) {
    for (const auto& o : annotations[i].objects) ++manifest.class_counts[static_cast<std::size_t>(o.cls.index())];
    manifest.text_count += annotations[i].texts.size();
    for (const auto& w : records[i].warnings) manifest.warnings.push_back(records[i].stem + ": " + w);
  }
  json m = manifest.to_json();
  m["count"] = opt.count;
  m["seed"] = opt.seed;
  m["split"] = opt.split;
  io::write_file_atomic(out / "manifest.json", io::dump(m));
  return manifest;
}

// ---------------------------------------------------------------------------
// Simulation

namespace detail {

// Dataset files that fail to parse are I/O failures of the tree, not
// configuration errors.
template <typename Fn>
auto read_dataset_file(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw Error(ErrorCode::kIo, std::string("malformed dataset: ") + e.what());
    throw;
  }
}

}  // namespace detail

/// Turns every split under `dataset` into detection and text-detection
/// files under `out`. Image noise seeds are derive_seed(noise.seed, image
/// seed), so results do not depend on the worker count.
inline std::size_t simulate_dataset(const fs::path& dataset, const NoiseParams& noise, const fs::path& out,
                                    int workers = 1) {
  noise.validate();
  std::size_t total = 0;
  for (const std::string& split : split_dirs(dataset)) {
    const fs::path src = dataset / split;
    const fs::path dst = out / split;
    const auto records = detail::read_dataset_file([&] { return read_index(src / "index.json"); });
    parallel_for(records.size(), workers, [&](std::size_t i) {
      const ImageRecord& r = records[i];
      const int w = r.width, h = r.height;
      AnnotationSet ann;
      detail::read_dataset_file([&] {
        ann.objects = io::parse_labels(io::read_file(src / "labels" / (r.stem + ".txt")), w, h);
        ann.texts = io::parse_texts(io::read_file(src / "texts" / (r.stem + ".txt")), w, h);
        return 0;
      });
      NoiseParams p = noise;
      p.seed = derive_seed(noise.seed, r.seed);
      const DetectionSet dets = perturb_detections(oracle_detections(ann), p, w, h);
      const TextDetectionSet texts = perturb_texts(oracle_texts(ann), p, w, h);
      io::write_file_atomic(dst / "detections" / (r.stem + ".txt"), io::format_detections(dets, w, h));
      io::write_file_atomic(dst / "text_detections" / (r.stem + ".txt"), io::format_text_detections(texts, w, h));
    });
    io::write_file_atomic(dst / "index.json", io::read_file(src / "index.json"));
    total += records.size();
  }
  return total;
}

// ---------------------------------------------------------------------------
// Reconstruction

/// Reconstructs a graph for every image listed in `index` from
/// `detections/<stem>.txt` and `texts/<stem>.txt`, writing
/// `out/graphs/<stem>.json` with its box sidecar and a copy of the index.
inline std::size_t reconstruct_tree(const fs::path& detections, const fs::path& texts, const fs::path& index,
                                    const ReconstructParams& params, const fs::path& out, int workers = 1) {
  params.validate();
  const auto records = detail::read_dataset_file([&] { return read_index(index); });
  parallel_for(records.size(), workers, [&](std::size_t i) {
    const ImageRecord& r = records[i];
    DetectionSet dets;
    TextDetectionSet txt;
    detail::read_dataset_file([&] {
      dets = io::parse_detections(io::read_file(detections / (r.stem + ".txt")), r.width, r.height);
      const fs::path tpath = texts / (r.stem + ".txt");
      if (fs::exists(tpath)) txt = io::parse_text_detections(io::read_file(tpath), r.width, r.height);
      return 0;
    });
    const ReconstructedGraph g = reconstruct(dets, txt, params);
    io::write_file_atomic(out / "graphs" / (r.stem + ".json"), io::dump(io::to_json(g.doc)));
    io::write_file_atomic(out / "graphs" / (r.stem + ".boxes.json"), io::dump(io::sidecar_json(g)));
  });
  io::write_file_atomic(out / "index.json", io::read_file(index));
  return records.size();
}

// ---------------------------------------------------------------------------
// Evaluation

struct EvaluateOptions {
  double iou_threshold = 0.5;
  bool directed = true;
  bool undirected = true;
  // Restrict the structural report to node (edge) errors.
  bool nodes_only = false;
  bool edges_only = false;
  int workers = 1;
};

namespace detail {

inline std::set<std::string> graph_stems(const fs::path& dir) {
  std::set<std::string> stems;
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    const std::string suffix = ".json";
    if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    if (name.find(".boxes.json") != std::string::npos) continue;
    stems.insert(name.substr(0, name.size() - suffix.size()));
  }
  return stems;
}

inline BoxedGraph load_boxed(const fs::path& dir, const std::string& stem) {
  return read_dataset_file([&] {
    return io::boxed_from_json(io::parse_json(io::read_file(dir / (stem + ".json"))),
                               io::parse_json(io::read_file(dir / (stem + ".boxes.json"))));
  });
}

inline json summary_json(const std::vector<double>& values) {
  const Summary s = summarize(values);
  if (s.count == 0) return {{"count", 0}, {"mean", nullptr}, {"std", nullptr}, {"best", nullptr}, {"worst", nullptr}};
  return {{"count", s.count}, {"mean", s.mean}, {"std", s.std}, {"best", s.best}, {"worst", s.worst}};
}

inline json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace detail

struct ImageScores {
  std::string stem;
  bool degenerate = false;
  IsoReport directed;
  IsoReport undirected;
  std::optional<double> text_rec_error;
};

inline ImageScores score_image(const std::string& stem, const BoxedGraph& pred, const BoxedGraph& gt,
                               double iou_threshold) {
  ImageScores s;
  s.stem = stem;
  const std::size_t gn = gt.doc.nodes.size(), ge = gt.doc.edges.size();
  if (gn + ge == 0) {
    s.degenerate = true;
    return s;
  }
  const Matching md = match_structures(pred, gt, iou_threshold, MatchMode::kDirected);
  const Matching mu = match_structures(pred, gt, iou_threshold, MatchMode::kUndirected);
  s.directed = norm_isomorphic_error(md, gn, ge, true);
  s.undirected = norm_isomorphic_error(mu, gn, ge, false);
  try {
    s.text_rec_error = text_rec_error(md, pred.doc, gt.doc);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateGraph) throw;
  }
  return s;
}

/// Scores every graph in `pred_dir` against the same stem in `gt_dir`.
/// Throws InputMismatch when the two directories list different stems.
inline json evaluate_graphs(const fs::path& pred_dir, const fs::path& gt_dir, const EvaluateOptions& opt) {
  if (!(opt.iou_threshold >= 0 && opt.iou_threshold <= 1)) {
    throw Error(ErrorCode::kInvalidArgument, "iou threshold must lie in [0, 1]");
  }
  const auto pred_stems = detail::graph_stems(pred_dir);
  const auto gt_stems = detail::graph_stems(gt_dir);
  if (pred_stems != gt_stems) {
    std::vector<std::string> diff;
    std::set_symmetric_difference(pred_stems.begin(), pred_stems.end(), gt_stems.begin(), gt_stems.end(),
                                  std::back_inserter(diff));
    throw Error(ErrorCode::kInputMismatch, "prediction and ground-truth stems differ (e.g. '" + diff.front() + "')");
  }
  const std::vector<std::string> stems(pred_stems.begin(), pred_stems.end());
  std::vector<ImageScores> scores(stems.size());
  parallel_for(stems.size(), opt.workers, [&](std::size_t i) {
    scores[i] = score_image(stems[i], detail::load_boxed(pred_dir, stems[i]), detail::load_boxed(gt_dir, stems[i]),
                            opt.iou_threshold);
  });

  const auto mode_json = [&](bool directed) {
    std::vector<double> norm, node, edge;
    for (const auto& s : scores) {
      if (s.degenerate) continue;
      const IsoReport& r = directed ? s.directed : s.undirected;
      norm.push_back(r.norm_iso_error);
      if (r.node_norm_error) node.push_back(*r.node_norm_error);
      if (r.edge_norm_error) edge.push_back(*r.edge_norm_error);
    }
    json j = json::object();
    if (!opt.nodes_only && !opt.edges_only) j["norm_iso_error"] = detail::summary_json(norm);
    if (!opt.edges_only) j["node_norm_error"] = detail::summary_json(node);
    if (!opt.nodes_only) j["edge_norm_error"] = detail::summary_json(edge);
    return j;
  };
  json report;
  report["images"] = stems.size();
  report["iou_threshold"] = opt.iou_threshold;
  if (opt.directed) report["directed"] = mode_json(true);
  if (opt.undirected) report["undirected"] = mode_json(false);
  std::vector<double> text;
  json degenerate = json::array(), per_image = json::array();
  for (const auto& s : scores) {
    if (s.degenerate) {
      degenerate.push_back(s.stem);
      continue;
    }
    if (s.text_rec_error) text.push_back(*s.text_rec_error);
    per_image.push_back({{"stem", s.stem},
                         {"directed_norm_iso_error", s.directed.norm_iso_error},
                         {"undirected_norm_iso_error", s.undirected.norm_iso_error},
                         {"text_rec_error", detail::opt_json(s.text_rec_error)}});
  }
  report["text_rec_error"] = detail::summary_json(text);
  report["degenerate"] = degenerate;
  report["per_image"] = per_image;
  return report;
}

/// Table-shaped detection report: per-class label counts and AP in percent
/// with one decimal, "N/A" for classes without labels.
inline json detection_report(const std::vector<ImageDetections>& images) {
  const ApReport ap = average_precision(images);
  const auto pct = [](double v) { return std::round(v * 1000.0) / 10.0; };
  json classes = json::array();
  for (int c = 0; c < kObjectClassCount; ++c) {
    const auto k = static_cast<std::size_t>(c);
    json row = {{"class", std::string(ObjectClass::from_index(c).name())}, {"labels", ap.gt_count[k]}};
    row["ap"] = ap.ap[k] ? json(pct(*ap.ap[k])) : json("N/A");
    row["precision"] = ap.precision[k] ? json(pct(*ap.precision[k])) : json("N/A");
    classes.push_back(std::move(row));
  }
  return {{"classes", classes}, {"map", ap.map ? json(pct(*ap.map)) : json("N/A")}};
}

/// Loads detections and labels for every image in `index`.
inline std::vector<ImageDetections> load_detection_pairs(const fs::path& detections, const fs::path& labels,
                                                         const fs::path& index) {
  const auto records = detail::read_dataset_file([&] { return read_index(index); });
  std::vector<ImageDetections> out;
  for (const auto& r : records) {
    ImageDetections d;
    detail::read_dataset_file([&] {
      d.detections = io::parse_detections(io::read_file(detections / (r.stem + ".txt")), r.width, r.height);
      d.ground_truth = io::parse_labels(io::read_file(labels / (r.stem + ".txt")), r.width, r.height);
      return 0;
    });
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace svc
