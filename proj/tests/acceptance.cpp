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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails. Scratch data goes to a temporary
// directory that is removed afterwards.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include <unistd.h>

#include "optimal_matching.hpp"
#include "svcgraph/cli.hpp"
#include "svcgraph/pipeline.hpp"

namespace fs = std::filesystem;
using namespace svc;

namespace {

constexpr std::uint64_t kSeed = 20260415;
const int kWorkers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Ledger {
  std::vector<std::pair<double, double>> orderings;  // (undirected mean, directed mean) per evaluated dataset
  std::vector<std::string> names;

  void record(const std::string& name, const io::json& report) {
    names.push_back(name);
    orderings.emplace_back(report["undirected"]["norm_iso_error"]["mean"].get<double>(),
                           report["directed"]["norm_iso_error"]["mean"].get<double>());
  }
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

DatasetOptions dataset(std::size_t count, bool images = false) {
  DatasetOptions o;
  o.count = count;
  o.split = {1.0, 0.0, 0.0};
  o.seed = kSeed;
  o.workers = kWorkers;
  o.write_images = images;
  return o;
}

// Generates, simulates with `noise`, reconstructs and evaluates the train
// split under `root`. Returns the evaluation report.
io::json run_chain(const fs::path& root, std::size_t count, const NoiseParams& noise) {
  if (!fs::exists(root / "ds" / "manifest.json")) generate_dataset(dataset(count), root / "ds");
  const fs::path sim = root / ("sim_" + fmt(noise.p_drop, 2));
  simulate_dataset(root / "ds", noise, sim, kWorkers);
  const fs::path train = sim / "train";
  reconstruct_tree(train / "detections", train / "text_detections", train / "index.json", ReconstructParams{},
                   sim / "rec", kWorkers);
  EvaluateOptions eo;
  eo.workers = kWorkers;
  return evaluate_graphs(sim / "rec" / "graphs", root / "ds" / "train" / "graphs", eo);
}

// ---------------------------------------------------------------------------

Outcome round_trip(const fs::path& root, Ledger& ledger) {
  const auto start = std::chrono::steady_clock::now();
  const io::json report = run_chain(root, 500, NoiseParams{});
  ledger.record("oracle round trip", report);

  const fs::path train = root / "ds" / "train";
  std::map<std::string, bool> ambiguous;
  for (const auto& r : read_index(train / "index.json")) {
    AnnotationSet a;
    a.objects = io::parse_labels(io::read_file(train / "labels" / (r.stem + ".txt")), r.width, r.height);
    a.texts = io::parse_texts(io::read_file(train / "texts" / (r.stem + ".txt")), r.width, r.height);
    ambiguous[r.stem] = ambiguity(a).ambiguous;
  }
  std::size_t scored = 0, perfect = 0, amb = 0, amb_perfect = 0;
  std::vector<std::string> failures;
  for (const auto& img : report["per_image"]) {
    const std::string stem = img["stem"];
    const bool ok = img["directed_norm_iso_error"].get<double>() == 0.0 &&
                    (img["text_rec_error"].is_null() || img["text_rec_error"].get<double>() == 0.0);
    if (ambiguous.at(stem)) {
      ++amb;
      amb_perfect += ok;
      continue;
    }
    ++scored;
    perfect += ok;
    if (!ok && failures.size() < 5) failures.push_back(stem);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string detail = std::to_string(perfect) + "/" + std::to_string(scored) + " unambiguous images exact; ambiguous " +
                       std::to_string(amb_perfect) + "/" + std::to_string(amb) + " exact (not scored); " +
                       std::to_string(report["degenerate"].size()) + " empty scenes skipped; " + fmt(secs, 1) +
                       " s (limit 120 s)";
  for (const auto& f : failures) detail += "; failed " + f;
  return {scored > 0 && perfect == scored && secs < 120.0, detail};
}

Outcome dataset_statistics(const fs::path& root) {
  const DatasetManifest m = generate_dataset(dataset(1000), root / "stats");
  const auto count = [&](EdgeClass c) {
    return static_cast<double>(m.class_counts[static_cast<std::size_t>(ObjectClass::edge(c).index())]);
  };
  double edges = 0, bi = 0;
  for (int c = 0; c < kEdgeClassCount; ++c) {
    const auto e = static_cast<EdgeClass>(c);
    edges += count(e);
    if (c >= static_cast<int>(EdgeClass::kBiTl2Br)) bi += count(e);
  }
  const double nodes = static_cast<double>(m.class_counts[0]);
  const double bi_fraction = bi / edges;
  const double diag_ratio = (count(EdgeClass::kBl2Tr) + count(EdgeClass::kTr2Bl)) / count(EdgeClass::kBiTl2Br);
  const double node_edge = nodes / edges;

  const std::vector<EdgeClass> diagonal{EdgeClass::kTl2Br, EdgeClass::kBr2Tl, EdgeClass::kTr2Bl, EdgeClass::kBl2Tr};
  const std::vector<EdgeClass> straight{EdgeClass::kR2L, EdgeClass::kL2R, EdgeClass::kT2B, EdgeClass::kB2T};
  const std::vector<EdgeClass> bi_diagonal{EdgeClass::kBiTl2Br, EdgeClass::kBiTr2Bl};
  const std::vector<EdgeClass> bi_straight{EdgeClass::kBiR2L, EdgeClass::kBiT2B};
  const auto dominates = [&](const std::vector<EdgeClass>& a, const std::vector<EdgeClass>& b) {
    double lo = 1e300, hi = 0;
    for (auto c : a) lo = std::min(lo, count(c));
    for (auto c : b) hi = std::max(hi, count(c));
    return lo > hi;
  };
  const bool shape = dominates(diagonal, straight) && dominates(bi_diagonal, bi_straight);

  std::string classes;
  for (int c = 0; c < kEdgeClassCount; ++c) {
    const auto e = static_cast<EdgeClass>(c);
    classes += std::string(c ? " " : "") + std::string(ObjectClass::edge(e).name()) + "=" +
               std::to_string(static_cast<long>(count(e)));
  }
  const bool pass = std::abs(bi_fraction - 0.20) <= 0.02 && std::abs(diag_ratio - 4.0) <= 0.5 &&
                    std::abs(node_edge - 1.30) <= 0.13 && shape;
  return {pass, "bidirectional " + fmt(bi_fraction) + " (0.20+-0.02), (bl2tr+tr2bl)/bi_tl2br " + fmt(diag_ratio) +
                    " (4+-0.5), nodes:edges " + fmt(node_edge) + " (1.30+-0.13), diagonal classes dominate " +
                    (shape ? "yes" : "no") + " [" + classes + "]"};
}

Outcome split_arithmetic(const fs::path& root) {
  DatasetOptions o = dataset(12000);
  o.split = parse_split("0.7,0.2,0.1");
  generate_dataset(o, root / "split");
  std::vector<std::size_t> sizes;
  for (const char* s : kSplitNames) sizes.push_back(read_index(root / "split" / s / "index.json").size());
  const SplitCounts c = split_counts(12000, o.split);
  const bool pass = sizes == std::vector<std::size_t>{8400, 2400, 1200} && c.train == 8400 && c.val == 2400 &&
                    c.test == 1200;
  fs::remove_all(root / "split");
  return {pass, "written " + std::to_string(sizes[0]) + "/" + std::to_string(sizes[1]) + "/" +
                    std::to_string(sizes[2]) + " (expected 8400/2400/1200)"};
}

Matching counted(std::size_t nodes, std::size_t edges, std::size_t up_n, std::size_t ug_n, std::size_t up_e,
                 std::size_t ug_e) {
  Matching m;
  m.node_pairs.assign(nodes, {"p", "g"});
  m.edge_pairs.assign(edges, {"p", "g"});
  m.unmatched_pred_nodes.resize(up_n);
  m.unmatched_gt_nodes.resize(ug_n);
  m.unmatched_pred_edges.resize(up_e);
  m.unmatched_gt_edges.resize(ug_e);
  return m;
}

Outcome metric_examples() {
  constexpr double tol = 1e-9;
  std::vector<std::string> failed;
  std::size_t total = 0;
  const auto check = [&](const std::string& name, bool ok) {
    ++total;
    if (!ok) failed.push_back(name);
  };
  const auto near = [&](double a, double b) { return std::abs(a - b) <= tol; };

  check("iou identical", near(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0));
  check("iou disjoint", near(iou({0, 0, 1, 1}, {5, 5, 6, 6}), 0.0));
  check("iou 1/7", near(iou({0, 0, 2, 2}, {1, 1, 3, 3}), 1.0 / 7.0));
  check("containment full", near(containment_ratio({2, 2, 4, 4}, {0, 0, 10, 10}), 1.0));
  check("containment half", near(containment_ratio({0, 0, 2, 2}, {1, 0, 3, 2}), 0.5));
  check("containment disjoint", near(containment_ratio({0, 0, 2, 2}, {5, 5, 6, 6}), 0.0));
  check("levenshtein kitten", levenshtein("kitten", "sitting") == 3);

  BoxedGraph two;
  oracle::add_node(two, {0, 0, 40, 40});
  oracle::add_node(two, {100, 0, 140, 40});
  oracle::add_edge(two, 0, 1, false, {40, 15, 100, 25});
  BoxedGraph flipped = two;
  std::swap(flipped.doc.edges[0].source, flipped.doc.edges[0].target);
  const Matching same = match_structures(two, two);
  check("identical graphs", isomorphic_error(same) == 0 && same.node_pairs.size() == 2 && same.edge_pairs.size() == 1);
  BoxedGraph extra = two;
  oracle::add_node(extra, {300, 300, 340, 340});
  check("extra node", match_structures(extra, two).unmatched_pred_nodes.size() == 1 &&
                          isomorphic_error(match_structures(extra, two)) == 1);
  const Matching fd = match_structures(flipped, two, 0.5, MatchMode::kDirected);
  const Matching fu = match_structures(flipped, two, 0.5, MatchMode::kUndirected);
  check("flipped edge directed", fd.unmatched_pred_edges.size() == 1 && fd.unmatched_gt_edges.size() == 1);
  check("flipped edge undirected", fu.edge_pairs.size() == 1);

  const IsoReport perfect = norm_isomorphic_error(counted(5, 4, 0, 0, 0, 0), 5, 4);
  check("iso perfect", perfect.iso_error == 0 && near(perfect.norm_iso_error, 0.0));
  const IsoReport miss = norm_isomorphic_error(counted(5, 3, 0, 0, 0, 1), 5, 4);
  check("iso 1/9", miss.iso_error == 1 && near(miss.norm_iso_error, 1.0 / 9.0));
  const IsoReport over = norm_isomorphic_error(counted(1, 0, 0, 0, 3, 1), 1, 1);
  check("edge norm 4", near(*over.edge_norm_error, 4.0));
  bool degenerate = false;
  try {
    norm_isomorphic_error(counted(0, 0, 1, 0, 0, 0), 0, 0);
  } catch (const Error& e) {
    degenerate = e.code() == ErrorCode::kDegenerateGraph;
  }
  check("iso degenerate", degenerate);

  const std::vector<ObjectAnnotation> gt{{ObjectClass::node(), {0, 0, 10, 10}},
                                         {ObjectClass::edge(EdgeClass::kL2R), {10, 4, 40, 6}}};
  std::vector<Detection> dets;
  for (const auto& g : gt) dets.push_back({g.cls, g.box, 1.0});
  check("map perfect", near(*mean_ap({{dets, gt}}), 1.0));
  check("map percent", detection_report({{dets, gt}})["map"] == 100.0);
  check("map empty", near(*mean_ap({{{}, gt}}), 0.0));
  const ApReport half = average_precision({{{{ObjectClass::node(), {0, 0, 1, 1}, 0.9}}, {{ObjectClass::node(), {0, 0, 2, 1}}}}});
  check("ap iou one half", near(*half.ap[0], 0.1));

  BoxedGraph tg = two;
  tg.doc.nodes[0].content = "alpha";
  tg.doc.edges[0].weight = 0.5;
  check("text identical", near(text_rec_error(match_structures(tg, tg), tg.doc, tg.doc), 0.0));
  BoxedGraph g4, p4;
  oracle::add_node(g4, {0, 0, 10, 10});
  oracle::add_node(p4, {0, 0, 10, 10});
  g4.doc.nodes[0].content = "abcd";
  check("text deletion", near(text_rec_error(match_structures(p4, g4), p4.doc, g4.doc), 1.0));

  std::string detail = std::to_string(total - failed.size()) + "/" + std::to_string(total) + " examples exact (tolerance 1e-9)";
  for (const auto& f : failed) detail += "; failed " + f;
  return {failed.empty(), detail};
}

Outcome noise_monotonicity(const fs::path& root, Ledger& ledger) {
  std::vector<double> means;
  std::string detail;
  for (double p : {0.0, 0.1, 0.3}) {
    NoiseParams n;
    n.p_drop = p;
    n.seed = kSeed + 1;
    const io::json report = run_chain(root, 200, n);
    ledger.record("p_drop " + fmt(p, 1), report);
    means.push_back(report["directed"]["norm_iso_error"]["mean"].get<double>());
    detail += (detail.empty() ? "" : ", ") + ("p_drop " + fmt(p, 1) + " -> " + fmt(means.back()));
  }
  return {means[0] < means[1] && means[1] < means[2], "mean directed norm-iso over 200 images: " + detail};
}

Outcome mode_ordering(const fs::path& root, Ledger& ledger) {
  NoiseParams n;
  n.p_drop = 0.05;
  n.p_misclass = 0.1;
  n.jitter_sigma = 3.0;
  n.p_spurious = 0.5;
  n.spurious_edge_fraction = 0.5;
  n.text_edit_rate = 1.0;
  n.confidence_range = {0.3, 1.0};
  n.seed = kSeed + 2;
  ledger.record("mixed noise", run_chain(root, 200, n));
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < ledger.names.size(); ++i) {
    const auto [u, d] = ledger.orderings[i];
    pass = pass && u <= d;
    detail += (i ? "; " : "") + ledger.names[i] + ": " + fmt(u) + " <= " + fmt(d);
  }
  return {pass, detail};
}

std::map<std::string, std::string> outputs(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    const std::string rel = fs::relative(e.path(), root).string();
    // Run descriptions record their own output paths, which differ by design.
    if (rel.ends_with("run.json")) continue;
    files[rel] = io::read_file(e.path());
  }
  return files;
}

Outcome determinism(const fs::path& root) {
  io::write_file_atomic(root / "noise.json",
                        R"({"p_drop": 0.1, "p_misclass": 0.1, "jitter_sigma": 2.0, "p_spurious": 0.5,
                            "spurious_edge_fraction": 0.5, "confidence_range": [0.2, 1.0], "text_edit_rate": 1.0})");
  std::ostringstream sink;
  for (const std::string run : {"a", "b"}) {
    const std::string dir = (root / run).string();
    const std::string workers = run == "a" ? "1" : "4";
    const std::vector<std::vector<std::string>> steps{
        {"generate", "--count", "30", "--seed", "7", "--workers", workers, "--out", dir + "/ds"},
        {"simulate", "--dataset", dir + "/ds", "--noise-config", (root / "noise.json").string(), "--seed", "9",
         "--workers", workers, "--out", dir + "/sim"},
        {"reconstruct", "--detections", dir + "/sim/train/detections", "--texts", dir + "/sim/train/text_detections",
         "--workers", workers, "--out", dir + "/rec"},
        {"evaluate", "--pred", dir + "/rec/graphs", "--gt", dir + "/ds/train/graphs", "--report", dir + "/report.json",
         "--detections", dir + "/sim/train/detections", "--labels", dir + "/ds/train/labels", "--workers", workers}};
    for (const auto& s : steps) {
      if (cli::run_cli(s, sink, sink) != 0) return {false, "command '" + s[0] + "' failed: " + sink.str()};
    }
  }
  const auto a = outputs(root / "a"), b = outputs(root / "b");
  std::size_t differing = 0, labels = 0, graphs = 0;
  for (const auto& [rel, body] : a) {
    const auto it = b.find(rel);
    if (it == b.end() || it->second != body) ++differing;
    labels += rel.find("/labels/") != std::string::npos;
    graphs += rel.find("graphs/") != std::string::npos;
  }
  const bool pass = a.size() == b.size() && differing == 0 && labels > 0 && graphs > 0 && a.count("report.json");
  return {pass, std::to_string(a.size()) + " files compared (" + std::to_string(labels) + " label files, " +
                    std::to_string(graphs) + " graph files, report), " + std::to_string(differing) +
                    " differ; worker counts 1 and 4"};
}

Outcome greedy_vs_optimal() {
  Rng rng(kSeed);
  constexpr int n = 1000;
  int agree = 0;
  for (int i = 0; i < n; ++i) {
    const auto f = oracle::random_fixture(rng);
    const std::size_t greedy = isomorphic_error(match_structures(f.pred, f.gt));
    const std::size_t best = oracle::optimal_iso_error(f.pred, f.gt, 0.5, MatchMode::kDirected);
    if (greedy == best) {
      ++agree;
    } else {
      std::cout << "  fixture " << i << ": greedy iso_error " << greedy << ", optimal " << best << "\n";
    }
  }
  return {agree * 100 >= n * 95, std::to_string(agree) + "/" + std::to_string(n) + " fixtures agree (need >= 95%)"};
}

}  // namespace

int main() {
  const fs::path root = fs::temp_directory_path() / ("svcgraph_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  Ledger ledger;
  int failures = 0;
  const auto report = [&](int id, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << std::endl;
  };
  report(1, [&] { return round_trip(root / "c1", ledger); });
  report(2, [&] { return dataset_statistics(root); });
  report(3, [&] { return split_arithmetic(root); });
  report(4, [&] { return metric_examples(); });
  // Criterion 5 is judged over every dataset evaluated here, so it runs
  // after the noise sweep.
  Outcome six;
  try {
    six = noise_monotonicity(root / "c6", ledger);
  } catch (const std::exception& e) {
    six = {false, std::string("exception: ") + e.what()};
  }
  report(5, [&] { return mode_ordering(root / "c5", ledger); });
  report(6, [&] { return six; });
  report(7, [&] { return determinism(root / "c7"); });
  report(8, [&] { return greedy_vs_optimal(); });
  fs::remove_all(root);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
