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

// The svcgraph command line. Each subcommand resolves its flags and files
// into a JSON run description, writes it as run.json and executes it, so
// `svcgraph rerun run.json` repeats the run without the original files.
//
// Exit codes: 0 ok, 2 configuration error, 3 I/O error, 4 input mismatch.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "svcgraph/io.hpp"
#include "svcgraph/pipeline.hpp"
#include "svcgraph/renderer.hpp"

namespace svc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitMismatch = 4;
inline constexpr const char* kVersion = "0.1.0";

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kInputMismatch:
      return kExitMismatch;
    default:
      return kExitConfig;
  }
}

/// Master seed after applying the SVC_SEED override.
inline std::uint64_t resolve_seed(std::uint64_t flag_seed) {
  const char* env = std::getenv("SVC_SEED");
  if (!env || !*env) return flag_seed;
  try {
    std::size_t used = 0;
    const std::string s(env);
    const auto v = std::stoull(s, &used, 0);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, std::string("SVC_SEED is not an unsigned integer: ") + env);
}

// Config files are configuration: a missing or unreadable one is exit 2.
inline json read_config(const std::string& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::kInvalidArgument, "config file not found: " + path);
  try {
    return io::parse_json(io::read_file(path));
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidArgument, e.what());
  }
}

// ---------------------------------------------------------------------------
// Execution of resolved runs

inline void write_run_json(const fs::path& path, const json& run) { io::write_file_atomic(path, io::dump(run)); }

inline int execute(const json& run, std::ostream& out) {
  const std::string cmd = run.at("command").get<std::string>();
  const json& a = run.at("args");
  const int workers = a.value("workers", 1);
  if (cmd == "generate") {
    DatasetOptions opt;
    opt.config = io::gen_config_from_json(a.at("config"));
    opt.count = a.at("count").get<std::size_t>();
    opt.split = a.at("split").get<std::array<double, 3>>();
    opt.seed = a.at("seed").get<std::uint64_t>();
    opt.workers = workers;
    opt.write_images = a.value("images", true);
    const fs::path dir = a.at("out").get<std::string>();
    const DatasetManifest m = generate_dataset(opt, dir);
    write_run_json(dir / "run.json", run);
    out << io::dump(m.to_json());
  } else if (cmd == "simulate") {
    NoiseParams p = io::noise_params_from_json(a.at("noise"));
    p.seed = a.at("seed").get<std::uint64_t>();
    const fs::path dir = a.at("out").get<std::string>();
    const std::size_t n = simulate_dataset(a.at("dataset").get<std::string>(), p, dir, workers);
    write_run_json(dir / "run.json", run);
    out << json({{"images", n}}).dump() << "\n";
  } else if (cmd == "reconstruct") {
    const ReconstructParams p = io::reconstruct_params_from_json(a.at("params"));
    const fs::path dir = a.at("out").get<std::string>();
    const std::size_t n = reconstruct_tree(a.at("detections").get<std::string>(), a.at("texts").get<std::string>(),
                                           a.at("index").get<std::string>(), p, dir, workers);
    write_run_json(dir / "run.json", run);
    out << json({{"images", n}}).dump() << "\n";
  } else if (cmd == "evaluate") {
    EvaluateOptions opt;
    opt.iou_threshold = a.at("iou_threshold").get<double>();
    opt.directed = a.at("directed").get<bool>();
    opt.undirected = a.at("undirected").get<bool>();
    opt.nodes_only = a.at("nodes_only").get<bool>();
    opt.edges_only = a.at("edges_only").get<bool>();
    opt.workers = workers;
    json report = evaluate_graphs(a.at("pred").get<std::string>(), a.at("gt").get<std::string>(), opt);
    if (a.contains("detections")) {
      report["detection"] = detection_report(load_detection_pairs(
          a.at("detections").get<std::string>(), a.at("labels").get<std::string>(), a.at("index").get<std::string>()));
    }
    const fs::path path = a.at("report").get<std::string>();
    io::write_file_atomic(path, io::dump(report));
    write_run_json(path.string() + ".run.json", run);
    json brief = json::object();
    for (const char* mode : {"directed", "undirected"}) {
      if (report.contains(mode) && report[mode].contains("norm_iso_error")) {
        brief[mode] = report[mode]["norm_iso_error"]["mean"];
      }
    }
    brief["text_rec_error"] = report["text_rec_error"]["mean"];
    out << brief.dump() << "\n";
  } else if (cmd == "render") {
    const RasterImage image = decode_png(io::read_file(a.at("image").get<std::string>()));
    RasterImage result;
    if (a.contains("graph")) {
      const fs::path graph = a.at("graph").get<std::string>();
      fs::path sidecar = graph;
      sidecar.replace_extension(".boxes.json");
      const BoxedGraph g = detail::read_dataset_file([&] {
        return io::boxed_from_json(io::parse_json(io::read_file(graph)), io::parse_json(io::read_file(sidecar)));
      });
      result = render_graph_overlay(image, g);
    } else {
      DetectionSet dets;
      TextDetectionSet texts;
      detail::read_dataset_file([&] {
        dets = io::parse_detections(io::read_file(a.at("detections").get<std::string>()), image.width, image.height);
        if (a.contains("texts")) {
          texts = io::parse_text_detections(io::read_file(a.at("texts").get<std::string>()), image.width, image.height);
        }
        return 0;
      });
      result = render_overlay(image, dets, texts);
    }
    const fs::path path = a.at("out").get<std::string>();
    io::write_file_atomic(path, encode_png(result));
    write_run_json(path.string() + ".run.json", run);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown command in run description: " + cmd);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Argument parsing

/// Parses `args` (without the program name), runs the command and returns
/// the exit code. Diagnostics go to `err`, summaries to `out`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Synthetic diagram generation, graph reconstruction and evaluation", "svcgraph"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  int workers = 1;
  const auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", workers, "Parallel workers")->check(CLI::PositiveNumber);
  };

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a synthetic dataset");
  std::string gen_config, gen_out, gen_split = "0.7,0.2,0.1";
  std::size_t gen_count = 0;
  std::optional<std::uint64_t> gen_seed;
  bool no_images = false;
  gen->add_option("--config", gen_config, "Generator config (JSON)");
  gen->add_option("--count", gen_count, "Number of images")->required();
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--split", gen_split, "train,val,test fractions");
  gen->add_flag("--no-images", no_images, "Skip rendering PNG images");
  add_workers(gen);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Produce detections from a dataset");
  std::string sim_dataset, sim_noise, sim_out;
  std::optional<std::uint64_t> sim_seed;
  sim->add_option("--dataset", sim_dataset, "Dataset root or split directory")->required();
  sim->add_option("--noise-config", sim_noise, "Noise parameters (JSON); zero noise when omitted");
  sim->add_option("--seed", sim_seed, "Noise seed");
  sim->add_option("--out", sim_out, "Output directory")->required();
  add_workers(sim);

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "Build graphs from detections");
  std::string rec_dets, rec_texts, rec_params, rec_out, rec_index;
  ReconstructParams rp;
  double max_attach = -1;
  rec->add_option("--detections", rec_dets, "Directory of detection files")->required();
  rec->add_option("--texts", rec_texts, "Directory of text detection files")->required();
  rec->add_option("--params", rec_params, "Reconstruction parameters (JSON)");
  rec->add_option("--index", rec_index, "Image index (default: <detections>/../index.json)");
  rec->add_option("--out", rec_out, "Output directory")->required();
  auto* o_gc = rec->add_option("--grouping-containment-min", rp.grouping_containment_min);
  auto* o_nt = rec->add_option("--node-text-overlap-min", rp.node_text_overlap_min);
  auto* o_et = rec->add_option("--edge-text-candidate-min", rp.edge_text_candidate_min);
  auto* o_ma = rec->add_option("--max-attach-distance", max_attach, "Pixels; unbounded when omitted");
  add_workers(rec);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Score predicted graphs against ground truth");
  std::string ev_pred, ev_gt, ev_report, ev_dets, ev_labels, ev_index;
  bool ev_directed = false, ev_undirected = false, ev_nodes = false, ev_edges = false;
  double ev_iou = 0.5;
  ev->add_option("--pred", ev_pred, "Predicted graphs directory")->required();
  ev->add_option("--gt", ev_gt, "Ground-truth graphs directory")->required();
  ev->add_option("--report", ev_report, "Report file (JSON)")->required();
  ev->add_flag("--directed", ev_directed, "Report directed matching");
  ev->add_flag("--undirected", ev_undirected, "Report undirected matching");
  auto* o_nodes = ev->add_flag("--nodes-only", ev_nodes, "Only node errors");
  ev->add_flag("--edges-only", ev_edges, "Only edge errors")->excludes(o_nodes);
  ev->add_option("--iou-threshold", ev_iou, "Structure matching IoU threshold");
  auto* o_dets = ev->add_option("--detections", ev_dets, "Detections directory for mAP");
  ev->add_option("--labels", ev_labels, "Label directory for mAP")->needs(o_dets);
  ev->add_option("--index", ev_index, "Image index for mAP (default: <labels>/../index.json)");
  add_workers(ev);

  // render
  auto* ren = app.add_subcommand("render", "Draw detections or a graph over an image");
  std::string ren_image, ren_dets, ren_texts, ren_graph, ren_out;
  ren->add_option("--image", ren_image, "Input PNG")->required();
  auto* o_rd = ren->add_option("--detections", ren_dets, "Detections file");
  auto* o_rg = ren->add_option("--graph", ren_graph, "Graph document (with .boxes.json sidecar)");
  o_rd->excludes(o_rg);
  ren->add_option("--texts", ren_texts, "Text detections file")->needs(o_rd);
  ren->add_option("--out", ren_out, "Output PNG")->required();

  // rerun
  auto* rr = app.add_subcommand("rerun", "Repeat a run from its run.json");
  std::string rr_file;
  rr->add_option("run", rr_file, "run.json written by an earlier run")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    json run;
    json a = json::object();
    a["workers"] = workers;
    if (gen->parsed()) {
      GenConfig cfg;
      if (!gen_config.empty()) cfg = io::gen_config_from_json(read_config(gen_config));
      cfg.validate();
      const auto split = parse_split(gen_split);
      split_counts(gen_count, split);
      a["config"] = io::to_json(cfg);
      a["count"] = gen_count;
      a["split"] = split;
      a["seed"] = resolve_seed(gen_seed.value_or(cfg.seed));
      a["out"] = gen_out;
      a["images"] = !no_images;
      run["command"] = "generate";
    } else if (sim->parsed()) {
      NoiseParams p;
      if (!sim_noise.empty()) p = io::noise_params_from_json(read_config(sim_noise));
      p.validate();
      a["noise"] = io::to_json(p);
      a["seed"] = resolve_seed(sim_seed.value_or(p.seed));
      a["dataset"] = sim_dataset;
      a["out"] = sim_out;
      run["command"] = "simulate";
    } else if (rec->parsed()) {
      ReconstructParams p;
      if (!rec_params.empty()) p = io::reconstruct_params_from_json(read_config(rec_params));
      // Explicit flags win over the parameter file.
      if (o_gc->count()) p.grouping_containment_min = rp.grouping_containment_min;
      if (o_nt->count()) p.node_text_overlap_min = rp.node_text_overlap_min;
      if (o_et->count()) p.edge_text_candidate_min = rp.edge_text_candidate_min;
      if (o_ma->count()) p.max_attach_distance = max_attach;
      p.validate();
      a["params"] = io::to_json(p);
      a["detections"] = rec_dets;
      a["texts"] = rec_texts;
      a["index"] = rec_index.empty() ? (fs::path(rec_dets).parent_path() / "index.json").string() : rec_index;
      a["out"] = rec_out;
      run["command"] = "reconstruct";
    } else if (ev->parsed()) {
      // Neither mode flag means both.
      const bool both = !ev_directed && !ev_undirected;
      a["pred"] = ev_pred;
      a["gt"] = ev_gt;
      a["report"] = ev_report;
      a["directed"] = both || ev_directed;
      a["undirected"] = both || ev_undirected;
      a["nodes_only"] = ev_nodes;
      a["edges_only"] = ev_edges;
      a["iou_threshold"] = ev_iou;
      if (!ev_dets.empty()) {
        if (ev_labels.empty()) throw Error(ErrorCode::kInvalidArgument, "--detections needs --labels");
        a["detections"] = ev_dets;
        a["labels"] = ev_labels;
        a["index"] = ev_index.empty() ? (fs::path(ev_labels).parent_path() / "index.json").string() : ev_index;
      }
      run["command"] = "evaluate";
    } else if (ren->parsed()) {
      if (ren_dets.empty() && ren_graph.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "render needs --detections or --graph");
      }
      a["image"] = ren_image;
      if (!ren_dets.empty()) a["detections"] = ren_dets;
      if (!ren_texts.empty()) a["texts"] = ren_texts;
      if (!ren_graph.empty()) a["graph"] = ren_graph;
      a["out"] = ren_out;
      run["command"] = "render";
    } else {
      const json stored = read_config(rr_file);
      if (!stored.contains("command") || !stored.contains("args")) {
        throw Error(ErrorCode::kInvalidArgument, rr_file + " is not a run description");
      }
      return execute(stored, out);
    }
    run["args"] = a;
    run["version"] = kVersion;
    return execute(run, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "error: malformed run description: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

inline int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace svc::cli
