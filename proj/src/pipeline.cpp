#include "gbh/pipeline.hpp"

#include "gbh/mesh_io.hpp"
#include "gbh/report.hpp"
#include "gbh/scoring.hpp"

#include <fstream>
#include <iostream>

namespace gbh {

PipelineResult run_pipeline(const TriangleMesh& mesh, const PipelineConfig& cfg) {
  cfg.validate();
  PipelineResult r;
  r.scene = prepare_scene(mesh, cfg.hang.sample_count, cfg.seed);
  r.hangs = detect_hangability(r.scene, cfg.hang);
  r.grasps = generate_grasps(r.hangs, r.scene.cloud, r.scene.cloud_index, cfg.gripper, cfg.gen);
  score_all(r.grasps, r.hangs, cfg.score);
  r.ranked = rank_top_k(r.grasps, cfg.top_k);
  return r;
}

PipelineConfig resolve_config(const RunOptions& opts) {
  PipelineConfig cfg = opts.config ? load_config(*opts.config) : parse_config("");
  if (opts.top_k) cfg.top_k = *opts.top_k;
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.profile) cfg.profile = *opts.profile;
  cfg.apply_profile();
  cfg.validate();
  return cfg;
}

namespace {

void write_output(const RunOptions& opts, const std::string& text) {
  if (!opts.out || opts.out->string() == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(*opts.out, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + opts.out->string());
}

}  // namespace

int cmd_detect(const RunOptions& opts) {
  try {
    const PipelineConfig cfg = resolve_config(opts);
    const TriangleMesh mesh = load_mesh(opts.mesh);
    const PipelineResult r = run_pipeline(mesh, cfg);
    write_output(opts, dump_json(make_document(opts.mesh.string(), config_hash(cfg), r.scene.stats.com, r.hangs,
                                               &r.ranked)));
    return r.ranked.empty() ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_hang(const RunOptions& opts) {
  try {
    const PipelineConfig cfg = resolve_config(opts);
    const TriangleMesh mesh = load_mesh(opts.mesh);
    const ObjectScene scene = prepare_scene(mesh, cfg.hang.sample_count, cfg.seed);
    const std::vector<HangRecord> hangs = detect_hangability(scene, cfg.hang);
    write_output(opts, dump_json(make_document(opts.mesh.string(), config_hash(cfg), scene.stats.com, hangs, nullptr)));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_synth(const SynthOptions& opts) {
  try {
    if (opts.format != "obj" && opts.format != "ply" && opts.format != "stl") {
      throw Error("unsupported output format '" + opts.format + "'");
    }
    const Shape shape = build_shape(opts.spec);
    std::string stem = opts.name;
    if (stem.empty()) stem = std::string(to_string(opts.spec.kind)) + (opts.spec.partial ? "_partial" : "");
    std::filesystem::create_directories(opts.out_dir);
    save_mesh(opts.out_dir / (stem + "." + opts.format), shape.mesh);
    std::ofstream side(opts.out_dir / (stem + ".json"), std::ios::binary);
    side << ground_truth_json(opts.spec, shape.truth);
    if (!side) throw Error("cannot write ground truth sidecar");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gbh
