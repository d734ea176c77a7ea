// gbh: hangability detection and hook-gripper grasp ranking for meshes.
#include "gbh/pipeline.hpp"
#include "gbh/viz.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

void add_run_flags(CLI::App* cmd, std::string& mesh, std::string& config, std::string& out,
                   std::size_t& top_k, std::uint64_t& seed, std::string& profile) {
  cmd->add_option("--mesh", mesh, "Input mesh (OBJ, PLY or STL, meters)")->required();
  cmd->add_option("--config", config, "Pipeline config file");
  cmd->add_option("--out", out, "Output JSON path (default stdout)");
  cmd->add_option("--top-k", top_k, "Number of ranked grasps to keep (default 10)");
  cmd->add_option("--seed", seed, "Sampling seed");
  cmd->add_option("--profile", profile, "Viewpoint profile")->check(CLI::IsMember({"full", "single"}));
}

void fill(gbh::RunOptions& opts, CLI::App* cmd, const std::string& mesh, const std::string& config,
          const std::string& out, std::size_t top_k, std::uint64_t seed, const std::string& profile) {
  opts.mesh = mesh;
  if (cmd->count("--config")) opts.config = config;
  if (cmd->count("--out")) opts.out = out;
  if (cmd->count("--top-k")) opts.top_k = top_k;
  if (cmd->count("--seed")) opts.seed = seed;
  if (cmd->count("--profile")) opts.profile = profile;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hangability detection and grasp ranking for a hook-augmented gripper"};
  app.require_subcommand(1);

  gbh::RunOptions run;
  std::string mesh, config, out, profile = "full";
  std::size_t top_k = 10;
  std::uint64_t seed = 0;

  CLI::App* detect = app.add_subcommand("detect", "Detect hang structures and write ranked grasps");
  add_run_flags(detect, mesh, config, out, top_k, seed, profile);
  CLI::App* hang = app.add_subcommand("hang", "Detect hang structures only");
  add_run_flags(hang, mesh, config, out, top_k, seed, profile);

  gbh::VizOptions viz;
  std::string viz_input, viz_mesh, viz_dir, viz_config;
  CLI::App* vcmd = app.add_subcommand("viz", "Export PLY files for a detect result");
  vcmd->add_option("--input", viz_input, "detect output JSON")->required();
  vcmd->add_option("--mesh", viz_mesh, "Mesh the result was computed on")->required();
  vcmd->add_option("--out-dir", viz_dir, "Output directory")->required();
  vcmd->add_option("--config", viz_config, "Pipeline config file");

  gbh::SynthOptions synth;
  std::string shape = "torus", synth_dir;
  std::vector<std::string> params;
  std::vector<double> view;
  CLI::App* scmd = app.add_subcommand("synth", "Write a synthetic test shape and its ground truth");
  scmd->add_option("--shape", shape, "torus, arc_torus, mug, hanger, plate_with_holes, sphere, box or cylinder");
  scmd->add_option("--out-dir", synth_dir, "Output directory")->required();
  scmd->add_option("--format", synth.format, "obj, ply or stl")->check(CLI::IsMember({"obj", "ply", "stl"}));
  scmd->add_option("--name", synth.name, "File stem (default: shape name)");
  scmd->add_option("--param", params, "Dimension override name=value (repeatable)");
  scmd->add_option("--resolution", synth.spec.resolution, "Tessellation density");
  scmd->add_option("--seed", synth.spec.seed, "Seed for --random-pose");
  scmd->add_flag("--random-pose", synth.spec.random_pose, "Apply a seeded rigid motion");
  scmd->add_flag("--partial", synth.spec.partial, "Keep only faces visible from the viewpoint");
  scmd->add_option("--viewpoint", view, "Viewpoint direction x y z (with --partial)")->expected(3);

  CLI11_PARSE(app, argc, argv);

  if (detect->parsed() || hang->parsed()) {
    CLI::App* cmd = detect->parsed() ? detect : hang;
    fill(run, cmd, mesh, config, out, top_k, seed, profile);
    return detect->parsed() ? gbh::cmd_detect(run) : gbh::cmd_hang(run);
  }
  if (vcmd->parsed()) {
    viz.detect_json = viz_input;
    viz.mesh = viz_mesh;
    viz.out_dir = viz_dir;
    if (vcmd->count("--config")) viz.config = viz_config;
    return gbh::cmd_viz(viz);
  }
  try {
    const int resolution = synth.spec.resolution;
    synth.spec.kind = gbh::shape_kind_from_string(shape);
    for (const std::string& p : params) {
      const std::size_t eq = p.find('=');
      if (eq == std::string::npos) throw gbh::Error("--param expects name=value, got '" + p + "'");
      gbh::set_shape_param(synth.spec, p.substr(0, eq), std::stod(p.substr(eq + 1)));
    }
    if (scmd->count("--resolution")) synth.spec.resolution = resolution;
    if (view.size() == 3) synth.spec.viewpoints.push_back(gbh::Vec3(view[0], view[1], view[2]));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  synth.out_dir = synth_dir;
  return gbh::cmd_synth(synth);
}
