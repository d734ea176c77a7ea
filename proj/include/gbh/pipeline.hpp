// End-to-end runs and the command implementations behind the `gbh` tool.
#pragma once

#include "gbh/config.hpp"
#include "gbh/grasp_gen.hpp"
#include "gbh/hangability.hpp"
#include "gbh/scene.hpp"
#include "gbh/synthetics.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gbh {

struct PipelineResult {
  ObjectScene scene;
  std::vector<HangRecord> hangs;
  std::vector<GraspCandidate> grasps;  // collision-free, scored, generation order
  std::vector<GraspCandidate> ranked;  // top_k of grasps
};

PipelineResult run_pipeline(const TriangleMesh& mesh, const PipelineConfig& cfg);

/// Flag values that take precedence over the config file.
struct RunOptions {
  std::filesystem::path mesh;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;  // stdout when absent or "-"
  std::optional<std::size_t> top_k;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> profile;
};

PipelineConfig resolve_config(const RunOptions& opts);

/// Exit status: 0 with at least one grasp, 2 with none, 1 on error.
int cmd_detect(const RunOptions& opts);
/// Hang records only. Exit status 0, or 1 on error.
int cmd_hang(const RunOptions& opts);

struct SynthOptions {
  ShapeSpec spec;
  std::filesystem::path out_dir;
  std::string format = "obj";  // obj, ply or stl
  std::string name;             // file stem; defaults to the shape name
};
/// Writes <name>.<format> and <name>.json. Exit status 0, or 1 on error.
int cmd_synth(const SynthOptions& opts);

}  // namespace gbh
