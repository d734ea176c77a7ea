// Offline visualization export of a detect result.
#pragma once

#include <filesystem>
#include <optional>

namespace gbh {

struct VizOptions {
  std::filesystem::path detect_json;
  std::filesystem::path mesh;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> config;  // gripper and ray settings
};

/// Writes grasp_NNN.ply (posed gripper capsules, one per grasp), rays.ply
/// (hang ray fans as edges, green hits and red misses) and markers.ply
/// (spheres at c, contacts and q_m). Exit status 0, or 1 on error.
int cmd_viz(const VizOptions& opts);

}  // namespace gbh
