#include "gbh/viz.hpp"

#include "gbh/config.hpp"
#include "gbh/gripper.hpp"
#include "gbh/hangability.hpp"
#include "gbh/mesh_builders.hpp"
#include "gbh/mesh_io.hpp"
#include "gbh/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gbh {
namespace {

const Rgb kHit = {40, 200, 60};
const Rgb kMiss = {220, 40, 40};
const Rgb kCenter = {40, 90, 230};
const Rgb kContact = {240, 200, 30};
const Rgb kMatch = {210, 40, 210};

void add_marker(PlyScene& scene, const Vec3& at, double radius, const Rgb& color) {
  const TriangleMesh s = sphere_mesh(at, radius, 8);
  const int offset = static_cast<int>(scene.vertices.size());
  for (const Vec3& v : s.vertices) {
    scene.vertices.push_back(v);
    scene.colors.push_back(color);
  }
  for (Face f : s.faces) {
    for (int& k : f) k += offset;
    scene.faces.push_back(f);
  }
}

}  // namespace

int cmd_viz(const VizOptions& opts) {
  try {
    const PipelineConfig cfg = opts.config ? load_config(*opts.config) : parse_config("");
    Json doc;
    {
      std::ifstream in(opts.detect_json);
      if (!in) throw Error("unreadable file: " + opts.detect_json.string());
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        doc = Json::parse(ss.str());
      } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("corrupt detect output: ") + e.what());
      }
    }
    if (!doc.is_object() || !doc.contains("hangs") || !doc["hangs"].is_array()) {
      throw Error("corrupt detect output: missing hangs");
    }
    TriangleMesh mesh = load_mesh(opts.mesh);
    const TriangleBvh bvh(mesh);
    const double reach = bounding_box(mesh.vertices).extent().norm();
    std::filesystem::create_directories(opts.out_dir);

    PlyScene rays, markers;
    for (const Json& h : doc["hangs"]) {
      const Vec3 c = vec3_from_json(h.at("c"));
      const Vec3 v = vec3_from_json(h.at("v"));
      add_marker(markers, c, 0.002, kCenter);
      for (const Vec3& d : ray_fan(v, cfg.hang.rays_per_plane)) {
        const auto hit = bvh.first_hit(c, d);
        const Vec3 end = hit ? hit->point : Vec3(c + reach * d);
        const int a = static_cast<int>(rays.vertices.size());
        rays.vertices.push_back(c);
        rays.vertices.push_back(end);
        rays.colors.push_back(hit ? kHit : kMiss);
        rays.colors.push_back(hit ? kHit : kMiss);
        rays.edges.emplace_back(a, a + 1);
      }
    }
    save_ply_scene(opts.out_dir / "rays.ply", rays);

    const Json grasps = doc.contains("grasps") ? doc["grasps"] : Json::array();
    if (!grasps.is_array()) throw Error("corrupt detect output: grasps is not an array");
    int index = 0;
    for (const Json& g : grasps) {
      const Json& rot = g.at("rotation");
      if (!rot.is_array() || rot.size() != 9) throw Error("corrupt detect output: rotation");
      RigidTransform pose;
      for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) pose.rotation(r, col) = rot[3 * r + col].get<double>();
      }
      pose.translation = vec3_from_json(g.at("translation"));
      char name[32];
      std::snprintf(name, sizeof name, "grasp_%03d.ply", ++index);
      save_ply(opts.out_dir / name, gripper_mesh(cfg.gripper, pose));
      add_marker(markers, vec3_from_json(g.at("contact")), 0.0015, kContact);
      if (!g.at("q_m").is_null()) add_marker(markers, vec3_from_json(g.at("q_m")), 0.0015, kMatch);
    }
    save_ply_scene(opts.out_dir / "markers.ply", markers);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gbh
