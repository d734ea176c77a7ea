#include "gbh/mass_properties.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace gbh {
namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

bool is_watertight(const TriangleMesh& mesh) {
  if (mesh.faces.empty()) return false;
  // Directed half-edge counts; a closed oriented manifold uses each exactly once.
  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(mesh.faces.size() * 3);
  for (const Face& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      if (++directed[edge_key(f[k], f[(k + 1) % 3])] > 1) return false;
    }
  }
  for (const auto& [key, count] : directed) {
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffu);
    if (directed.find(edge_key(b, a)) == directed.end()) return false;
  }
  return true;
}

double signed_volume(const TriangleMesh& mesh) {
  double six_v = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    six_v += mesh.corner(f, 0).dot(mesh.corner(f, 1).cross(mesh.corner(f, 2)));
  }
  return six_v / 6.0;
}

bool orient_outward(TriangleMesh& mesh) {
  if (!is_watertight(mesh) || signed_volume(mesh) >= 0.0) return false;
  for (Face& f : mesh.faces) std::swap(f[1], f[2]);
  mesh.update_normals();
  return true;
}

MeshStats compute_com(const TriangleMesh& mesh) {
  if (mesh.faces.empty()) throw PreconditionError("compute_com: empty mesh");
  MeshStats stats;
  stats.bbox = bounding_box(mesh.vertices);
  stats.watertight = is_watertight(mesh);

  // Reference point inside the bounding box keeps the tetra sums well conditioned.
  const Vec3 ref = stats.bbox.center();
  if (stats.watertight) {
    double six_vol = 0.0;
    Vec3 moment = Vec3::Zero();
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
      const Vec3 a = mesh.corner(f, 0) - ref;
      const Vec3 b = mesh.corner(f, 1) - ref;
      const Vec3 c = mesh.corner(f, 2) - ref;
      const double w = a.dot(b.cross(c));
      six_vol += w;
      moment += w * (a + b + c);
    }
    if (std::abs(six_vol) > 0.0) {
      stats.com = ref + moment / (4.0 * six_vol);
      return stats;
    }
    stats.watertight = false;
  }
  double area = 0.0;
  Vec3 moment = Vec3::Zero();
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const double a = mesh.face_area(f);
    area += a;
    moment += a * (mesh.face_centroid(f) - ref);
  }
  stats.com = ref + moment / area;
  return stats;
}

}  // namespace gbh
