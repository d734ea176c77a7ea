// Independent reference implementations used to check the library. They
// share no geometry code with src/ beyond the plain data types.
#pragma once

#include "gbh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using gbh::Vec3;

struct Hit {
  double t = 0.0;
  int face = -1;
};

// Plane intersection followed by a same-side inside test. Lowest (t, face)
// over every triangle with t > eps.
inline std::optional<Hit> brute_force_ray(const gbh::TriangleMesh& mesh, const Vec3& o, const Vec3& d,
                                          double eps = 1e-6) {
  std::optional<Hit> best;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Vec3 a = mesh.vertices[mesh.faces[f][0]];
    const Vec3 b = mesh.vertices[mesh.faces[f][1]];
    const Vec3 c = mesh.vertices[mesh.faces[f][2]];
    const Vec3 n = (b - a).cross(c - a);
    const double denom = n.dot(d);
    if (std::abs(denom) < 1e-300) continue;
    const double t = n.dot(a - o) / denom;
    if (!(t > eps)) continue;
    const Vec3 p = o + t * d;
    const double s0 = n.dot((b - a).cross(p - a));
    const double s1 = n.dot((c - b).cross(p - b));
    const double s2 = n.dot((a - c).cross(p - c));
    if (s0 < 0.0 || s1 < 0.0 || s2 < 0.0) continue;
    if (!best || t < best->t || (t == best->t && static_cast<int>(f) < best->face)) best = Hit{t, static_cast<int>(f)};
  }
  return best;
}

// Closest point on triangle by checking the interior projection and the
// three edges separately.
inline double segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double l2 = ab.squaredNorm();
  if (l2 == 0.0) return (p - a).norm();
  double t = (p - a).dot(ab) / l2;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return (p - (a + t * ab)).norm();
}

inline double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a).normalized();
  const Vec3 q = p - n.dot(p - a) * n;
  const bool inside = n.dot((b - a).cross(q - a)) >= 0.0 && n.dot((c - b).cross(q - b)) >= 0.0 &&
                      n.dot((a - c).cross(q - c)) >= 0.0;
  if (inside) return std::abs(n.dot(p - a));
  return std::min({segment_distance(p, a, b), segment_distance(p, b, c), segment_distance(p, c, a)});
}

inline double point_mesh_distance(const gbh::TriangleMesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    best = std::min(best, point_triangle_distance(p, mesh.vertices[mesh.faces[f][0]],
                                                  mesh.vertices[mesh.faces[f][1]], mesh.vertices[mesh.faces[f][2]]));
  }
  return best;
}

// Capsule containment from the segment parameterization, strict.
struct Capsule {
  Vec3 a, b;
  double r;
};

inline bool inside_capsule(const Capsule& c, const Vec3& p) {
  const Vec3 ab = c.b - c.a;
  const double l2 = ab.squaredNorm();
  double t = l2 > 0.0 ? (p - c.a).dot(ab) / l2 : 0.0;
  t = std::max(0.0, std::min(1.0, t));
  const Vec3 d = p - c.a - t * ab;
  return d.squaredNorm() < c.r * c.r;
}

// The gripper's collision capsules, transcribed from the frame definitions
// (open jaws, hand trimmed to the palm plane).
inline std::vector<Capsule> gripper_capsules(double l_f, double w, double l_h, double l_b, double rod, double hand_r) {
  const Vec3 p4(-w / 2, 0, 0), p2(-w / 2, 0, l_f), p5(w / 2, 0, 0), p3(w / 2, 0, l_f), p1(w / 2 - l_h, 0, l_f);
  return {{p4, p2, rod}, {p5, p3, rod}, {p3, p1, rod}, {p4, p5, rod},
          {Vec3(0, 0, -hand_r), Vec3(0, 0, -std::max(l_b, hand_r)), hand_r}};
}

inline int count_inside(const std::vector<Capsule>& local, const gbh::RigidTransform& pose,
                        const std::vector<Vec3>& points) {
  int n = 0;
  for (const Vec3& p : points) {
    const Vec3 q = pose.rotation.transpose() * (p - pose.translation);
    for (const Capsule& c : local) {
      if (inside_capsule(c, q)) {
        ++n;
        break;
      }
    }
  }
  return n;
}

// Centroid of occupied voxel centers. Each (y, z) column casts one ray along
// +x; crossings pair up into inside intervals, and the voxel centers in each
// interval are summed in closed form.
inline Vec3 voxel_centroid(const gbh::TriangleMesh& mesh, double h) {
  const gbh::AxisAlignedBox box = gbh::bounding_box(mesh.vertices);
  const long nx = static_cast<long>(std::round((box.max.x() - box.min.x()) / h));
  Vec3 sum = Vec3::Zero();
  double count = 0.0;
  std::vector<double> xs;
  for (double z = box.min.z() + h / 2; z < box.max.z(); z += h) {
    for (double y = box.min.y() + h / 2; y < box.max.y(); y += h) {
      xs.clear();
      for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const Vec3 a = mesh.vertices[mesh.faces[f][0]];
        const Vec3 b = mesh.vertices[mesh.faces[f][1]];
        const Vec3 c = mesh.vertices[mesh.faces[f][2]];
        // 2D point-in-triangle in the (y, z) projection.
        const double d = (b.y() - a.y()) * (c.z() - a.z()) - (c.y() - a.y()) * (b.z() - a.z());
        if (d == 0.0) continue;
        const double l1 = ((b.y() - y) * (c.z() - z) - (c.y() - y) * (b.z() - z)) / d;
        const double l2 = ((c.y() - y) * (a.z() - z) - (a.y() - y) * (c.z() - z)) / d;
        const double l3 = 1.0 - l1 - l2;
        if (l1 < 0 || l2 < 0 || l3 < 0) continue;
        xs.push_back(l1 * a.x() + l2 * b.x() + l3 * c.x());
      }
      std::sort(xs.begin(), xs.end());
      // A column through a shared edge reports the same crossing twice.
      xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               xs.end());
      for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
        // Voxel centers x_i = min.x + (i + 0.5) h with xs[k] < x_i < xs[k+1].
        const long i0 = std::max(0L, static_cast<long>(std::ceil((xs[k] - box.min.x()) / h - 0.5)));
        const long i1 = std::min(nx - 1, static_cast<long>(std::floor((xs[k + 1] - box.min.x()) / h - 0.5)));
        if (i1 < i0) continue;
        const double n = static_cast<double>(i1 - i0 + 1);
        const double mean_i = 0.5 * (i0 + i1);
        sum += n * Vec3(box.min.x() + (mean_i + 0.5) * h, y, z);
        count += n;
      }
    }
  }
  return count > 0 ? Vec3(sum / count) : Vec3::Zero();
}

// Slab slice in gripper coordinates via R^T (p - t).
inline std::vector<int> slice(const gbh::RigidTransform& pose, const std::vector<Vec3>& pts, double half_w,
                              double l_f, double slab) {
  std::vector<int> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3 q = pose.rotation.transpose() * (pts[i] - pose.translation);
    if (q.y() >= -slab && q.y() <= slab && q.x() >= -half_w && q.x() <= half_w && q.z() >= 0 && q.z() <= l_f) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

inline gbh::RigidTransform random_pose(std::mt19937_64& rng, double extent) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(-extent, extent);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  gbh::RigidTransform t;
  t.rotation = q.toRotationMatrix();
  t.translation = Vec3(u(rng), u(rng), u(rng));
  return t;
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  return v.normalized();
}

// Unit cube [-0.5, 0.5]^3 as OBJ text.
inline std::string cube_obj() {
  return "v -0.5 -0.5 -0.5\nv 0.5 -0.5 -0.5\nv -0.5 0.5 -0.5\nv 0.5 0.5 -0.5\n"
         "v -0.5 -0.5 0.5\nv 0.5 -0.5 0.5\nv -0.5 0.5 0.5\nv 0.5 0.5 0.5\n"
         "f 1 3 2\nf 2 3 4\nf 5 6 7\nf 6 8 7\nf 1 2 5\nf 2 6 5\n"
         "f 3 7 4\nf 4 7 8\nf 1 5 3\nf 3 5 7\nf 2 4 6\nf 4 8 6\n";
}

inline std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "gbh_tests";
  std::filesystem::create_directories(dir);
  const std::filesystem::path p = dir / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

}  // namespace oracle
