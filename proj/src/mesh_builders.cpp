#include "gbh/mesh_builders.hpp"

#include "gbh/mass_properties.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <unordered_map>

namespace gbh {

TriangleMesh revolve_profile(const std::vector<Vec2>& profile, int segments) {
  if (profile.size() < 2 || segments < 3) throw PreconditionError("revolve_profile: profile too short");
  TriangleMesh mesh;
  std::vector<std::vector<int>> rings(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double rho = profile[i].x();
    const double z = profile[i].y();
    if (rho <= 0.0) {
      rings[i].assign(segments, static_cast<int>(mesh.vertices.size()));
      mesh.vertices.emplace_back(0.0, 0.0, z);
      continue;
    }
    for (int j = 0; j < segments; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / segments;
      rings[i].push_back(static_cast<int>(mesh.vertices.size()));
      mesh.vertices.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
    }
  }
  for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
    const bool pole_a = profile[i].x() <= 0.0;
    const bool pole_b = profile[i + 1].x() <= 0.0;
    for (int j = 0; j < segments; ++j) {
      const int jn = (j + 1) % segments;
      const int a = rings[i][j], b = rings[i][jn], c = rings[i + 1][jn], d = rings[i + 1][j];
      if (!pole_a) mesh.faces.push_back({a, b, c});
      if (!pole_b) mesh.faces.push_back({a, c, d});
    }
  }
  orient_by_volume(mesh);
  return mesh;
}

TriangleMesh sweep_tube(const std::vector<Vec3>& path, const Vec3& plane_normal, double radius,
                        int ring_segments, bool closed) {
  const int n = static_cast<int>(path.size());
  if (n < 2 || ring_segments < 3 || !(radius > 0.0)) throw PreconditionError("sweep_tube: bad arguments");
  const Vec3 b = plane_normal.normalized();
  TriangleMesh mesh;
  std::vector<std::vector<int>> rings(n);
  for (int i = 0; i < n; ++i) {
    Vec3 tangent;
    if (closed) {
      tangent = path[(i + 1) % n] - path[(i + n - 1) % n];
    } else {
      tangent = path[std::min(i + 1, n - 1)] - path[std::max(i - 1, 0)];
    }
    const Vec3 normal = b.cross(tangent).normalized();
    for (int k = 0; k < ring_segments; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / ring_segments;
      rings[i].push_back(static_cast<int>(mesh.vertices.size()));
      mesh.vertices.push_back(path[i] + radius * (std::cos(theta) * normal + std::sin(theta) * b));
    }
  }
  const int spans = closed ? n : n - 1;
  for (int i = 0; i < spans; ++i) {
    const int in = (i + 1) % n;
    for (int k = 0; k < ring_segments; ++k) {
      const int kn = (k + 1) % ring_segments;
      const int a = rings[i][k], bb = rings[i][kn], c = rings[in][kn], d = rings[in][k];
      mesh.faces.push_back({a, bb, c});
      mesh.faces.push_back({a, c, d});
    }
  }
  if (!closed) {
    const int start = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(path.front());
    const int end = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(path.back());
    for (int k = 0; k < ring_segments; ++k) {
      const int kn = (k + 1) % ring_segments;
      mesh.faces.push_back({start, rings[0][kn], rings[0][k]});
      mesh.faces.push_back({end, rings[n - 1][k], rings[n - 1][kn]});
    }
  }
  orient_by_volume(mesh);
  return mesh;
}

TriangleMesh extrude_region(const PlanarRegion& region, double z0, double z1) {
  TriangleMesh mesh;
  const int nv = static_cast<int>(region.vertices.size());
  for (const Vec2& v : region.vertices) mesh.vertices.emplace_back(v.x(), v.y(), z0);
  for (const Vec2& v : region.vertices) mesh.vertices.emplace_back(v.x(), v.y(), z1);

  std::set<std::pair<int, int>> directed;
  for (const Face& t : region.triangles) {
    mesh.faces.push_back({t[0] + nv, t[1] + nv, t[2] + nv});
    mesh.faces.push_back({t[0], t[2], t[1]});
    for (int k = 0; k < 3; ++k) directed.emplace(t[k], t[(k + 1) % 3]);
  }
  for (const auto& [a, b] : directed) {
    if (directed.count({b, a})) continue;
    mesh.faces.push_back({a, b, b + nv});
    mesh.faces.push_back({a, b + nv, a + nv});
  }
  orient_by_volume(mesh);
  return mesh;
}

TriangleMesh make_box(const Vec3& size) {
  const Vec3 h = 0.5 * size;
  TriangleMesh mesh;
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.emplace_back((i & 1) ? h.x() : -h.x(), (i & 2) ? h.y() : -h.y(), (i & 4) ? h.z() : -h.z());
  }
  mesh.faces = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
  orient_by_volume(mesh);
  return mesh;
}

void weld_vertices(TriangleMesh& mesh, double tol) {
  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  const auto cell = [&](double v) { return static_cast<std::int64_t>(std::floor(v / tol)); };
  const auto key = [](std::int64_t x, std::int64_t y, std::int64_t z) {
    const auto h = [](std::int64_t v) { return static_cast<std::uint64_t>(v + (1 << 20)) & 0x1fffffu; };
    return (h(x) << 42) | (h(y) << 21) | h(z);
  };
  std::vector<Vec3> kept;
  std::vector<int> remap(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& p = mesh.vertices[i];
    const std::int64_t cx = cell(p.x()), cy = cell(p.y()), cz = cell(p.z());
    int found = -1;
    for (int dx = -1; dx <= 1 && found < 0; ++dx) {
      for (int dy = -1; dy <= 1 && found < 0; ++dy) {
        for (int dz = -1; dz <= 1 && found < 0; ++dz) {
          auto it = grid.find(key(cx + dx, cy + dy, cz + dz));
          if (it == grid.end()) continue;
          for (int k : it->second) {
            if ((kept[k] - p).norm() <= tol) {
              found = k;
              break;
            }
          }
        }
      }
    }
    if (found < 0) {
      found = static_cast<int>(kept.size());
      kept.push_back(p);
      grid[key(cx, cy, cz)].push_back(found);
    }
    remap[i] = found;
  }
  std::vector<Face> faces;
  for (Face f : mesh.faces) {
    for (int& k : f) k = remap[k];
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) continue;
    faces.push_back(f);
  }
  mesh.vertices = std::move(kept);
  mesh.faces = std::move(faces);
  mesh.update_normals();
}

TriangleMesh merge_meshes(const std::vector<TriangleMesh>& parts) {
  TriangleMesh out;
  for (const TriangleMesh& part : parts) {
    const int offset = static_cast<int>(out.vertices.size());
    out.vertices.insert(out.vertices.end(), part.vertices.begin(), part.vertices.end());
    for (Face f : part.faces) {
      for (int& k : f) k += offset;
      out.faces.push_back(f);
    }
  }
  out.update_normals();
  return out;
}

void orient_by_volume(TriangleMesh& mesh) {
  if (signed_volume(mesh) < 0.0) {
    for (Face& f : mesh.faces) std::swap(f[1], f[2]);
  }
  mesh.update_normals();
}

TriangleMesh capsule_mesh(const Vec3& a, const Vec3& b, double radius, int segments) {
  const double length = (b - a).norm();
  const int half = std::max(2, segments / 2);
  std::vector<Vec2> profile;
  profile.emplace_back(0.0, -radius);
  for (int i = 1; i < half; ++i) {
    const double t = -0.5 * std::numbers::pi + 0.5 * std::numbers::pi * i / half;
    profile.emplace_back(radius * std::cos(t), radius * std::sin(t));
  }
  profile.emplace_back(radius, 0.0);
  if (length > 0.0) profile.emplace_back(radius, length);
  for (int i = 1; i < half; ++i) {
    const double t = 0.5 * std::numbers::pi * i / half;
    profile.emplace_back(radius * std::cos(t), length + radius * std::sin(t));
  }
  profile.emplace_back(0.0, length + radius);
  TriangleMesh mesh = revolve_profile(profile, segments);

  const Vec3 axis = length > 0.0 ? Vec3((b - a) / length) : Vec3::UnitZ();
  const Mat3 rot = Eigen::Quaterniond::FromTwoVectors(Vec3::UnitZ(), axis).toRotationMatrix();
  for (Vec3& v : mesh.vertices) v = a + rot * v;
  mesh.update_normals();
  return mesh;
}

TriangleMesh sphere_mesh(const Vec3& center, double radius, int segments) {
  return capsule_mesh(center, center, radius, segments);
}

}  // namespace gbh
