#include "gbh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gbh {

double TriangleMesh::face_area(std::size_t face) const {
  const Vec3 a = corner(face, 0);
  return 0.5 * (corner(face, 1) - a).cross(corner(face, 2) - a).norm();
}

Vec3 TriangleMesh::face_centroid(std::size_t face) const {
  return (corner(face, 0) + corner(face, 1) + corner(face, 2)) / 3.0;
}

void TriangleMesh::update_normals() {
  normals.resize(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Vec3 a = corner(f, 0);
    const Vec3 n = (corner(f, 1) - a).cross(corner(f, 2) - a);
    const double len = n.norm();
    normals[f] = len > 0.0 ? Vec3(n / len) : Vec3::Zero();
  }
}

double TriangleMesh::surface_area() const {
  double area = 0.0;
  for (std::size_t f = 0; f < faces.size(); ++f) area += face_area(f);
  return area;
}

std::size_t remove_degenerate_faces(TriangleMesh& mesh) {
  const AxisAlignedBox box = bounding_box(mesh.vertices);
  const double scale = box.valid() ? box.extent().norm() : 1.0;
  // Area threshold relative to the mesh scale; absolute zero for a point mesh.
  const double min_double_area = 1e-14 * scale * scale;

  std::vector<Face> kept;
  kept.reserve(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) continue;
    const Vec3 a = mesh.vertices[face[0]];
    const double twice_area =
        (mesh.vertices[face[1]] - a).cross(mesh.vertices[face[2]] - a).norm();
    if (!(twice_area > min_double_area)) continue;
    kept.push_back(face);
  }
  const std::size_t dropped = mesh.faces.size() - kept.size();
  mesh.faces = std::move(kept);
  mesh.update_normals();
  return dropped;
}

void validate_mesh(const TriangleMesh& mesh) {
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (!mesh.vertices[i].allFinite()) {
      throw PreconditionError("vertex " + std::to_string(i) + " is not finite");
    }
  }
  const int nv = static_cast<int>(mesh.vertices.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    for (int k : mesh.faces[f]) {
      if (k < 0 || k >= nv) {
        throw PreconditionError("face " + std::to_string(f) + " references vertex " +
                                std::to_string(k) + " (vertex count " + std::to_string(nv) + ")");
      }
    }
  }
  if (mesh.normals.size() != mesh.faces.size()) {
    throw PreconditionError("normals not computed for every face");
  }
  for (std::size_t f = 0; f < mesh.normals.size(); ++f) {
    if (std::abs(mesh.normals[f].norm() - 1.0) > 1e-9) {
      throw PreconditionError("face " + std::to_string(f) + " is degenerate");
    }
  }
}

AxisAlignedBox bounding_box(const std::vector<Vec3>& points) {
  AxisAlignedBox box;
  for (const Vec3& p : points) box.extend(p);
  return box;
}

RigidTransform RigidTransform::inverse() const {
  RigidTransform inv;
  inv.rotation = rotation.transpose();
  inv.translation = -(inv.rotation * translation);
  return inv;
}

RigidTransform RigidTransform::operator*(const RigidTransform& rhs) const {
  RigidTransform out;
  out.rotation = rotation * rhs.rotation;
  out.translation = rotation * rhs.translation + translation;
  return out;
}

bool RigidTransform::is_valid(double tol) const {
  return rotation.allFinite() && translation.allFinite() && rotation_error(rotation) <= tol;
}

double rotation_error(const Mat3& rotation) {
  const double ortho = (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff();
  return std::max(ortho, std::abs(rotation.determinant() - 1.0));
}

TriangleMesh transformed(const TriangleMesh& mesh, const RigidTransform& t) {
  TriangleMesh out = mesh;
  for (Vec3& v : out.vertices) v = t.apply(v);
  out.update_normals();
  return out;
}

SurfaceCloud transformed(const SurfaceCloud& cloud, const RigidTransform& t) {
  SurfaceCloud out;
  out.points.reserve(cloud.size());
  out.normals.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out.points.push_back(t.apply(cloud.points[i]));
    out.normals.push_back(t.apply_direction(cloud.normals[i]));
  }
  return out;
}

Vec3 any_perpendicular(const Vec3& n) {
  // Cross with the world axis least aligned with n.
  const Vec3 a = n.cwiseAbs();
  Vec3 ref = Vec3::UnitX();
  if (a.y() <= a.x() && a.y() <= a.z()) {
    ref = Vec3::UnitY();
  } else if (a.z() <= a.x() && a.z() <= a.y()) {
    ref = Vec3::UnitZ();
  }
  return n.cross(ref).normalized();
}

double angle_between(const Vec3& a, const Vec3& b) {
  const double c = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace gbh
