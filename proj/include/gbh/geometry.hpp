// Core geometric value types shared by every stage of the grasp pipeline.
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <limits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbh {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for unreadable, unsupported or malformed mesh files.
class MeshIoError : public Error {
 public:
  using Error::Error;
};

// Raised when an operation's documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

using Face = std::array<int, 3>;

/// Indexed triangle mesh in meters. Face normals follow the winding
/// (counter-clockwise seen from outside) and are refreshed by
/// update_normals().
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<Vec3> normals;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t face_count() const { return faces.size(); }
  bool empty() const { return faces.empty(); }

  Vec3 corner(std::size_t face, int k) const { return vertices[faces[face][k]]; }
  double face_area(std::size_t face) const;
  Vec3 face_centroid(std::size_t face) const;

  void update_normals();
  double surface_area() const;
};

/// Removes faces with repeated indices or (near) zero area and recomputes
/// normals. Returns the number of dropped faces.
std::size_t remove_degenerate_faces(TriangleMesh& mesh);

/// Throws PreconditionError naming the first broken TriangleMesh invariant.
void validate_mesh(const TriangleMesh& mesh);

/// Oriented surface sample.
struct SurfaceCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

struct AxisAlignedBox {
  Vec3 min = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 max = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void extend(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  void extend(const AxisAlignedBox& b) {
    min = min.cwiseMin(b.min);
    max = max.cwiseMax(b.max);
  }
  bool contains(const Vec3& p, double tol = 0.0) const {
    return (p.array() >= min.array() - tol).all() && (p.array() <= max.array() + tol).all();
  }
  Vec3 center() const { return 0.5 * (min + max); }
  Vec3 extent() const { return max - min; }
  bool valid() const { return (min.array() <= max.array()).all(); }
};

AxisAlignedBox bounding_box(const std::vector<Vec3>& points);

/// Rigid motion x -> rotation * x + translation.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static RigidTransform identity() { return {}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 apply_direction(const Vec3& d) const { return rotation * d; }
  RigidTransform inverse() const;
  RigidTransform operator*(const RigidTransform& rhs) const;

  bool is_valid(double tol = 1e-9) const;
};

/// Deviation of R from SO(3): max(|R^T R - I|_max, |det R - 1|).
double rotation_error(const Mat3& rotation);

/// Applies the transform to vertices and recomputes normals.
TriangleMesh transformed(const TriangleMesh& mesh, const RigidTransform& t);
SurfaceCloud transformed(const SurfaceCloud& cloud, const RigidTransform& t);

struct MeshStats {
  Vec3 com = Vec3::Zero();
  AxisAlignedBox bbox;
  bool watertight = false;
};

// Small helpers used throughout.
inline bool lex_less(const Vec3& a, const Vec3& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  if (a.y() != b.y()) return a.y() < b.y();
  return a.z() < b.z();
}

/// Unit vector perpendicular to n (n must be non-zero).
Vec3 any_perpendicular(const Vec3& n);

/// Angle between two non-zero vectors in radians, clamped acos.
double angle_between(const Vec3& a, const Vec3& b);

}  // namespace gbh
