// Bounding volume hierarchy over a triangle mesh for first-hit ray queries.
#pragma once

#include "gbh/geometry.hpp"

#include <optional>
#include <vector>

namespace gbh {

/// Self-intersection offset: hits closer than this are ignored.
inline constexpr double kRayEpsilon = 1e-6;

struct RayHit {
  Vec3 point;
  double distance = 0.0;
  int face = -1;
};

/// Moller-Trumbore ray/triangle test; returns the ray parameter t of the hit.
std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                                         const Vec3& b, const Vec3& c);

/// Immutable after construction; queries are const and thread-safe. Owns a
/// copy of the triangle corners, so it can outlive the source mesh.
///
/// The reported hit is the lexicographic minimum of (distance, face index)
/// over all triangles with distance > min_distance, so results match a
/// linear scan with the same triangle test bit for bit.
class TriangleBvh {
 public:
  TriangleBvh() = default;
  explicit TriangleBvh(const TriangleMesh& mesh, int leaf_size = 4);

  std::optional<RayHit> first_hit(const Vec3& origin, const Vec3& dir,
                                  double min_distance = kRayEpsilon,
                                  double max_distance = std::numeric_limits<double>::infinity()) const;

  bool any_hit(const Vec3& origin, const Vec3& dir, double min_distance = kRayEpsilon,
               double max_distance = std::numeric_limits<double>::infinity()) const;

  std::size_t triangle_count() const { return tri_a_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  int depth() const { return depth_; }

 private:
  struct Node {
    AxisAlignedBox box;
    int left = -1;   // child index, or -1 for a leaf
    int right = -1;
    int first = 0;   // leaf range in order_
    int count = 0;
  };

  int build(int first, int count, int depth, int leaf_size, const std::vector<Vec3>& centroids);

  std::vector<Vec3> tri_a_, tri_b_, tri_c_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int depth_ = 0;
};

/// Nearest hit with distance > kRayEpsilon along a unit direction.
std::optional<RayHit> ray_first_hit(const TriangleBvh& bvh, const Vec3& origin, const Vec3& direction);

}  // namespace gbh
