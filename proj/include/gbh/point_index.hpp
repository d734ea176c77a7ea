// Static k-d tree over a point set: nearest neighbour and radius queries.
#pragma once

#include "gbh/geometry.hpp"

#include <vector>

namespace gbh {

class PointIndex {
 public:
  PointIndex() = default;
  explicit PointIndex(std::vector<Vec3> points);

  struct Nearest {
    int index = -1;
    double distance = std::numeric_limits<double>::infinity();
  };

  /// Closest point; ties resolve to the lowest index. index = -1 when empty.
  Nearest nearest(const Vec3& q) const;

  /// Indices of all points with |p - q| <= radius, sorted ascending.
  std::vector<int> within(const Vec3& q, double radius) const;

  std::size_t size() const { return points_.size(); }
  const std::vector<Vec3>& points() const { return points_; }

 private:
  void build(int lo, int hi, int depth);
  void nearest_rec(int lo, int hi, int depth, const Vec3& q, Nearest& best, double& best_d2) const;
  void within_rec(int lo, int hi, int depth, const Vec3& q, double r2, std::vector<int>& out) const;

  std::vector<Vec3> points_;
  std::vector<int> order_;  // implicit balanced tree: median of [lo, hi) is the node
};

}  // namespace gbh
