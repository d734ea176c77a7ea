#include "gbh/point_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gbh {

PointIndex::PointIndex(std::vector<Vec3> points) : points_(std::move(points)) {
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0);
  build(0, static_cast<int>(order_.size()), 0);
}

void PointIndex::build(int lo, int hi, int depth) {
  if (hi - lo <= 1) return;
  const int axis = depth % 3;
  const int mid = lo + (hi - lo) / 2;
  std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi, [&](int a, int b) {
    if (points_[a][axis] != points_[b][axis]) return points_[a][axis] < points_[b][axis];
    return a < b;
  });
  build(lo, mid, depth + 1);
  build(mid + 1, hi, depth + 1);
}

PointIndex::Nearest PointIndex::nearest(const Vec3& q) const {
  Nearest best;
  double best_d2 = std::numeric_limits<double>::infinity();
  nearest_rec(0, static_cast<int>(order_.size()), 0, q, best, best_d2);
  if (best.index >= 0) best.distance = std::sqrt(best_d2);
  return best;
}

void PointIndex::nearest_rec(int lo, int hi, int depth, const Vec3& q, Nearest& best, double& best_d2) const {
  if (lo >= hi) return;
  const int mid = lo + (hi - lo) / 2;
  const int idx = order_[mid];
  const double d2 = (points_[idx] - q).squaredNorm();
  if (d2 < best_d2 || (d2 == best_d2 && idx < best.index)) {
    best_d2 = d2;
    best.index = idx;
  }
  const int axis = depth % 3;
  const double diff = q[axis] - points_[idx][axis];
  const bool left_first = diff <= 0.0;
  if (left_first) {
    nearest_rec(lo, mid, depth + 1, q, best, best_d2);
    if (diff * diff <= best_d2) nearest_rec(mid + 1, hi, depth + 1, q, best, best_d2);
  } else {
    nearest_rec(mid + 1, hi, depth + 1, q, best, best_d2);
    if (diff * diff <= best_d2) nearest_rec(lo, mid, depth + 1, q, best, best_d2);
  }
}

std::vector<int> PointIndex::within(const Vec3& q, double radius) const {
  std::vector<int> out;
  if (radius < 0.0) return out;
  within_rec(0, static_cast<int>(order_.size()), 0, q, radius * radius, out);
  std::sort(out.begin(), out.end());
  return out;
}

void PointIndex::within_rec(int lo, int hi, int depth, const Vec3& q, double r2, std::vector<int>& out) const {
  if (lo >= hi) return;
  const int mid = lo + (hi - lo) / 2;
  const int idx = order_[mid];
  if ((points_[idx] - q).squaredNorm() <= r2) out.push_back(idx);
  const int axis = depth % 3;
  const double diff = q[axis] - points_[idx][axis];
  if (diff <= 0.0 || diff * diff <= r2) within_rec(lo, mid, depth + 1, q, r2, out);
  if (diff >= 0.0 || diff * diff <= r2) within_rec(mid + 1, hi, depth + 1, q, r2, out);
}

}  // namespace gbh
