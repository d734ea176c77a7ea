#include "gbh/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gbh {

std::optional<double> intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                                         const Vec3& b, const Vec3& c) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 p = dir.cross(e2);
  const double det = e1.dot(p);
  if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
  const double inv = 1.0 / det;
  const Vec3 s = origin - a;
  const double u = s.dot(p) * inv;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  const Vec3 q = s.cross(e1);
  const double v = dir.dot(q) * inv;
  if (v < 0.0 || u + v > 1.0) return std::nullopt;
  return e2.dot(q) * inv;
}

TriangleBvh::TriangleBvh(const TriangleMesh& mesh, int leaf_size) {
  const std::size_t n = mesh.faces.size();
  tri_a_.reserve(n);
  tri_b_.reserve(n);
  tri_c_.reserve(n);
  std::vector<Vec3> centroids;
  centroids.reserve(n);
  for (std::size_t f = 0; f < n; ++f) {
    tri_a_.push_back(mesh.corner(f, 0));
    tri_b_.push_back(mesh.corner(f, 1));
    tri_c_.push_back(mesh.corner(f, 2));
    centroids.push_back(mesh.face_centroid(f));
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  if (n == 0) return;
  nodes_.reserve(2 * n / std::max(1, leaf_size) + 2);
  build(0, static_cast<int>(n), 1, std::max(1, leaf_size), centroids);
}

int TriangleBvh::build(int first, int count, int depth, int leaf_size, const std::vector<Vec3>& centroids) {
  depth_ = std::max(depth_, depth);
  const int index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();

  AxisAlignedBox box;
  AxisAlignedBox centroid_box;
  for (int i = first; i < first + count; ++i) {
    const int t = order_[i];
    box.extend(tri_a_[t]);
    box.extend(tri_b_[t]);
    box.extend(tri_c_[t]);
    centroid_box.extend(centroids[t]);
  }
  // Pad so rounding in the slab test can never cull a reported triangle hit.
  const double pad = 1e-9 * box.extent().norm() + 1e-12;
  box.min.array() -= pad;
  box.max.array() += pad;
  nodes_[index].box = box;

  const Vec3 spread = centroid_box.extent();
  int axis = 0;
  if (spread.y() > spread[axis]) axis = 1;
  if (spread.z() > spread[axis]) axis = 2;

  if (count <= leaf_size || spread[axis] <= 0.0) {
    nodes_[index].first = first;
    nodes_[index].count = count;
    return index;
  }

  const int mid = first + count / 2;
  std::nth_element(order_.begin() + first, order_.begin() + mid, order_.begin() + first + count,
                   [&](int l, int r) {
                     if (centroids[l][axis] != centroids[r][axis]) return centroids[l][axis] < centroids[r][axis];
                     return l < r;
                   });
  const int left = build(first, mid - first, depth + 1, leaf_size, centroids);
  const int right = build(mid, first + count - mid, depth + 1, leaf_size, centroids);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

namespace {

// Entry distance of the ray into the box, or +inf when it misses [tmin, tmax].
double slab_entry(const AxisAlignedBox& box, const Vec3& o, const Vec3& d, double tmin, double tmax) {
  for (int k = 0; k < 3; ++k) {
    if (d[k] == 0.0) {
      if (o[k] < box.min[k] || o[k] > box.max[k]) return std::numeric_limits<double>::infinity();
      continue;
    }
    double t1 = (box.min[k] - o[k]) / d[k];
    double t2 = (box.max[k] - o[k]) / d[k];
    if (t1 > t2) std::swap(t1, t2);
    tmin = std::max(tmin, t1);
    tmax = std::min(tmax, t2);
    if (tmin > tmax) return std::numeric_limits<double>::infinity();
  }
  return tmin;
}

}  // namespace

std::optional<RayHit> TriangleBvh::first_hit(const Vec3& origin, const Vec3& dir, double min_distance,
                                             double max_distance) const {
  if (nodes_.empty()) return std::nullopt;
  double best_t = max_distance;
  int best_face = -1;

  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    // Closed interval: ties at best_t must still be visited for the face-index tie-break.
    if (slab_entry(node.box, origin, dir, min_distance, best_t) > best_t) continue;
    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int f = order_[i];
        const auto t = intersect_triangle(origin, dir, tri_a_[f], tri_b_[f], tri_c_[f]);
        if (!t || !(*t > min_distance) || *t > best_t) continue;
        if (*t < best_t || best_face < 0 || f < best_face) {
          best_t = *t;
          best_face = f;
        }
      }
      continue;
    }
    stack[top++] = node.right;
    stack[top++] = node.left;
  }
  if (best_face < 0) return std::nullopt;
  return RayHit{origin + best_t * dir, best_t, best_face};
}

bool TriangleBvh::any_hit(const Vec3& origin, const Vec3& dir, double min_distance, double max_distance) const {
  if (nodes_.empty()) return false;
  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (slab_entry(node.box, origin, dir, min_distance, max_distance) > max_distance) continue;
    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int f = order_[i];
        const auto t = intersect_triangle(origin, dir, tri_a_[f], tri_b_[f], tri_c_[f]);
        if (t && *t > min_distance && *t <= max_distance) return true;
      }
      continue;
    }
    stack[top++] = node.right;
    stack[top++] = node.left;
  }
  return false;
}

std::optional<RayHit> ray_first_hit(const TriangleBvh& bvh, const Vec3& origin, const Vec3& direction) {
  return bvh.first_hit(origin, direction, kRayEpsilon);
}

}  // namespace gbh
