#include "gbh/gripper.hpp"

#include "gbh/mesh_builders.hpp"

#include <algorithm>
#include <cmath>

namespace gbh {

void GripperModel::validate() const {
  const auto fail = [](const char* field, const char* what) {
    throw PreconditionError(std::string("gripper.") + field + " " + what);
  };
  const auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (!positive(l_f)) fail("l_f", "must be positive");
  if (!positive(l_w)) fail("l_w", "must be positive");
  if (!positive(l_h) || !(l_h < l_w)) fail("l_h", "must be in (0, l_w)");
  if (!positive(l_b)) fail("l_b", "must be positive");
  if (!positive(rod_radius)) fail("rod_radius", "must be positive");
  if (!positive(slab_half_thickness)) fail("slab_half_thickness", "must be positive");
  if (!(opening >= 0.0 && opening <= l_w)) fail("opening", "must be in [0, l_w]");
}

GripperFrame key_points(const GripperModel& model, double w) {
  GripperFrame f;
  f.p4 = Vec3(-w / 2, 0.0, 0.0);
  f.p2 = Vec3(-w / 2, 0.0, model.l_f);
  f.p5 = Vec3(w / 2, 0.0, 0.0);
  f.p3 = Vec3(w / 2, 0.0, model.l_f);
  f.p1 = Vec3(w / 2 - model.l_h, 0.0, model.l_f);
  f.p6 = Vec3(0.0, 0.0, -model.l_b);
  f.p7 = Vec3::Zero();
  f.p_M = 0.5 * (f.p1 + f.p2);
  f.n1 = Vec3(0.0, 0.0, -1.0);
  f.n2 = Vec3(-1.0, 0.0, 0.0);
  return f;
}

GripperFrame key_points(const GripperModel& model) { return key_points(model, model.opening); }

double point_segment_distance_sq(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).squaredNorm();
}

std::vector<Capsule> collision_volume(const GripperModel& model) {
  const GripperFrame f = key_points(model);
  const double r = model.rod_radius;
  const double hand_r = model.l_w / 2;
  return {
      {f.p4, f.p2, r},
      {f.p5, f.p3, r},
      {f.p3, f.p1, r},
      {f.p4, f.p5, r},
      {Vec3(0.0, 0.0, -hand_r), Vec3(0.0, 0.0, -std::max(model.l_b, hand_r)), hand_r},
  };
}

bool point_in_volume(const std::vector<Capsule>& volume, const Vec3& p) {
  return std::any_of(volume.begin(), volume.end(), [&](const Capsule& c) { return contains(c, p); });
}

std::vector<int> slice_caged_indices(const GripperModel& model, const RigidTransform& pose,
                                     const SurfaceCloud& cloud) {
  const RigidTransform inv = pose.inverse();
  const double half_w = model.l_w / 2;
  std::vector<int> out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3 q = inv.apply(cloud.points[i]);
    if (std::abs(q.y()) <= model.slab_half_thickness && q.x() >= -half_w && q.x() <= half_w &&
        q.z() >= 0.0 && q.z() <= model.l_f) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

std::vector<Vec3> slice_caged_points(const GripperModel& model, const RigidTransform& pose,
                                     const SurfaceCloud& cloud) {
  std::vector<Vec3> out;
  for (int i : slice_caged_indices(model, pose, cloud)) out.push_back(cloud.points[i]);
  return out;
}

TriangleMesh gripper_mesh(const GripperModel& model, const RigidTransform& pose, int segments) {
  std::vector<TriangleMesh> parts;
  for (const Capsule& c : collision_volume(model)) {
    parts.push_back(capsule_mesh(pose.apply(c.a), pose.apply(c.b), c.radius, segments));
  }
  return merge_meshes(parts);
}

}  // namespace gbh
