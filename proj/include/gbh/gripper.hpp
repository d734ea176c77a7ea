// Hook-augmented parallel-jaw gripper: key points, collision capsules and the
// slab slice between the fingers.
#pragma once

#include "gbh/geometry.hpp"

#include <vector>

namespace gbh {

/// Lengths in meters. `opening` is the jaw separation used for the collision
/// volume and the pose key points; slicing always uses the full opening l_w.
struct GripperModel {
  double l_f = 0.08;
  double l_w = 0.08;
  double l_h = 0.03;
  double l_b = 0.06;
  double rod_radius = 0.005;
  double slab_half_thickness = 0.008;
  double opening = 0.08;

  /// Throws PreconditionError naming the offending field ("gripper.<name>").
  void validate() const;
};

/// Gripper-local frame: origin at the palm center, z toward the fingertips,
/// x from the straight finger to the L finger.
struct GripperFrame {
  Vec3 p1, p2, p3, p4, p5, p6, p7;
  Vec3 p_M;
  Vec3 n1;  // palm -> wrist
  Vec3 n2;  // L-finger elbow -> rod tip
};

GripperFrame key_points(const GripperModel& model);
GripperFrame key_points(const GripperModel& model, double opening);

struct Capsule {
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  double radius = 0.0;
};

double point_segment_distance_sq(const Vec3& p, const Vec3& a, const Vec3& b);

/// Strict containment: squared distance to the axis below radius squared.
inline bool contains(const Capsule& cap, const Vec3& p) {
  return point_segment_distance_sq(p, cap.a, cap.b) < cap.radius * cap.radius;
}

/// Fingers p4-p2 and p5-p3, rod p3-p1, palm p4-p5 (all rod_radius), plus a
/// hand capsule of radius l_w/2 along the wrist axis whose end cap sits
/// flush with the palm plane.
std::vector<Capsule> collision_volume(const GripperModel& model);

bool point_in_volume(const std::vector<Capsule>& volume, const Vec3& p);

/// Indices of cloud points inside the slab |y| <= slab_half_thickness,
/// |x| <= l_w / 2, 0 <= z <= l_f in gripper coordinates.
std::vector<int> slice_caged_indices(const GripperModel& model, const RigidTransform& pose,
                                     const SurfaceCloud& cloud);
std::vector<Vec3> slice_caged_points(const GripperModel& model, const RigidTransform& pose,
                                     const SurfaceCloud& cloud);

/// Collision capsules tessellated and posed in world coordinates.
TriangleMesh gripper_mesh(const GripperModel& model, const RigidTransform& pose, int segments = 12);

}  // namespace gbh
