// Parallel and vertical grasp candidates from hang records, pruned by the
// number of cloud points inside the gripper.
#pragma once

#include "gbh/geometry.hpp"
#include "gbh/gripper.hpp"
#include "gbh/hangability.hpp"
#include "gbh/point_index.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace gbh {

enum class GraspKind { Parallel = 0, Vertical = 1 };

const char* to_string(GraspKind kind);

/// Filled in by scoring. beta is absent when the hang record has m = 1.
struct ScoreBreakdown {
  double alpha = 0.0;
  double s_alpha = 0.0;
  std::optional<double> beta;
  double s_beta = 0.0;
  double m = 0.0;
  double s_total = 0.0;
};

struct GraspCandidate {
  RigidTransform pose;  // gripper frame -> world
  GraspKind kind = GraspKind::Parallel;
  int hang_index = 0;
  int contact_index = 0;
  Vec3 contact = Vec3::Zero();
  // Parallel: (s_rod, s_app). Vertical: (s_fin, s_rod). sign_index orders
  // (+,+), (+,-), (-,+), (-,-) as 0..3.
  std::array<int, 2> signs = {1, 1};
  int sign_index = 0;
  std::optional<Vec3> q_m;
  int n_collisions = 0;
  std::optional<ScoreBreakdown> score;
};

struct GenConfig {
  double d1 = 0.01;
  double d2 = 0.0;
  double p_theta = 0.95;
  int p_c = 10;
  Vec3 ground_normal = Vec3::UnitZ();
  Vec3 gravity_dir = -Vec3::UnitZ();

  /// Throws PreconditionError naming the offending field ("gen.<name>").
  void validate() const;
};

/// Sign pairs in sign_index order.
inline constexpr std::array<std::array<int, 2>, 4> kSignPairs = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

/// Rod along +-v, approach along +-unit(c - h), p_M on c.
std::vector<GraspCandidate> gen_parallel(const HangRecord& hang, int hang_index, const GripperFrame& frame);

// Vertical placement, one step at a time.
Vec3 vertical_q1(const Vec3& h, const Vec3& c, double d1);
/// Point of Q farthest along v from q1 (first one on ties). Q must be non-empty.
Vec3 farthest_along(const std::vector<Vec3>& q, const Vec3& q1, const Vec3& v);
/// Projection of q_f onto the line through q1 with direction v.
Vec3 project_on_line(const Vec3& q_f, const Vec3& q1, const Vec3& v);
Vec3 matching_point(const Vec3& q2, const Vec3& v, double d2);

/// Matching point for a vertical grasp with the given rotation. The trial
/// slicing pose centers the straight finger on q1; v is sign-aligned with
/// `axis` before use. Throws PreconditionError when h == c or nothing is caged.
Vec3 compute_vertical_placement(const Vec3& h, const Vec3& c, const Vec3& v, const Vec3& axis,
                                const SurfaceCloud& cloud, const GripperModel& model, const Mat3& rotation,
                                const GenConfig& cfg);

/// The finger axis for a record: the ground normal when v is within
/// acos(p_theta) of it (either sense), else v.
Vec3 vertical_finger_axis(const Vec3& v, const GenConfig& cfg);

std::vector<GraspCandidate> gen_vertical(const HangRecord& hang, int hang_index, const GripperModel& model,
                                         const SurfaceCloud& cloud, const GenConfig& cfg);

/// Number of distinct cloud points inside the posed collision volume.
int count_collisions(const RigidTransform& pose, const std::vector<Capsule>& volume, const PointIndex& index);

/// Sets cand.n_collisions; returns (keep, N_c) with keep = N_c < p_c.
std::pair<bool, int> check_collision(GraspCandidate& cand, const PointIndex& index, const GripperModel& model,
                                     const GenConfig& cfg);
std::pair<bool, int> check_collision(GraspCandidate& cand, const SurfaceCloud& cloud, const GripperModel& model,
                                     const GenConfig& cfg);

/// All raw candidates (before pruning) in deterministic order:
/// hang index, kind, contact index, sign index.
std::vector<GraspCandidate> enumerate_grasps(const std::vector<HangRecord>& hangs, const SurfaceCloud& cloud,
                                             const GripperModel& model, const GenConfig& cfg);

/// Collision-free candidates, same order as enumerate_grasps.
std::vector<GraspCandidate> generate_grasps(const std::vector<HangRecord>& hangs, const SurfaceCloud& cloud,
                                            const PointIndex& index, const GripperModel& model,
                                            const GenConfig& cfg);

}  // namespace gbh
