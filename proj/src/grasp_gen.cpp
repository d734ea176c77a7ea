#include "gbh/grasp_gen.hpp"

#include <algorithm>
#include <cmath>

namespace gbh {

const char* to_string(GraspKind kind) { return kind == GraspKind::Parallel ? "parallel" : "vertical"; }

void GenConfig::validate() const {
  const auto fail = [](const char* field, const char* what) {
    throw PreconditionError(std::string("gen.") + field + " " + what);
  };
  if (!(d1 > 0.0) || !std::isfinite(d1)) fail("d1", "must be positive");
  if (!(d2 >= 0.0) || !std::isfinite(d2)) fail("d2", "must be non-negative");
  if (!(p_theta > 0.0 && p_theta <= 1.0)) fail("p_theta", "must be in (0, 1]");
  if (p_c < 0) fail("p_c", "must be non-negative");
  if (!ground_normal.allFinite() || std::abs(ground_normal.norm() - 1.0) > 1e-6) fail("ground_normal", "must be a unit vector");
  if (!gravity_dir.allFinite() || std::abs(gravity_dir.norm() - 1.0) > 1e-6) fail("gravity_dir", "must be a unit vector");
}

namespace {

Mat3 frame_from_axes(const Vec3& x, const Vec3& z) {
  Mat3 r;
  r.col(0) = x;
  r.col(1) = z.cross(x);
  r.col(2) = z;
  return r;
}

}  // namespace

std::vector<GraspCandidate> gen_parallel(const HangRecord& hang, int hang_index, const GripperFrame& frame) {
  if (hang.contacts.empty()) throw PreconditionError("gen_parallel: hang record has no contacts");
  std::vector<GraspCandidate> out;
  const Vec3& v = hang.v;
  for (std::size_t j = 0; j < hang.contacts.size(); ++j) {
    const Vec3& h = hang.contacts[j];
    Vec3 u = hang.c - h;
    u -= u.dot(v) * v;
    const double len = u.norm();
    if (len < 1e-9) continue;
    u /= len;
    for (int s = 0; s < 4; ++s) {
      const auto [s_rod, s_app] = kSignPairs[s];
      GraspCandidate cand;
      cand.kind = GraspKind::Parallel;
      cand.hang_index = hang_index;
      cand.contact_index = static_cast<int>(j);
      cand.contact = h;
      cand.signs = kSignPairs[s];
      cand.sign_index = s;
      cand.pose.rotation = frame_from_axes(s_rod * v, s_app * u);
      cand.pose.translation = hang.c - cand.pose.rotation * frame.p_M;
      out.push_back(std::move(cand));
    }
  }
  return out;
}

Vec3 vertical_q1(const Vec3& h, const Vec3& c, double d1) {
  const Vec3 d = c - h;
  const double len = d.norm();
  if (!(len > 0.0)) throw PreconditionError("vertical placement: contact coincides with hanging position");
  return h + d1 * (d / len);
}

Vec3 farthest_along(const std::vector<Vec3>& q, const Vec3& q1, const Vec3& v) {
  if (q.empty()) throw PreconditionError("vertical placement: empty caged set");
  std::size_t best = 0;
  double best_s = (q[0] - q1).dot(v);
  for (std::size_t i = 1; i < q.size(); ++i) {
    const double s = (q[i] - q1).dot(v);
    if (s > best_s) {
      best_s = s;
      best = i;
    }
  }
  return q[best];
}

Vec3 project_on_line(const Vec3& q_f, const Vec3& q1, const Vec3& v) { return q1 + (q_f - q1).dot(v) * v; }

Vec3 matching_point(const Vec3& q2, const Vec3& v, double d2) { return q2 + d2 * v; }

Vec3 compute_vertical_placement(const Vec3& h, const Vec3& c, const Vec3& v, const Vec3& axis,
                                const SurfaceCloud& cloud, const GripperModel& model, const Mat3& rotation,
                                const GenConfig& cfg) {
  const Vec3 q1 = vertical_q1(h, c, cfg.d1);
  const Vec3 vs = v.dot(axis) >= 0.0 ? v : Vec3(-v);
  const GripperFrame wide = key_points(model, model.l_w);
  RigidTransform trial;
  trial.rotation = rotation;
  trial.translation = q1 - rotation * (0.5 * (wide.p4 + wide.p2));
  const std::vector<Vec3> q = slice_caged_points(model, trial, cloud);
  const Vec3 q_f = farthest_along(q, q1, vs);
  return matching_point(project_on_line(q_f, q1, vs), vs, cfg.d2);
}

Vec3 vertical_finger_axis(const Vec3& v, const GenConfig& cfg) {
  return std::abs(v.dot(cfg.ground_normal)) > cfg.p_theta ? cfg.ground_normal : v;
}

std::vector<GraspCandidate> gen_vertical(const HangRecord& hang, int hang_index, const GripperModel& model,
                                         const SurfaceCloud& cloud, const GenConfig& cfg) {
  if (hang.contacts.empty()) throw PreconditionError("gen_vertical: hang record has no contacts");
  const GripperFrame frame = key_points(model);
  const Vec3 f = vertical_finger_axis(hang.v, cfg);
  std::vector<GraspCandidate> out;
  for (std::size_t j = 0; j < hang.contacts.size(); ++j) {
    const Vec3& h = hang.contacts[j];
    if ((hang.c - h).norm() <= 0.0) continue;
    Vec3 u = hang.c - h;
    u -= u.dot(f) * f;
    const double len = u.norm();
    if (len < 1e-9) continue;
    u /= len;
    for (int s = 0; s < 4; ++s) {
      const auto [s_fin, s_rod] = kSignPairs[s];
      const Vec3 axis = s_fin * f;
      const Mat3 rot = frame_from_axes(-s_rod * u, axis);
      Vec3 q_m;
      try {
        q_m = compute_vertical_placement(h, hang.c, hang.v, axis, cloud, model, rot, cfg);
      } catch (const PreconditionError&) {
        continue;
      }
      GraspCandidate cand;
      cand.kind = GraspKind::Vertical;
      cand.hang_index = hang_index;
      cand.contact_index = static_cast<int>(j);
      cand.contact = h;
      cand.signs = kSignPairs[s];
      cand.sign_index = s;
      cand.q_m = q_m;
      cand.pose.rotation = rot;
      cand.pose.translation = q_m - rot * frame.p2;
      out.push_back(std::move(cand));
    }
  }
  return out;
}

int count_collisions(const RigidTransform& pose, const std::vector<Capsule>& volume, const PointIndex& index) {
  std::vector<int> inside;
  for (const Capsule& local : volume) {
    Capsule cap{pose.apply(local.a), pose.apply(local.b), local.radius};
    const Vec3 mid = 0.5 * (cap.a + cap.b);
    const double reach = 0.5 * (cap.b - cap.a).norm() + cap.radius;
    for (int i : index.within(mid, reach)) {
      if (contains(cap, index.points()[i])) inside.push_back(i);
    }
  }
  std::sort(inside.begin(), inside.end());
  return static_cast<int>(std::unique(inside.begin(), inside.end()) - inside.begin());
}

std::pair<bool, int> check_collision(GraspCandidate& cand, const PointIndex& index, const GripperModel& model,
                                     const GenConfig& cfg) {
  cand.n_collisions = count_collisions(cand.pose, collision_volume(model), index);
  return {cand.n_collisions < cfg.p_c, cand.n_collisions};
}

std::pair<bool, int> check_collision(GraspCandidate& cand, const SurfaceCloud& cloud, const GripperModel& model,
                                     const GenConfig& cfg) {
  return check_collision(cand, PointIndex(cloud.points), model, cfg);
}

std::vector<GraspCandidate> enumerate_grasps(const std::vector<HangRecord>& hangs, const SurfaceCloud& cloud,
                                             const GripperModel& model, const GenConfig& cfg) {
  model.validate();
  cfg.validate();
  const GripperFrame frame = key_points(model);
  std::vector<GraspCandidate> out;
  for (std::size_t i = 0; i < hangs.size(); ++i) {
    if (hangs[i].contacts.empty()) continue;
    for (auto& c : gen_parallel(hangs[i], static_cast<int>(i), frame)) out.push_back(std::move(c));
    for (auto& c : gen_vertical(hangs[i], static_cast<int>(i), model, cloud, cfg)) out.push_back(std::move(c));
  }
  return out;
}

std::vector<GraspCandidate> generate_grasps(const std::vector<HangRecord>& hangs, const SurfaceCloud& cloud,
                                            const PointIndex& index, const GripperModel& model,
                                            const GenConfig& cfg) {
  const std::vector<Capsule> volume = collision_volume(model);
  std::vector<GraspCandidate> kept;
  for (GraspCandidate& cand : enumerate_grasps(hangs, cloud, model, cfg)) {
    cand.n_collisions = count_collisions(cand.pose, volume, index);
    if (cand.n_collisions < cfg.p_c) kept.push_back(std::move(cand));
  }
  return kept;
}

}  // namespace gbh
