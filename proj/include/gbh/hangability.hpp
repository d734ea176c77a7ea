// Detection of through-hole structures an object can hang from: hanging
// position c, direction v, ray contacts H, completeness m, open direction a.
#pragma once

#include "gbh/bvh.hpp"
#include "gbh/geometry.hpp"
#include "gbh/point_index.hpp"
#include "gbh/scene.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gbh {

struct HangConfig {
  std::size_t sample_count = 4000;
  double normal_cone_deg = 30.0;
  double cluster_radius = 0.01;
  int segment_samples = 50;
  int plane_count = 200;
  int rays_per_plane = 72;
  double min_m = 0.5;
  double min_clearance = 0.005;

  /// Throws PreconditionError naming the offending field ("hang.<name>").
  void validate() const;
};

struct HangRecord {
  Vec3 c = Vec3::Zero();
  Vec3 v = Vec3::UnitZ();
  std::vector<Vec3> contacts;
  double m = 0.0;
  std::optional<Vec3> a;
  Vec3 source_contact = Vec3::Zero();
  double clearance = 0.0;
  int plane_index = -1;
};

struct ContactCluster {
  Vec3 representative = Vec3::Zero();
  int representative_index = -1;   // into the cloud
  std::vector<int> members;         // cloud indices, ascending
};

/// Cloud points whose normal is within normal_cone_deg of the direction to
/// the center of mass, grouped by single linkage at cluster_radius.
/// Clusters are sorted by representative (lexicographic x, y, z).
std::vector<ContactCluster> find_candidate_contacts(const SurfaceCloud& cloud, const MeshStats& stats,
                                                    const HangConfig& cfg);

struct HangPosition {
  Vec3 c = Vec3::Zero();
  double clearance = 0.0;
};

/// Samples the open segment from `contact` toward the center of mass, cut
/// short at the first surface it crosses, and returns the sample farthest
/// from the cloud (earliest sample wins ties).
HangPosition select_hang_position(const Vec3& contact, const ObjectScene& scene, const HangConfig& cfg);

struct HangDirection {
  Vec3 v = Vec3::UnitZ();
  double m = 0.0;
  std::optional<Vec3> a;
  std::vector<Vec3> contacts;
  int plane_index = -1;
  int hits = 0;
};

/// `count` unit vectors on the upper hemisphere, Fibonacci-spiral layout,
/// the first one being +z.
std::vector<Vec3> fibonacci_hemisphere(int count);

/// Ray k of the fan in the plane with normal n: cos(t) e1 + sin(t) e2 with
/// t = 2 pi k / rays, e1 = any_perpendicular(n), e2 = n x e1.
std::vector<Vec3> ray_fan(const Vec3& n, int rays);

/// Flips v so it points up (+z), breaking z = 0 ties by +x then +y.
Vec3 canonicalize_direction(const Vec3& v);

/// Picks the plane whose ray fan from c hits the mesh most often. Equal hit
/// counts prefer the smaller summed hit distance, then the lower plane index.
/// Throws PreconditionError("all planes score zero hits") when nothing is hit.
HangDirection detect_hang_direction(const Vec3& c, const TriangleBvh& bvh, const HangConfig& cfg);

/// True iff both rays from c along +v and -v leave the mesh without a hit.
bool through_hole_filter(const Vec3& c, const Vec3& v, const TriangleBvh& bvh);

std::vector<HangRecord> detect_hangability(const ObjectScene& scene, const HangConfig& cfg);
std::vector<HangRecord> detect_hangability(const TriangleMesh& mesh, const HangConfig& cfg, std::uint64_t seed);

}  // namespace gbh
