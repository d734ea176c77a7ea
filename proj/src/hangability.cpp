#include "gbh/hangability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace gbh {

void HangConfig::validate() const {
  const auto fail = [](const char* field, const char* what) {
    throw PreconditionError(std::string("hang.") + field + " " + what);
  };
  if (sample_count < 4) fail("sample_count", "must be at least 4");
  if (!(normal_cone_deg > 0.0 && normal_cone_deg < 90.0)) fail("normal_cone_deg", "must be in (0, 90)");
  if (!(cluster_radius > 0.0) || !std::isfinite(cluster_radius)) fail("cluster_radius", "must be positive");
  if (segment_samples < 1) fail("segment_samples", "must be positive");
  if (plane_count < 1) fail("plane_count", "must be positive");
  if (rays_per_plane < 1) fail("rays_per_plane", "must be positive");
  if (!(min_m >= 0.0 && min_m <= 1.0)) fail("min_m", "must be in [0, 1]");
  if (!(min_clearance > 0.0) || !std::isfinite(min_clearance)) fail("min_clearance", "must be positive");
}

namespace {

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

}  // namespace

std::vector<ContactCluster> find_candidate_contacts(const SurfaceCloud& cloud, const MeshStats& stats,
                                                    const HangConfig& cfg) {
  const double cos_cone = std::cos(cfg.normal_cone_deg * std::numbers::pi / 180.0);
  std::vector<int> members;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3 d = stats.com - cloud.points[i];
    const double len = d.norm();
    if (!(len > 0.0)) continue;
    if (cloud.normals[i].dot(d) >= cos_cone * len) members.push_back(static_cast<int>(i));
  }
  if (members.empty()) return {};

  std::vector<Vec3> pts;
  pts.reserve(members.size());
  for (int i : members) pts.push_back(cloud.points[i]);
  const PointIndex index(pts);
  DisjointSets sets(static_cast<int>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int j : index.within(pts[i], cfg.cluster_radius)) sets.unite(static_cast<int>(i), j);
  }

  std::vector<std::vector<int>> groups(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) groups[sets.find(static_cast<int>(i))].push_back(static_cast<int>(i));

  std::vector<ContactCluster> clusters;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    Vec3 centroid = Vec3::Zero();
    for (int k : g) centroid += pts[k];
    centroid /= static_cast<double>(g.size());
    int best = g.front();
    double best_d = (pts[best] - centroid).squaredNorm();
    for (int k : g) {
      const double d = (pts[k] - centroid).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    ContactCluster cl;
    cl.representative = pts[best];
    cl.representative_index = members[best];
    for (int k : g) cl.members.push_back(members[k]);
    clusters.push_back(std::move(cl));
  }
  std::sort(clusters.begin(), clusters.end(), [](const ContactCluster& a, const ContactCluster& b) {
    if (a.representative != b.representative) return lex_less(a.representative, b.representative);
    return a.representative_index < b.representative_index;
  });
  return clusters;
}

HangPosition select_hang_position(const Vec3& contact, const ObjectScene& scene, const HangConfig& cfg) {
  const Vec3 to_com = scene.stats.com - contact;
  double len = to_com.norm();
  if (len <= 1e-9) throw PreconditionError("degenerate segment: contact coincides with the center of mass");
  const Vec3 dir = to_com / len;
  if (auto hit = scene.bvh.first_hit(contact, dir, kRayEpsilon, len)) len = hit->distance;

  HangPosition best;
  best.clearance = -1.0;
  const int n = cfg.segment_samples;
  for (int k = 1; k <= n; ++k) {
    const Vec3 x = contact + (len * k / (n + 1)) * dir;
    const double clearance = scene.cloud_index.nearest(x).distance;
    if (clearance > best.clearance) {
      best.clearance = clearance;
      best.c = x;
    }
  }
  return best;
}

std::vector<Vec3> fibonacci_hemisphere(int count) {
  std::vector<Vec3> dirs;
  dirs.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    // starts at the pole so an axis-aligned hole gets an exact plane
    const double z = 1.0 - static_cast<double>(i) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    dirs.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return dirs;
}

std::vector<Vec3> ray_fan(const Vec3& n, int rays) {
  const Vec3 e1 = any_perpendicular(n);
  const Vec3 e2 = n.normalized().cross(e1);
  std::vector<Vec3> fan;
  fan.reserve(rays);
  for (int k = 0; k < rays; ++k) {
    const double t = 2.0 * std::numbers::pi * k / rays;
    fan.push_back(std::cos(t) * e1 + std::sin(t) * e2);
  }
  return fan;
}

Vec3 canonicalize_direction(const Vec3& v) {
  for (int axis : {2, 0, 1}) {
    if (v[axis] > 0.0) return v;
    if (v[axis] < 0.0) return -v;
  }
  return v;
}

HangDirection detect_hang_direction(const Vec3& c, const TriangleBvh& bvh, const HangConfig& cfg) {
  const std::vector<Vec3> normals = fibonacci_hemisphere(cfg.plane_count);
  int best_plane = -1;
  int best_hits = 0;
  double best_sum = 0.0;
  for (int p = 0; p < cfg.plane_count; ++p) {
    int hits = 0;
    double sum = 0.0;
    for (const Vec3& d : ray_fan(normals[p], cfg.rays_per_plane)) {
      if (auto hit = bvh.first_hit(c, d)) {
        ++hits;
        sum += hit->distance;
      }
    }
    if (hits > best_hits || (hits == best_hits && hits > 0 && sum < best_sum)) {
      best_plane = p;
      best_hits = hits;
      best_sum = sum;
    }
  }
  if (best_plane < 0) throw PreconditionError("all planes score zero hits");

  HangDirection out;
  out.plane_index = best_plane;
  out.hits = best_hits;
  out.m = static_cast<double>(best_hits) / cfg.rays_per_plane;
  Vec3 miss_sum = Vec3::Zero();
  std::optional<Vec3> first_miss;
  for (const Vec3& d : ray_fan(normals[best_plane], cfg.rays_per_plane)) {
    if (auto hit = bvh.first_hit(c, d)) {
      out.contacts.push_back(hit->point);
    } else {
      miss_sum += d;
      if (!first_miss) first_miss = d;
    }
  }
  if (first_miss) {
    // Misses spread evenly around the fan cancel out; fall back to the first one.
    out.a = miss_sum.norm() > 1e-9 ? Vec3(miss_sum.normalized()) : *first_miss;
  }
  out.v = canonicalize_direction(normals[best_plane]);
  return out;
}

bool through_hole_filter(const Vec3& c, const Vec3& v, const TriangleBvh& bvh) {
  return !bvh.any_hit(c, v) && !bvh.any_hit(c, -v);
}

std::vector<HangRecord> detect_hangability(const ObjectScene& scene, const HangConfig& cfg) {
  cfg.validate();
  std::vector<HangRecord> kept;
  for (const ContactCluster& cl : find_candidate_contacts(scene.cloud, scene.stats, cfg)) {
    HangPosition pos;
    try {
      pos = select_hang_position(cl.representative, scene, cfg);
    } catch (const PreconditionError&) {
      continue;
    }
    if (pos.clearance < cfg.min_clearance) continue;
    HangDirection dir;
    try {
      dir = detect_hang_direction(pos.c, scene.bvh, cfg);
    } catch (const PreconditionError&) {
      continue;
    }
    if (dir.m < cfg.min_m) continue;
    if (!through_hole_filter(pos.c, dir.v, scene.bvh)) continue;

    HangRecord rec;
    rec.c = pos.c;
    rec.v = dir.v;
    rec.contacts = std::move(dir.contacts);
    rec.m = dir.m;
    rec.a = dir.a;
    rec.source_contact = cl.representative;
    rec.clearance = pos.clearance;
    rec.plane_index = dir.plane_index;
    kept.push_back(std::move(rec));
  }

  std::sort(kept.begin(), kept.end(), [](const HangRecord& a, const HangRecord& b) {
    if (a.m != b.m) return a.m > b.m;
    if (a.clearance != b.clearance) return a.clearance > b.clearance;
    if (a.c != b.c) return lex_less(a.c, b.c);
    return lex_less(a.source_contact, b.source_contact);
  });
  std::vector<HangRecord> out;
  for (HangRecord& rec : kept) {
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const HangRecord& o) {
      return (o.c - rec.c).norm() < cfg.cluster_radius && std::abs(o.v.dot(rec.v)) > 0.99;
    });
    if (!duplicate) out.push_back(std::move(rec));
  }
  return out;
}

std::vector<HangRecord> detect_hangability(const TriangleMesh& mesh, const HangConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  return detect_hangability(prepare_scene(mesh, cfg.sample_count, seed), cfg);
}

}  // namespace gbh
