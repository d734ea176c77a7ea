#include "gbh/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace gbh {
namespace {

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform hash grid keyed by integer cell coordinates.
class DiskGrid {
 public:
  DiskGrid(const Vec3& origin, double cell) : origin_(origin), inv_(1.0 / cell) {}

  bool is_free(const Vec3& p, double r2, const std::vector<Vec3>& accepted) const {
    const auto c = cell_of(p);
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = cells_.find(key(c[0] + dx, c[1] + dy, c[2] + dz));
          if (it == cells_.end()) continue;
          for (int idx : it->second) {
            if ((accepted[idx] - p).squaredNorm() < r2) return false;
          }
        }
      }
    }
    return true;
  }

  void insert(const Vec3& p, int idx) {
    const auto c = cell_of(p);
    cells_[key(c[0], c[1], c[2])].push_back(idx);
  }

 private:
  std::array<std::int64_t, 3> cell_of(const Vec3& p) const {
    return {static_cast<std::int64_t>(std::floor((p.x() - origin_.x()) * inv_)),
            static_cast<std::int64_t>(std::floor((p.y() - origin_.y()) * inv_)),
            static_cast<std::int64_t>(std::floor((p.z() - origin_.z()) * inv_))};
  }
  static std::uint64_t key(std::int64_t x, std::int64_t y, std::int64_t z) {
    const auto h = [](std::int64_t v) { return static_cast<std::uint64_t>(v + (1 << 20)) & 0x1fffffu; };
    return (h(x) << 42) | (h(y) << 21) | h(z);
  }

  Vec3 origin_;
  double inv_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

struct Candidate {
  Vec3 point;
  int face;
};

std::vector<int> throw_darts(const std::vector<Candidate>& candidates, double radius, const Vec3& origin) {
  DiskGrid grid(origin, radius);
  std::vector<Vec3> accepted_points;
  std::vector<int> accepted;
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Vec3& p = candidates[i].point;
    if (!grid.is_free(p, r2, accepted_points)) continue;
    grid.insert(p, static_cast<int>(accepted_points.size()));
    accepted_points.push_back(p);
    accepted.push_back(static_cast<int>(i));
  }
  return accepted;
}

}  // namespace

double implied_disk_radius(double area, std::size_t count) {
  return std::sqrt(2.0 * area / (std::sqrt(3.0) * static_cast<double>(count)));
}

SurfaceCloud poisson_disk_sample(const TriangleMesh& mesh, std::size_t target_count, std::uint64_t seed,
                                 PoissonReport* report) {
  if (target_count < 4) throw PreconditionError("poisson_disk_sample: target_count must be >= 4");
  if (mesh.faces.empty()) throw PreconditionError("poisson_disk_sample: empty mesh");

  std::vector<double> cdf(mesh.faces.size());
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    total += mesh.face_area(f);
    cdf[f] = total;
  }
  const AxisAlignedBox box = bounding_box(mesh.vertices);
  // Spacing has to stay resolvable at the coordinates' magnitude.
  const double scale = std::max({box.extent().norm(), box.min.cwiseAbs().maxCoeff(), box.max.cwiseAbs().maxCoeff()});
  const double r_est = implied_disk_radius(total, target_count);
  if (!(total > 0.0) || !(r_est > 1e-9 * scale) || target_count > 50'000'000) {
    throw PreconditionError("poisson_disk_sample: target_count too large for mesh area");
  }

  std::mt19937_64 rng(seed);
  const std::size_t n_candidates = std::max<std::size_t>(20 * target_count, 2000);
  std::vector<Candidate> candidates;
  candidates.reserve(n_candidates);
  for (std::size_t i = 0; i < n_candidates; ++i) {
    const double pick = unit_double(rng) * total;
    const std::size_t f = std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), pick) - cdf.begin()),
        cdf.size() - 1);
    const double s = std::sqrt(unit_double(rng));
    const double t = unit_double(rng);
    const Vec3 p = (1.0 - s) * mesh.corner(f, 0) + s * (1.0 - t) * mesh.corner(f, 1) + s * t * mesh.corner(f, 2);
    candidates.push_back({p, static_cast<int>(f)});
  }

  // Accepted count decreases with the radius; bisect on it.
  double lo = 0.2 * r_est;
  double hi = 1.2 * r_est;
  std::vector<int> best;
  double best_radius = 0.0;
  std::size_t best_err = std::numeric_limits<std::size_t>::max();
  // Returns the accepted count at radius r, remembering the closest result.
  const auto consider = [&](double r) {
    std::vector<int> acc = throw_darts(candidates, r, box.min);
    const std::size_t count = acc.size();
    const std::size_t err = count > target_count ? count - target_count : target_count - count;
    if (err < best_err) {
      best_err = err;
      best = std::move(acc);
      best_radius = r;
    }
    return count;
  };
  const std::size_t tight = std::max<std::size_t>(1, target_count / 50);
  for (int iter = 0; iter < 40 && best_err > tight; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (consider(mid) > target_count) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (best_err * 10 > target_count) {
    throw PreconditionError("poisson_disk_sample: target_count too large for mesh area");
  }

  SurfaceCloud cloud;
  cloud.points.reserve(best.size());
  cloud.normals.reserve(best.size());
  for (int i : best) {
    cloud.points.push_back(candidates[i].point);
    cloud.normals.push_back(mesh.normals[candidates[i].face]);
  }
  if (report) {
    report->radius = best_radius;
    report->r_est = r_est;
    report->candidates = candidates.size();
  }
  return cloud;
}

}  // namespace gbh
