// Poisson-disk surface sampling.
#pragma once

#include "gbh/geometry.hpp"

#include <cstdint>

namespace gbh {

/// Spacing of a hexagonal packing of `count` points over `area`:
/// sqrt(2 * area / (sqrt(3) * count)).
double implied_disk_radius(double area, std::size_t count);

struct PoissonReport {
  double radius = 0.0;     // achieved minimum-distance radius
  double r_est = 0.0;      // implied_disk_radius(area, target)
  std::size_t candidates = 0;
};

/// Area-uniform dart throwing over a dense seeded candidate set, with the
/// disk radius bisected until the accepted count is within 2% of
/// target_count (always within 10%). Every pair of points is at least
/// `radius` apart, and the radius is >= 0.5 * r_est for well-posed inputs.
/// Normals are the supporting face normals. Deterministic for a fixed seed.
SurfaceCloud poisson_disk_sample(const TriangleMesh& mesh, std::size_t target_count, std::uint64_t seed,
                                 PoissonReport* report = nullptr);

}  // namespace gbh
