// An analyzed object: mesh plus everything the downstream stages query.
#pragma once

#include "gbh/bvh.hpp"
#include "gbh/geometry.hpp"
#include "gbh/point_index.hpp"

#include <cstdint>

namespace gbh {

/// Immutable once built; all members are safe to share across threads.
struct ObjectScene {
  TriangleMesh mesh;
  MeshStats stats;
  TriangleBvh bvh;
  SurfaceCloud cloud;
  PointIndex cloud_index;
};

/// Orients a watertight mesh outward, validates it, computes the center of
/// mass, builds the ray-casting hierarchy and Poisson-disk samples
/// `sample_count` points with `seed`.
ObjectScene prepare_scene(TriangleMesh mesh, std::size_t sample_count, std::uint64_t seed);

/// Same, with a caller-provided cloud (used for transformed scenes in tests).
ObjectScene make_scene(TriangleMesh mesh, SurfaceCloud cloud);

}  // namespace gbh
