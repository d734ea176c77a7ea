// Procedural closed-mesh primitives: surfaces of revolution, tubes swept
// along planar curves, and extruded planar regions.
#pragma once

#include "gbh/geometry.hpp"

#include <Eigen/Core>

#include <vector>

namespace gbh {

using Vec2 = Eigen::Vector2d;

/// Revolves an open (radius, height) polyline about the z axis. Profile
/// endpoints with radius 0 become single pole vertices; a closed solid needs
/// both endpoints on the axis.
TriangleMesh revolve_profile(const std::vector<Vec2>& profile, int segments);

/// Circular tube of `radius` swept along a polyline lying in the plane with
/// normal `plane_normal`. Closed paths wrap around; open paths get flat caps.
TriangleMesh sweep_tube(const std::vector<Vec3>& path, const Vec3& plane_normal, double radius,
                        int ring_segments, bool closed);

/// 2D triangulated region (counter-clockwise triangles) extruded between
/// z = z0 and z = z1. Boundary edges become side walls.
struct PlanarRegion {
  std::vector<Vec2> vertices;
  std::vector<Face> triangles;
};
TriangleMesh extrude_region(const PlanarRegion& region, double z0, double z1);

/// Axis-aligned box centered at the origin.
TriangleMesh make_box(const Vec3& size);

/// Merges vertices closer than `tol` (grid-hashed), remaps faces, drops faces
/// that collapse.
void weld_vertices(TriangleMesh& mesh, double tol);

/// Concatenates meshes without sharing vertices.
TriangleMesh merge_meshes(const std::vector<TriangleMesh>& parts);

/// Flips the whole mesh if its signed volume is negative; refreshes normals.
void orient_by_volume(TriangleMesh& mesh);

TriangleMesh capsule_mesh(const Vec3& a, const Vec3& b, double radius, int segments = 12);
TriangleMesh sphere_mesh(const Vec3& center, double radius, int segments = 12);

}  // namespace gbh
