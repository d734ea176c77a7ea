// Watertightness, orientation and center-of-mass queries.
#pragma once

#include "gbh/geometry.hpp"

namespace gbh {

/// True when every undirected edge is shared by exactly two faces that
/// traverse it in opposite directions (closed, consistently oriented 2-manifold).
bool is_watertight(const TriangleMesh& mesh);

/// Signed enclosed volume sum over faces of (a . (b x c)) / 6.
double signed_volume(const TriangleMesh& mesh);

/// On a watertight mesh with negative signed volume, reverses every face so
/// normals point out of the enclosed volume. Returns true if a flip happened.
bool orient_outward(TriangleMesh& mesh);

/// Volume centroid (divergence theorem) for watertight meshes; area-weighted
/// surface centroid otherwise. Throws PreconditionError on an empty mesh.
MeshStats compute_com(const TriangleMesh& mesh);

}  // namespace gbh
