// Parametric test objects with analytic ground truth, and a visibility-based
// partial-scan filter that imitates a single-viewpoint reconstruction.
#pragma once

#include "gbh/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gbh {

enum class ShapeKind { Torus, ArcTorus, Mug, Hanger, PlateWithHoles, Sphere, Box, Cylinder };

const char* to_string(ShapeKind kind);
/// Case-sensitive lower-snake names: torus, arc_torus, mug, hanger,
/// plate_with_holes, sphere, box, cylinder. Throws PreconditionError.
ShapeKind shape_kind_from_string(const std::string& name);

/// Dimensions in meters and degrees. Fields a shape does not use are ignored.
struct ShapeSpec {
  ShapeKind kind = ShapeKind::Torus;
  double major_radius = 0.05;   // torus, arc torus
  double minor_radius = 0.01;   // torus, arc torus
  double sweep_deg = 270.0;     // arc torus
  double radius = 0.05;         // sphere, cylinder
  double height = 0.1;          // cylinder
  Vec3 size = Vec3(0.1, 0.06, 0.04);  // box
  int hole_count = 2;           // plate: square cells in a row along x
  double hole_radius = 0.012;   // plate
  double cell_size = 0.06;      // plate
  double thickness = 0.008;     // plate
  Vec3 center = Vec3::Zero();   // translation applied to every shape
  int resolution = 64;
  std::uint64_t seed = 0;
  bool random_pose = false;     // apply a seeded rigid motion after `center`
  bool partial = false;         // keep only faces visible from `viewpoints`
  std::vector<Vec3> viewpoints;  // directions toward the camera; empty = shape default
};

/// Sets a named scalar field ("major_radius", "resolution", ...).
void set_shape_param(ShapeSpec& spec, const std::string& name, double value);

struct HoleTruth {
  Vec3 center = Vec3::Zero();
  Vec3 axis = Vec3::UnitZ();
  double expected_m = 1.0;
  std::optional<Vec3> gap_direction;
};

struct GroundTruth {
  std::vector<HoleTruth> holes;
  std::optional<Vec3> com;
  bool watertight = true;
  bool partial = false;
  RigidTransform pose;  // applied to the canonical shape
};

struct Shape {
  TriangleMesh mesh;
  GroundTruth truth;
};

/// Throws PreconditionError for invalid dimensions and for resolutions too
/// coarse to produce a closed mesh.
Shape build_shape(const ShapeSpec& spec);

/// Faces whose centroid sees at least one viewpoint direction unobstructed
/// (n . d > 0 and no other face along the ray).
TriangleMesh partial_scan(const TriangleMesh& mesh, const std::vector<Vec3>& viewpoints);

/// Ground-truth record as JSON text (17 significant digits).
std::string ground_truth_json(const ShapeSpec& spec, const GroundTruth& truth);

/// Seeded uniformly random rotation with translation in [-extent, extent]^3.
RigidTransform random_rigid_transform(std::uint64_t seed, double extent);

}  // namespace gbh
