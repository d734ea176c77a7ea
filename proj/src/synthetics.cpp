#include "gbh/synthetics.hpp"

#include "gbh/bvh.hpp"
#include "gbh/mass_properties.hpp"
#include "gbh/mesh_builders.hpp"
#include "gbh/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace gbh {
namespace {

constexpr double kPi = std::numbers::pi;

const std::map<std::string, ShapeKind>& kind_table() {
  static const std::map<std::string, ShapeKind> table = {
      {"torus", ShapeKind::Torus},   {"arc_torus", ShapeKind::ArcTorus},
      {"mug", ShapeKind::Mug},       {"hanger", ShapeKind::Hanger},
      {"plate_with_holes", ShapeKind::PlateWithHoles},
      {"sphere", ShapeKind::Sphere}, {"box", ShapeKind::Box},
      {"cylinder", ShapeKind::Cylinder}};
  return table;
}

// Mug dimensions: outer radius, wall, height, bottom thickness, and a handle
// arc in the xz plane whose ends are buried in the wall.
constexpr double kMugOuter = 0.04;
constexpr double kMugInner = 0.034;
constexpr double kMugHeight = 0.09;
constexpr double kMugBottom = 0.006;
constexpr double kHandleArc = 0.025;
constexpr double kHandleTube = 0.005;

std::vector<Vec3> circle_xy(double radius, double a0, double a1, int n, bool include_end) {
  std::vector<Vec3> pts;
  const int count = include_end ? n + 1 : n;
  for (int i = 0; i < count; ++i) {
    const double t = a0 + (a1 - a0) * i / n;
    pts.emplace_back(radius * std::cos(t), radius * std::sin(t), 0.0);
  }
  return pts;
}

TriangleMesh torus(double R, double r, int res) {
  return sweep_tube(circle_xy(R, 0.0, 2.0 * kPi, res, false), Vec3::UnitZ(), r, std::max(8, res / 2), true);
}

// Gap centered on +x.
TriangleMesh arc_torus(double R, double r, double sweep, int res) {
  const double half_gap = 0.5 * (2.0 * kPi - sweep);
  const int n = std::max(2, static_cast<int>(std::ceil(res * sweep / (2.0 * kPi))));
  return sweep_tube(circle_xy(R, half_gap, 2.0 * kPi - half_gap, n, true), Vec3::UnitZ(), r,
                    std::max(8, res / 2), false);
}

TriangleMesh uv_sphere(double radius, int res) {
  std::vector<Vec2> profile;
  const int n = std::max(4, res / 2);
  for (int i = 0; i <= n; ++i) {
    const double t = -0.5 * kPi + kPi * i / n;
    profile.emplace_back(i == 0 || i == n ? 0.0 : radius * std::cos(t), radius * std::sin(t));
  }
  return revolve_profile(profile, res);
}

TriangleMesh cylinder(double radius, double height, int res) {
  return revolve_profile({{0.0, -height / 2}, {radius, -height / 2}, {radius, height / 2}, {0.0, height / 2}}, res);
}

std::vector<Vec3> sub_segment(const Vec3& a, const Vec3& b, double step) {
  const int n = std::max(1, static_cast<int>(std::ceil((b - a).norm() / step)));
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) pts.push_back(a + (b - a) * (static_cast<double>(i) / n));
  return pts;
}

TriangleMesh mug(int res) {
  TriangleMesh body = revolve_profile({{0.0, 0.0},
                                       {kMugOuter, 0.0},
                                       {kMugOuter, kMugHeight},
                                       {kMugInner, kMugHeight},
                                       {kMugInner, kMugBottom},
                                       {0.0, kMugBottom}},
                                      res);
  // End angle puts the arc ends midway through the wall.
  const double wall_mid = 0.5 * (kMugOuter + kMugInner);
  const double end = std::acos((wall_mid - kMugOuter) / kHandleArc);
  const Vec3 hub(kMugOuter, 0.0, 0.5 * kMugHeight);
  std::vector<Vec3> path;
  const int n = std::max(8, res / 2);
  for (int i = 0; i <= n; ++i) {
    const double t = -end + 2.0 * end * i / n;
    path.push_back(hub + kHandleArc * Vec3(std::cos(t), 0.0, std::sin(t)));
  }
  TriangleMesh handle = sweep_tube(path, Vec3::UnitY(), kHandleTube, std::max(8, res / 4), false);
  return merge_meshes({body, handle});
}

struct HangerLayout {
  Vec3 a{-0.08, 0.0, 0.0}, b{0.08, 0.0, 0.0}, c{0.0, 0.0, 0.06};
  double corner = 0.01;
  double tube = 0.003;
};

TriangleMesh hanger(int res) {
  const HangerLayout lay;
  const std::vector<Vec3> corners = {lay.a, lay.b, lay.c};
  std::vector<Vec3> path;
  const int arc_n = std::max(3, res / 8);
  // Distance from each corner to where its fillet meets the edges.
  double backs[3];
  for (int k = 0; k < 3; ++k) {
    const Vec3 d_in = (corners[k] - corners[(k + 2) % 3]).normalized();
    const Vec3 d_out = (corners[(k + 1) % 3] - corners[k]).normalized();
    backs[k] = lay.corner / std::tan(std::acos(std::clamp((-d_in).dot(d_out), -1.0, 1.0)) / 2);
  }
  for (int k = 0; k < 3; ++k) {
    const Vec3 prev = corners[(k + 2) % 3], p = corners[k], next = corners[(k + 1) % 3];
    const Vec3 d_in = (p - prev).normalized(), d_out = (next - p).normalized();
    const double theta = std::acos(std::clamp((-d_in).dot(d_out), -1.0, 1.0));
    const double back = backs[k];
    const Vec3 bis = (d_out - d_in).normalized();
    const Vec3 center = p + bis * (lay.corner / std::sin(theta / 2));
    const Vec3 t0 = p - d_in * back, t1 = p + d_out * back;
    const Vec3 e0 = (t0 - center).normalized();
    const Vec3 e1 = (t1 - center).normalized();
    const double span = std::acos(std::clamp(e0.dot(e1), -1.0, 1.0));
    const Vec3 perp = (e1 - e0.dot(e1) * e0).normalized();
    for (int i = 0; i < arc_n; ++i) {
      const double t = span * i / arc_n;
      path.push_back(center + lay.corner * (std::cos(t) * e0 + std::sin(t) * perp));
    }
    const Vec3 next_start = next - d_out * backs[(k + 1) % 3];
    for (const Vec3& q : sub_segment(t1, next_start, 0.01)) path.push_back(q);
  }
  TriangleMesh frame = sweep_tube(path, Vec3::UnitY(), lay.tube, std::max(8, res / 4), true);

  std::vector<Vec3> hook = sub_segment(Vec3(0.0, 0.0, 0.055), Vec3(0.0, 0.0, 0.09), 0.005);
  const double hr = 0.012;
  const Vec3 hc(hr, 0.0, 0.09);
  for (int i = 0; i <= arc_n * 3; ++i) {
    const double t = kPi - (kPi + kPi / 6) * i / (arc_n * 3);
    hook.push_back(hc + hr * Vec3(std::cos(t), 0.0, std::sin(t)));
  }
  TriangleMesh j = sweep_tube(hook, Vec3::UnitY(), lay.tube, std::max(8, res / 4), false);
  return merge_meshes({frame, j});
}

Vec3 hanger_incenter() {
  const HangerLayout lay;
  const double la = (lay.b - lay.c).norm(), lb = (lay.c - lay.a).norm(), lc = (lay.a - lay.b).norm();
  return (la * lay.a + lb * lay.b + lc * lay.c) / (la + lb + lc);
}

// Square cells of side `cell` in a row along x, each with a centered round
// hole; the outer ring of each cell is sampled at the same angles as the
// hole so shared cell edges line up vertex for vertex.
TriangleMesh plate(const ShapeSpec& s, std::vector<Vec3>& hole_centers) {
  const int n = std::max(16, (s.resolution + 7) / 8 * 8);
  const double half = s.cell_size / 2;
  PlanarRegion region;
  const auto vertex = [&](const Vec2& p) {
    for (std::size_t i = 0; i < region.vertices.size(); ++i) {
      if ((region.vertices[i] - p).norm() < 1e-12) return static_cast<int>(i);
    }
    region.vertices.push_back(p);
    return static_cast<int>(region.vertices.size() - 1);
  };
  for (int cell = 0; cell < s.hole_count; ++cell) {
    const double cx = (cell - 0.5 * (s.hole_count - 1)) * s.cell_size;
    hole_centers.emplace_back(cx, 0.0, 0.0);
    std::vector<int> inner, outer;
    for (int k = 0; k < n; ++k) {
      const double t = 2.0 * kPi * k / n;
      const double c = std::cos(t), sn = std::sin(t);
      // Snap the exact axis and corner directions so neighbours agree bitwise.
      const double reach = half / std::max(std::abs(c), std::abs(sn));
      Vec2 o(cx + reach * c, reach * sn);
      if (k % (n / 8) == 0) {
        const int oct = k / (n / 8);
        const double ox[8] = {1, 1, 0, -1, -1, -1, 0, 1};
        const double oy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
        o = Vec2(cx + half * ox[oct], half * oy[oct]);
      }
      inner.push_back(vertex(Vec2(cx + s.hole_radius * c, s.hole_radius * sn)));
      outer.push_back(vertex(o));
    }
    for (int k = 0; k < n; ++k) {
      const int kn = (k + 1) % n;
      region.triangles.push_back({inner[k], outer[k], outer[kn]});
      region.triangles.push_back({inner[k], outer[kn], inner[kn]});
    }
  }
  return extrude_region(region, -s.thickness / 2, s.thickness / 2);
}

void check_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) throw PreconditionError(std::string("shape.") + name + " must be positive");
}

}  // namespace

const char* to_string(ShapeKind kind) {
  for (const auto& [name, k] : kind_table()) {
    if (k == kind) return name.c_str();
  }
  return "unknown";
}

ShapeKind shape_kind_from_string(const std::string& name) {
  auto it = kind_table().find(name);
  if (it == kind_table().end()) throw PreconditionError("unknown shape '" + name + "'");
  return it->second;
}

void set_shape_param(ShapeSpec& spec, const std::string& name, double value) {
  if (name == "major_radius") spec.major_radius = value;
  else if (name == "minor_radius") spec.minor_radius = value;
  else if (name == "sweep_deg") spec.sweep_deg = value;
  else if (name == "radius") spec.radius = value;
  else if (name == "height") spec.height = value;
  else if (name == "size_x") spec.size.x() = value;
  else if (name == "size_y") spec.size.y() = value;
  else if (name == "size_z") spec.size.z() = value;
  else if (name == "hole_count") spec.hole_count = static_cast<int>(value);
  else if (name == "hole_radius") spec.hole_radius = value;
  else if (name == "cell_size") spec.cell_size = value;
  else if (name == "thickness") spec.thickness = value;
  else if (name == "center_x") spec.center.x() = value;
  else if (name == "center_y") spec.center.y() = value;
  else if (name == "center_z") spec.center.z() = value;
  else if (name == "resolution") spec.resolution = static_cast<int>(value);
  else throw PreconditionError("unknown shape parameter '" + name + "'");
}

Shape build_shape(const ShapeSpec& spec) {
  if (spec.resolution < 8) throw PreconditionError("shape.resolution too low to be watertight (minimum 8)");
  Shape out;
  GroundTruth& gt = out.truth;
  switch (spec.kind) {
    case ShapeKind::Torus: {
      check_positive(spec.major_radius, "major_radius");
      check_positive(spec.minor_radius, "minor_radius");
      if (!(spec.minor_radius < spec.major_radius)) throw PreconditionError("shape.minor_radius must be below major_radius");
      out.mesh = torus(spec.major_radius, spec.minor_radius, spec.resolution);
      gt.holes.push_back({Vec3::Zero(), Vec3::UnitZ(), 1.0, std::nullopt});
      gt.com = Vec3::Zero();
      break;
    }
    case ShapeKind::ArcTorus: {
      check_positive(spec.major_radius, "major_radius");
      check_positive(spec.minor_radius, "minor_radius");
      if (!(spec.minor_radius < spec.major_radius)) throw PreconditionError("shape.minor_radius must be below major_radius");
      if (!(spec.sweep_deg > 0.0 && spec.sweep_deg < 360.0)) throw PreconditionError("shape.sweep_deg must be in (0, 360)");
      const double sweep = spec.sweep_deg * kPi / 180.0;
      out.mesh = arc_torus(spec.major_radius, spec.minor_radius, sweep, spec.resolution);
      gt.holes.push_back({Vec3::Zero(), Vec3::UnitZ(), sweep / (2.0 * kPi), Vec3::UnitX()});
      const double R = spec.major_radius, r = spec.minor_radius;
      const double dist = (R * R + r * r / 4.0) / R * std::sin(sweep / 2) / (sweep / 2);
      gt.com = Vec3(-dist, 0.0, 0.0);
      break;
    }
    case ShapeKind::Mug: {
      out.mesh = mug(spec.resolution);
      const Vec3 hole(kMugOuter + 0.5 * (kHandleArc - kHandleTube), 0.0, 0.5 * kMugHeight);
      gt.holes.push_back({hole, Vec3::UnitY(), 1.0, std::nullopt});
      break;
    }
    case ShapeKind::Hanger: {
      out.mesh = hanger(spec.resolution);
      gt.holes.push_back({hanger_incenter(), Vec3::UnitY(), 1.0, std::nullopt});
      break;
    }
    case ShapeKind::PlateWithHoles: {
      if (spec.hole_count < 1) throw PreconditionError("shape.hole_count must be positive");
      check_positive(spec.thickness, "thickness");
      check_positive(spec.hole_radius, "hole_radius");
      if (!(2.0 * spec.hole_radius < spec.cell_size)) throw PreconditionError("shape.hole_radius must fit in cell_size");
      std::vector<Vec3> centers;
      out.mesh = plate(spec, centers);
      for (const Vec3& c : centers) gt.holes.push_back({c, Vec3::UnitZ(), 1.0, std::nullopt});
      gt.com = Vec3::Zero();
      break;
    }
    case ShapeKind::Sphere: {
      check_positive(spec.radius, "radius");
      out.mesh = uv_sphere(spec.radius, spec.resolution);
      gt.com = Vec3::Zero();
      break;
    }
    case ShapeKind::Box: {
      check_positive(spec.size.minCoeff(), "size");
      out.mesh = make_box(spec.size);
      gt.com = Vec3::Zero();
      break;
    }
    case ShapeKind::Cylinder: {
      check_positive(spec.radius, "radius");
      check_positive(spec.height, "height");
      out.mesh = cylinder(spec.radius, spec.height, spec.resolution);
      gt.com = Vec3::Zero();
      break;
    }
  }
  remove_degenerate_faces(out.mesh);
  if (!is_watertight(out.mesh)) throw PreconditionError("shape.resolution too low to be watertight");

  if (spec.partial) {
    std::vector<Vec3> views = spec.viewpoints;
    if (views.empty()) views.push_back(Vec3(-1.0, 0.0, 0.5).normalized());
    out.mesh = partial_scan(out.mesh, views);
    gt.partial = true;
    gt.watertight = is_watertight(out.mesh);
    gt.com.reset();
  }

  RigidTransform pose;
  pose.translation = spec.center;
  if (spec.random_pose) pose = random_rigid_transform(spec.seed, 0.2) * pose;
  out.mesh = transformed(out.mesh, pose);
  for (HoleTruth& h : gt.holes) {
    h.center = pose.apply(h.center);
    h.axis = pose.apply_direction(h.axis);
    if (h.gap_direction) h.gap_direction = pose.apply_direction(*h.gap_direction);
  }
  if (gt.com) gt.com = pose.apply(*gt.com);
  gt.pose = pose;
  return out;
}

TriangleMesh partial_scan(const TriangleMesh& mesh, const std::vector<Vec3>& viewpoints) {
  TriangleMesh work = mesh;
  if (work.normals.size() != work.faces.size()) work.update_normals();
  const TriangleBvh bvh(work);
  TriangleMesh out;
  out.vertices = work.vertices;
  for (std::size_t f = 0; f < work.faces.size(); ++f) {
    const Vec3 c = work.face_centroid(f);
    for (const Vec3& view : viewpoints) {
      const Vec3 d = view.normalized();
      if (work.normals[f].dot(d) > 0.0 && !bvh.any_hit(c, d)) {
        out.faces.push_back(work.faces[f]);
        break;
      }
    }
  }
  if (out.faces.empty()) throw PreconditionError("partial scan removed every face");
  // Drop vertices no face references.
  std::vector<int> remap(out.vertices.size(), -1);
  std::vector<Vec3> used;
  for (Face& face : out.faces) {
    for (int& k : face) {
      if (remap[k] < 0) {
        remap[k] = static_cast<int>(used.size());
        used.push_back(out.vertices[k]);
      }
      k = remap[k];
    }
  }
  out.vertices = std::move(used);
  out.update_normals();
  return out;
}

std::string ground_truth_json(const ShapeSpec& spec, const GroundTruth& truth) {
  Json doc;
  doc["shape"] = to_string(spec.kind);
  doc["resolution"] = spec.resolution;
  doc["seed"] = spec.seed;
  doc["watertight"] = truth.watertight;
  doc["partial"] = truth.partial;
  doc["com"] = truth.com ? to_json(*truth.com) : Json(nullptr);
  Json holes = Json::array();
  for (const HoleTruth& h : truth.holes) {
    Json j;
    j["center"] = to_json(h.center);
    j["axis"] = to_json(h.axis);
    j["expected_m"] = h.expected_m;
    j["gap_direction"] = h.gap_direction ? to_json(*h.gap_direction) : Json(nullptr);
    holes.push_back(std::move(j));
  }
  doc["holes"] = std::move(holes);
  Json rot = Json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) rot.push_back(truth.pose.rotation(r, c));
  }
  doc["pose"] = {{"rotation", rot}, {"translation", to_json(truth.pose.translation)}};
  return dump_json(doc);
}

RigidTransform random_rigid_transform(std::uint64_t seed, double extent) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(-extent, extent);
  Eigen::Quaterniond q;
  do {
    q = Eigen::Quaterniond(normal(rng), normal(rng), normal(rng), normal(rng));
  } while (q.norm() < 1e-6);
  q.normalize();
  RigidTransform t;
  t.rotation = q.toRotationMatrix();
  t.translation = Vec3(uniform(rng), uniform(rng), uniform(rng));
  return t;
}

}  // namespace gbh
