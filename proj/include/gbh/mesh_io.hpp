// Mesh readers and writers: OBJ, PLY (ASCII and binary), STL (ASCII and
// binary). All coordinates are meters.
#pragma once

#include "gbh/geometry.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace gbh {

enum class MeshFormat { Obj, Ply, Stl };

struct LoadReport {
  std::size_t vertex_count = 0;
  std::size_t face_count = 0;
  std::size_t dropped_faces = 0;
};

/// Reads a mesh, fan-triangulates polygons, welds bit-identical STL vertices
/// and drops degenerate faces. Throws MeshIoError ("unreadable file",
/// "unsupported format", "empty mesh after cleaning", or a parse message).
TriangleMesh load_mesh(const std::filesystem::path& path, LoadReport* report = nullptr);

/// Format from the file extension (case-insensitive); throws MeshIoError.
MeshFormat format_from_extension(const std::filesystem::path& path);

void save_obj(const std::filesystem::path& path, const TriangleMesh& mesh);
void save_ply(const std::filesystem::path& path, const TriangleMesh& mesh, bool binary = false);
void save_stl(const std::filesystem::path& path, const TriangleMesh& mesh, bool binary = true);
void save_mesh(const std::filesystem::path& path, const TriangleMesh& mesh);

using Rgb = std::array<std::uint8_t, 3>;

/// Generic ASCII PLY with optional per-vertex colors, faces and line edges.
/// Used for visualization exports.
struct PlyScene {
  std::vector<Vec3> vertices;
  std::vector<Rgb> colors;  // empty or one per vertex
  std::vector<Face> faces;
  std::vector<std::pair<int, int>> edges;
};
void save_ply_scene(const std::filesystem::path& path, const PlyScene& scene);

}  // namespace gbh
