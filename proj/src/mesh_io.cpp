#include "gbh/mesh_io.hpp"

#include "gbh/mass_properties.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace gbh {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MeshIoError("unreadable file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw MeshIoError("unreadable file: " + path.string());
  return ss.str();
}

void add_polygon(TriangleMesh& mesh, const std::vector<int>& poly) {
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
    mesh.faces.push_back({poly[0], poly[k], poly[k + 1]});
  }
}

// ---------------------------------------------------------------- OBJ

TriangleMesh parse_obj(const std::string& text) {
  TriangleMesh mesh;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<int> poly;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) {
        throw MeshIoError("malformed vertex at OBJ line " + std::to_string(line_no));
      }
      mesh.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      poly.clear();
      std::string tok;
      while (ls >> tok) {
        const std::size_t slash = tok.find('/');
        const std::string idx = tok.substr(0, slash);
        int k = 0;
        try {
          k = std::stoi(idx);
        } catch (const std::exception&) {
          throw MeshIoError("malformed face at OBJ line " + std::to_string(line_no));
        }
        const int nv = static_cast<int>(mesh.vertices.size());
        if (k < 0) k = nv + k + 1;
        if (k < 1) throw MeshIoError("malformed face at OBJ line " + std::to_string(line_no));
        poly.push_back(k - 1);
      }
      if (poly.size() < 3) {
        throw MeshIoError("face with fewer than 3 vertices at OBJ line " + std::to_string(line_no));
      }
      add_polygon(mesh, poly);
    }
  }
  return mesh;
}

// ---------------------------------------------------------------- STL

// Merges bit-identical positions; STL stores three independent corners per facet.
class VertexWelder {
 public:
  explicit VertexWelder(TriangleMesh& mesh) : mesh_(mesh) {}
  int index(const Vec3& p) {
    const auto key = std::make_tuple(p.x(), p.y(), p.z());
    auto [it, inserted] = lookup_.emplace(key, static_cast<int>(mesh_.vertices.size()));
    if (inserted) mesh_.vertices.push_back(p);
    return it->second;
  }

 private:
  TriangleMesh& mesh_;
  std::map<std::tuple<double, double, double>, int> lookup_;
};

bool looks_like_ascii_stl(const std::string& data) {
  if (data.size() < 6 || lower(data.substr(0, 5)) != "solid") return false;
  if (data.size() >= 84) {
    std::uint32_t n = 0;
    std::memcpy(&n, data.data() + 80, 4);
    if (84 + static_cast<std::uint64_t>(n) * 50 == data.size()) return false;
  }
  return data.find("facet") != std::string::npos || data.find("endsolid") != std::string::npos;
}

TriangleMesh parse_stl(const std::string& data) {
  TriangleMesh mesh;
  VertexWelder weld(mesh);
  if (looks_like_ascii_stl(data)) {
    std::istringstream in(data);
    std::string tok;
    std::vector<int> poly;
    while (in >> tok) {
      tok = lower(tok);
      if (tok == "vertex") {
        double x, y, z;
        if (!(in >> x >> y >> z)) throw MeshIoError("malformed ASCII STL vertex");
        poly.push_back(weld.index(Vec3(x, y, z)));
      } else if (tok == "endloop") {
        if (poly.size() < 3) throw MeshIoError("malformed ASCII STL facet");
        add_polygon(mesh, poly);
        poly.clear();
      }
    }
    return mesh;
  }
  if (data.size() < 84) throw MeshIoError("truncated binary STL");
  std::uint32_t n = 0;
  std::memcpy(&n, data.data() + 80, 4);
  if (data.size() < 84 + static_cast<std::uint64_t>(n) * 50) throw MeshIoError("truncated binary STL");
  const char* p = data.data() + 84;
  for (std::uint32_t f = 0; f < n; ++f, p += 50) {
    std::vector<int> tri;
    for (int k = 0; k < 3; ++k) {
      float xyz[3];
      std::memcpy(xyz, p + 12 + 12 * k, 12);
      tri.push_back(weld.index(Vec3(xyz[0], xyz[1], xyz[2])));
    }
    add_polygon(mesh, tri);
  }
  return mesh;
}

// ---------------------------------------------------------------- PLY

enum class PlyType { I8, U8, I16, U16, I32, U32, F32, F64 };

PlyType ply_type(const std::string& name) {
  static const std::map<std::string, PlyType> table = {
      {"char", PlyType::I8},    {"int8", PlyType::I8},     {"uchar", PlyType::U8},
      {"uint8", PlyType::U8},   {"short", PlyType::I16},   {"int16", PlyType::I16},
      {"ushort", PlyType::U16}, {"uint16", PlyType::U16},  {"int", PlyType::I32},
      {"int32", PlyType::I32},  {"uint", PlyType::U32},    {"uint32", PlyType::U32},
      {"float", PlyType::F32},  {"float32", PlyType::F32}, {"double", PlyType::F64},
      {"float64", PlyType::F64}};
  auto it = table.find(name);
  if (it == table.end()) throw MeshIoError("unknown PLY property type '" + name + "'");
  return it->second;
}

std::size_t ply_size(PlyType t) {
  switch (t) {
    case PlyType::I8:
    case PlyType::U8: return 1;
    case PlyType::I16:
    case PlyType::U16: return 2;
    case PlyType::I32:
    case PlyType::U32:
    case PlyType::F32: return 4;
    case PlyType::F64: return 8;
  }
  return 0;
}

struct PlyProperty {
  std::string name;
  PlyType type = PlyType::F32;
  bool is_list = false;
  PlyType count_type = PlyType::U8;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> props;
};

class PlyReader {
 public:
  PlyReader(const std::string& data, std::size_t pos, bool ascii, bool big_endian)
      : data_(data), pos_(pos), ascii_(ascii), swap_(big_endian != (std::endian::native == std::endian::big)) {
    if (ascii_) text_.str(data_.substr(pos_));
  }

  double read(PlyType t) {
    if (ascii_) {
      double v;
      if (!(text_ >> v)) throw MeshIoError("truncated ASCII PLY body");
      return v;
    }
    const std::size_t n = ply_size(t);
    if (pos_ + n > data_.size()) throw MeshIoError("truncated binary PLY body");
    unsigned char buf[8];
    std::memcpy(buf, data_.data() + pos_, n);
    pos_ += n;
    if (swap_) std::reverse(buf, buf + n);
    switch (t) {
      case PlyType::I8: { std::int8_t v; std::memcpy(&v, buf, 1); return v; }
      case PlyType::U8: { std::uint8_t v; std::memcpy(&v, buf, 1); return v; }
      case PlyType::I16: { std::int16_t v; std::memcpy(&v, buf, 2); return v; }
      case PlyType::U16: { std::uint16_t v; std::memcpy(&v, buf, 2); return v; }
      case PlyType::I32: { std::int32_t v; std::memcpy(&v, buf, 4); return v; }
      case PlyType::U32: { std::uint32_t v; std::memcpy(&v, buf, 4); return v; }
      case PlyType::F32: { float v; std::memcpy(&v, buf, 4); return v; }
      case PlyType::F64: { double v; std::memcpy(&v, buf, 8); return v; }
    }
    return 0.0;
  }

 private:
  const std::string& data_;
  std::size_t pos_;
  bool ascii_;
  bool swap_;
  std::istringstream text_;
};

TriangleMesh parse_ply(const std::string& data) {
  std::size_t header_end = data.find("end_header");
  if (data.compare(0, 3, "ply") != 0 || header_end == std::string::npos) {
    throw MeshIoError("malformed PLY header");
  }
  std::size_t body = data.find('\n', header_end);
  if (body == std::string::npos) throw MeshIoError("malformed PLY header");
  ++body;

  std::istringstream header(data.substr(0, header_end));
  std::string line;
  std::string format;
  std::vector<PlyElement> elements;
  while (std::getline(header, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "format") {
      ls >> format;
    } else if (tag == "element") {
      PlyElement e;
      ls >> e.name >> e.count;
      elements.push_back(e);
    } else if (tag == "property") {
      if (elements.empty()) throw MeshIoError("PLY property before element");
      PlyProperty p;
      std::string type;
      ls >> type;
      if (type == "list") {
        std::string count_type, item_type;
        ls >> count_type >> item_type >> p.name;
        p.is_list = true;
        p.count_type = ply_type(count_type);
        p.type = ply_type(item_type);
      } else {
        p.type = ply_type(type);
        ls >> p.name;
      }
      elements.back().props.push_back(p);
    }
  }
  const bool ascii = format == "ascii";
  if (!ascii && format != "binary_little_endian" && format != "binary_big_endian") {
    throw MeshIoError("unsupported PLY format '" + format + "'");
  }
  PlyReader reader(data, body, ascii, format == "binary_big_endian");

  TriangleMesh mesh;
  std::vector<int> poly;
  for (const PlyElement& e : elements) {
    int ix = -1, iy = -1, iz = -1, iface = -1;
    for (std::size_t k = 0; k < e.props.size(); ++k) {
      const std::string& n = e.props[k].name;
      if (n == "x") ix = static_cast<int>(k);
      if (n == "y") iy = static_cast<int>(k);
      if (n == "z") iz = static_cast<int>(k);
      if (e.props[k].is_list && (n == "vertex_indices" || n == "vertex_index")) iface = static_cast<int>(k);
    }
    const bool is_vertex = e.name == "vertex";
    const bool is_face = e.name == "face";
    if (is_vertex && (ix < 0 || iy < 0 || iz < 0)) throw MeshIoError("PLY vertex element lacks x/y/z");
    for (std::size_t i = 0; i < e.count; ++i) {
      Vec3 v = Vec3::Zero();
      for (std::size_t k = 0; k < e.props.size(); ++k) {
        const PlyProperty& p = e.props[k];
        if (p.is_list) {
          const double cnt = reader.read(p.count_type);
          if (cnt < 0 || cnt > 1e6) throw MeshIoError("bad PLY list length");
          const int n = static_cast<int>(cnt);
          if (is_face && static_cast<int>(k) == iface) poly.clear();
          for (int j = 0; j < n; ++j) {
            const double idx = reader.read(p.type);
            if (is_face && static_cast<int>(k) == iface) poly.push_back(static_cast<int>(idx));
          }
          if (is_face && static_cast<int>(k) == iface) {
            if (poly.size() < 3) throw MeshIoError("PLY face with fewer than 3 vertices");
            add_polygon(mesh, poly);
          }
        } else {
          const double value = reader.read(p.type);
          if (is_vertex) {
            if (static_cast<int>(k) == ix) v.x() = value;
            if (static_cast<int>(k) == iy) v.y() = value;
            if (static_cast<int>(k) == iz) v.z() = value;
          }
        }
      }
      if (is_vertex) mesh.vertices.push_back(v);
    }
  }
  return mesh;
}

void write_or_throw(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MeshIoError("cannot write file: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw MeshIoError("cannot write file: " + path.string());
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

MeshFormat format_from_extension(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".obj") return MeshFormat::Obj;
  if (ext == ".ply") return MeshFormat::Ply;
  if (ext == ".stl") return MeshFormat::Stl;
  throw MeshIoError("unsupported format: '" + ext + "' (expected .obj, .ply or .stl)");
}

TriangleMesh load_mesh(const std::filesystem::path& path, LoadReport* report) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw MeshIoError("unreadable file: " + path.string());
  const MeshFormat format = format_from_extension(path);
  const std::string data = read_all(path);

  TriangleMesh mesh;
  switch (format) {
    case MeshFormat::Obj: mesh = parse_obj(data); break;
    case MeshFormat::Ply: mesh = parse_ply(data); break;
    case MeshFormat::Stl: mesh = parse_stl(data); break;
  }
  const int nv = static_cast<int>(mesh.vertices.size());
  for (const Face& f : mesh.faces) {
    for (int k : f) {
      if (k < 0 || k >= nv) throw MeshIoError("face index out of range in " + path.string());
    }
  }
  for (const Vec3& v : mesh.vertices) {
    if (!v.allFinite()) throw MeshIoError("non-finite vertex coordinate in " + path.string());
  }
  const std::size_t dropped = remove_degenerate_faces(mesh);
  if (mesh.faces.empty()) throw MeshIoError("empty mesh after cleaning: " + path.string());
  orient_outward(mesh);
  if (report) {
    report->vertex_count = mesh.vertex_count();
    report->face_count = mesh.face_count();
    report->dropped_faces = dropped;
  }
  return mesh;
}

void save_obj(const std::filesystem::path& path, const TriangleMesh& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 64 + mesh.faces.size() * 24);
  for (const Vec3& v : mesh.vertices) {
    out += "v " + fmt_double(v.x()) + " " + fmt_double(v.y()) + " " + fmt_double(v.z()) + "\n";
  }
  for (const Face& f : mesh.faces) {
    out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " +
           std::to_string(f[2] + 1) + "\n";
  }
  write_or_throw(path, out);
}

void save_ply(const std::filesystem::path& path, const TriangleMesh& mesh, bool binary) {
  std::string out = "ply\nformat ";
  out += binary ? "binary_little_endian 1.0\n" : "ascii 1.0\n";
  out += "element vertex " + std::to_string(mesh.vertices.size()) + "\n";
  out += "property double x\nproperty double y\nproperty double z\n";
  out += "element face " + std::to_string(mesh.faces.size()) + "\n";
  out += "property list uchar int vertex_indices\nend_header\n";
  static_assert(std::endian::native == std::endian::little, "binary PLY writer assumes little endian");
  if (binary) {
    for (const Vec3& v : mesh.vertices) {
      const double xyz[3] = {v.x(), v.y(), v.z()};
      out.append(reinterpret_cast<const char*>(xyz), sizeof(xyz));
    }
    for (const Face& f : mesh.faces) {
      out.push_back(static_cast<char>(3));
      const std::int32_t idx[3] = {f[0], f[1], f[2]};
      out.append(reinterpret_cast<const char*>(idx), sizeof(idx));
    }
  } else {
    for (const Vec3& v : mesh.vertices) {
      out += fmt_double(v.x()) + " " + fmt_double(v.y()) + " " + fmt_double(v.z()) + "\n";
    }
    for (const Face& f : mesh.faces) {
      out += "3 " + std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]) + "\n";
    }
  }
  write_or_throw(path, out);
}

void save_stl(const std::filesystem::path& path, const TriangleMesh& mesh, bool binary) {
  std::string out;
  TriangleMesh m = mesh;
  m.update_normals();
  if (binary) {
    out.assign(80, '\0');
    const std::uint32_t n = static_cast<std::uint32_t>(m.faces.size());
    out.append(reinterpret_cast<const char*>(&n), 4);
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
      float rec[12];
      for (int k = 0; k < 3; ++k) rec[k] = static_cast<float>(m.normals[f][k]);
      for (int c = 0; c < 3; ++c) {
        for (int k = 0; k < 3; ++k) rec[3 + 3 * c + k] = static_cast<float>(m.corner(f, c)[k]);
      }
      out.append(reinterpret_cast<const char*>(rec), sizeof(rec));
      out.append(2, '\0');
    }
  } else {
    out = "solid gbh\n";
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
      const Vec3& n = m.normals[f];
      out += " facet normal " + fmt_double(n.x()) + " " + fmt_double(n.y()) + " " + fmt_double(n.z()) +
             "\n  outer loop\n";
      for (int c = 0; c < 3; ++c) {
        const Vec3 v = m.corner(f, c);
        out += "   vertex " + fmt_double(v.x()) + " " + fmt_double(v.y()) + " " + fmt_double(v.z()) + "\n";
      }
      out += "  endloop\n endfacet\n";
    }
    out += "endsolid gbh\n";
  }
  write_or_throw(path, out);
}

void save_mesh(const std::filesystem::path& path, const TriangleMesh& mesh) {
  switch (format_from_extension(path)) {
    case MeshFormat::Obj: save_obj(path, mesh); break;
    case MeshFormat::Ply: save_ply(path, mesh); break;
    case MeshFormat::Stl: save_stl(path, mesh); break;
  }
}

void save_ply_scene(const std::filesystem::path& path, const PlyScene& scene) {
  const bool colored = !scene.colors.empty();
  if (colored && scene.colors.size() != scene.vertices.size()) {
    throw Error("PLY scene color count does not match vertex count");
  }
  std::string out = "ply\nformat ascii 1.0\n";
  out += "element vertex " + std::to_string(scene.vertices.size()) + "\n";
  out += "property double x\nproperty double y\nproperty double z\n";
  if (colored) out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  if (!scene.faces.empty()) {
    out += "element face " + std::to_string(scene.faces.size()) + "\n";
    out += "property list uchar int vertex_indices\n";
  }
  if (!scene.edges.empty()) {
    out += "element edge " + std::to_string(scene.edges.size()) + "\n";
    out += "property int vertex1\nproperty int vertex2\n";
  }
  out += "end_header\n";
  for (std::size_t i = 0; i < scene.vertices.size(); ++i) {
    const Vec3& v = scene.vertices[i];
    out += fmt_double(v.x()) + " " + fmt_double(v.y()) + " " + fmt_double(v.z());
    if (colored) {
      for (std::uint8_t c : scene.colors[i]) out += " " + std::to_string(c);
    }
    out += "\n";
  }
  for (const Face& f : scene.faces) {
    out += "3 " + std::to_string(f[0]) + " " + std::to_string(f[1]) + " " + std::to_string(f[2]) + "\n";
  }
  for (const auto& [a, b] : scene.edges) out += std::to_string(a) + " " + std::to_string(b) + "\n";
  write_or_throw(path, out);
}

}  // namespace gbh
