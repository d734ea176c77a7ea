#include "gbh/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace gbh {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::int64_t v = 0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_nonneg(const std::string& key, const std::string& text) {
  const std::int64_t v = parse_int(key, text);
  if (v < 0) throw ConfigError(key + ": must be non-negative");
  return static_cast<std::uint64_t>(v);
}

Vec3 parse_vec3(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw ConfigError(key + ": expected [x, y, z], got '" + text + "'");
  }
  std::vector<double> parts;
  std::stringstream ss(t.substr(1, t.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(parse_double(key, item));
  if (parts.size() != 3) throw ConfigError(key + ": expected 3 components");
  const Vec3 v(parts[0], parts[1], parts[2]);
  if (!(v.norm() > 0.0)) throw ConfigError(key + ": must be a non-zero vector");
  return v.normalized();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Vec3& v) { return "[" + fmt(v.x()) + ", " + fmt(v.y()) + ", " + fmt(v.z()) + "]"; }

using Setter = std::function<void(PipelineConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"hang.sample_count", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.hang.sample_count = parse_nonneg(k, v); }},
      {"hang.normal_cone_deg", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.hang.normal_cone_deg = parse_double(k, v); }},
      {"hang.cluster_radius", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.hang.cluster_radius = parse_double(k, v); }},
      {"hang.segment_samples", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.hang.segment_samples = static_cast<int>(parse_int(k, v)); }},
      {"hang.plane_count", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.hang.plane_count = static_cast<int>(parse_int(k, v)); }},
      {"hang.rays_per_plane", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.hang.rays_per_plane = static_cast<int>(parse_int(k, v)); }},
      {"hang.min_m", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.hang.min_m = parse_double(k, v); }},
      {"hang.min_clearance", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.hang.min_clearance = parse_double(k, v); }},
      {"gen.d1", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gen.d1 = parse_double(k, v); }},
      {"gen.p_theta", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gen.p_theta = parse_double(k, v); }},
      {"gen.p_c", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gen.p_c = static_cast<int>(parse_int(k, v)); }},
      {"gen.ground_normal", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gen.ground_normal = parse_vec3(k, v); }},
      {"gen.gravity_dir", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gen.gravity_dir = parse_vec3(k, v); }},
      {"score.gamma_alpha", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.score.gamma_alpha = parse_double(k, v); }},
      {"score.gamma_beta", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.score.gamma_beta = parse_double(k, v); }},
      {"score.anti_gravity", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.score.anti_gravity = parse_vec3(k, v); }},
      {"gripper.l_f", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gripper.l_f = parse_double(k, v); }},
      {"gripper.l_w", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gripper.l_w = parse_double(k, v); }},
      {"gripper.l_h", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gripper.l_h = parse_double(k, v); }},
      {"gripper.l_b", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gripper.l_b = parse_double(k, v); }},
      {"gripper.rod_radius", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gripper.rod_radius = parse_double(k, v); }},
      {"gripper.slab_half_thickness", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gripper.slab_half_thickness = parse_double(k, v); }},
      {"gripper.opening", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.gripper.opening = parse_double(k, v); }},
      {"run.top_k", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.top_k = parse_nonneg(k, v); }},
      {"run.seed", [](PipelineConfig& c, const std::string& k, const std::string& v) { c.seed = parse_nonneg(k, v); }},
      {"run.profile", [](PipelineConfig& c, const std::string&, const std::string& v) { c.profile = unquote(trim(v)); }},
  };
  return table;
}

}  // namespace

void PipelineConfig::apply_profile() {
  if (profile == "full") {
    gen.d2 = 0.0;
  } else if (profile == "single") {
    gen.d2 = 0.005;
  } else {
    throw ConfigError("run.profile: expected 'full' or 'single', got '" + profile + "'");
  }
}

void PipelineConfig::validate() const {
  try {
    hang.validate();
    gen.validate();
    score.validate();
    gripper.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  if (top_k < 1) throw ConfigError("run.top_k must be positive");
  if (profile != "full" && profile != "single") {
    throw ConfigError("run.profile: expected 'full' or 'single', got '" + profile + "'");
  }
}

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  bool anti_gravity_set = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos) {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key + ": unknown config key");
    it->second(cfg, key, trim(line.substr(eq + 1)));
    if (key == "score.anti_gravity") anti_gravity_set = true;
  }
  if (!anti_gravity_set) cfg.score.anti_gravity = -cfg.gen.gravity_dir;
  cfg.apply_profile();
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("unreadable config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const PipelineConfig& c) {
  std::map<std::string, std::string> kv = {
      {"gen.d1", fmt(c.gen.d1)},
      {"gen.ground_normal", fmt(c.gen.ground_normal)},
      {"gen.gravity_dir", fmt(c.gen.gravity_dir)},
      {"gen.p_c", std::to_string(c.gen.p_c)},
      {"gen.p_theta", fmt(c.gen.p_theta)},
      {"gripper.l_b", fmt(c.gripper.l_b)},
      {"gripper.l_f", fmt(c.gripper.l_f)},
      {"gripper.l_h", fmt(c.gripper.l_h)},
      {"gripper.l_w", fmt(c.gripper.l_w)},
      {"gripper.opening", fmt(c.gripper.opening)},
      {"gripper.rod_radius", fmt(c.gripper.rod_radius)},
      {"gripper.slab_half_thickness", fmt(c.gripper.slab_half_thickness)},
      {"hang.cluster_radius", fmt(c.hang.cluster_radius)},
      {"hang.min_clearance", fmt(c.hang.min_clearance)},
      {"hang.min_m", fmt(c.hang.min_m)},
      {"hang.normal_cone_deg", fmt(c.hang.normal_cone_deg)},
      {"hang.plane_count", std::to_string(c.hang.plane_count)},
      {"hang.rays_per_plane", std::to_string(c.hang.rays_per_plane)},
      {"hang.sample_count", std::to_string(c.hang.sample_count)},
      {"hang.segment_samples", std::to_string(c.hang.segment_samples)},
      {"run.profile", c.profile},
      {"run.seed", std::to_string(c.seed)},
      {"run.top_k", std::to_string(c.top_k)},
      {"score.anti_gravity", fmt(c.score.anti_gravity)},
      {"score.gamma_alpha", fmt(c.score.gamma_alpha)},
      {"score.gamma_beta", fmt(c.score.gamma_beta)},
  };
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string config_hash(const PipelineConfig& cfg) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canonical_config(cfg)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gbh
