// Pipeline configuration: one flat key/value file covering every stage.
#pragma once

#include "gbh/grasp_gen.hpp"
#include "gbh/gripper.hpp"
#include "gbh/hangability.hpp"
#include "gbh/scoring.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace gbh {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct PipelineConfig {
  HangConfig hang;
  GenConfig gen;
  ScoreConfig score;
  GripperModel gripper;
  std::size_t top_k = 10;
  std::uint64_t seed = 0;
  std::string profile = "full";

  /// d2 follows the viewpoint profile: "full" -> 0, "single" -> 0.005.
  void apply_profile();
  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Parses `key = value` lines. Keys are namespaced hang.*, gen.*, score.*,
/// gripper.*, run.*; a `[section]` header prefixes the keys that follow.
/// Values are numbers, quoted or bare strings, or `[x, y, z]` vectors.
/// `#` starts a comment. Unknown keys and bad values throw ConfigError.
PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Every field as sorted `key = value` lines with 17-digit numbers.
std::string canonical_config(const PipelineConfig& cfg);

/// 64-bit FNV-1a of canonical_config, as 16 hex digits.
std::string config_hash(const PipelineConfig& cfg);

}  // namespace gbh
