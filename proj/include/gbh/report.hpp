// JSON documents written by the command-line tool.
#pragma once

#include "gbh/grasp_gen.hpp"
#include "gbh/hangability.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace gbh {

using Json = nlohmann::ordered_json;

/// Serializes with every double at 17 significant digits; non-finite
/// numbers become null. Parsing the result and dumping again is identity.
std::string dump_json(const Json& doc, int indent = 2);

Json to_json(const Vec3& p);
Json to_json(const HangRecord& rec);
Json to_json(const GraspCandidate& cand, int rank);

Vec3 vec3_from_json(const Json& j);

/// {mesh, config_hash, com, hangs} plus grasps when `grasps` is non-null.
Json make_document(const std::string& mesh, const std::string& config_hash, const Vec3& com,
                   const std::vector<HangRecord>& hangs, const std::vector<GraspCandidate>* grasps);

}  // namespace gbh
