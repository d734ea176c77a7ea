#include "gbh/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gbh {
namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays (points, rotations) stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      out += '[';
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      // -0 would re-parse as the integer 0.
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& doc, int indent) {
  std::string out;
  write(doc, indent, 0, out);
  out += '\n';
  return out;
}

Json to_json(const Vec3& p) { return Json::array({p.x(), p.y(), p.z()}); }

Vec3 vec3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw Error("expected a 3-element array");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Json to_json(const HangRecord& rec) {
  Json j;
  j["c"] = to_json(rec.c);
  j["v"] = to_json(rec.v);
  j["m"] = rec.m;
  j["a"] = rec.a ? to_json(*rec.a) : Json(nullptr);
  Json contacts = Json::array();
  for (const Vec3& h : rec.contacts) contacts.push_back(to_json(h));
  j["contacts"] = std::move(contacts);
  return j;
}

Json to_json(const GraspCandidate& cand, int rank) {
  Json j;
  j["rank"] = rank;
  j["kind"] = to_string(cand.kind);
  j["hang_index"] = cand.hang_index;
  j["contact"] = to_json(cand.contact);
  Json rot = Json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) rot.push_back(cand.pose.rotation(r, c));
  }
  j["rotation"] = std::move(rot);
  j["translation"] = to_json(cand.pose.translation);
  j["q_m"] = cand.q_m ? to_json(*cand.q_m) : Json(nullptr);
  j["n_collisions"] = cand.n_collisions;
  Json score;
  if (cand.score) {
    const ScoreBreakdown& s = *cand.score;
    score["alpha"] = s.alpha;
    score["s_alpha"] = s.s_alpha;
    score["beta"] = s.beta ? Json(*s.beta) : Json(nullptr);
    score["s_beta"] = s.s_beta;
    score["m"] = s.m;
    score["s_total"] = s.s_total;
  }
  j["score"] = std::move(score);
  return j;
}

Json make_document(const std::string& mesh, const std::string& config_hash, const Vec3& com,
                   const std::vector<HangRecord>& hangs, const std::vector<GraspCandidate>* grasps) {
  Json doc;
  doc["mesh"] = mesh;
  doc["config_hash"] = config_hash;
  doc["com"] = to_json(com);
  Json hj = Json::array();
  for (const HangRecord& h : hangs) hj.push_back(to_json(h));
  doc["hangs"] = std::move(hj);
  if (grasps) {
    Json gj = Json::array();
    for (std::size_t i = 0; i < grasps->size(); ++i) gj.push_back(to_json((*grasps)[i], static_cast<int>(i) + 1));
    doc["grasps"] = std::move(gj);
  }
  return doc;
}

}  // namespace gbh
