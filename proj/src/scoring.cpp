#include "gbh/scoring.hpp"

#include "gbh/gripper.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace gbh {

void ScoreConfig::validate() const {
  if (!(gamma_alpha > 0.0) || !std::isfinite(gamma_alpha)) throw PreconditionError("score.gamma_alpha must be positive");
  if (!(gamma_beta > 0.0) || !std::isfinite(gamma_beta)) throw PreconditionError("score.gamma_beta must be positive");
  if (!anti_gravity.allFinite() || std::abs(anti_gravity.norm() - 1.0) > 1e-6) {
    throw PreconditionError("score.anti_gravity must be a unit vector");
  }
}

double direction_score(double alpha, double gamma_alpha) { return std::exp(-alpha * alpha / gamma_alpha); }

double completeness_score(double beta, double gamma_beta) { return std::exp(-beta * beta / gamma_beta); }

namespace {

double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

const Vec3 kN1(0.0, 0.0, -1.0);
const Vec3 kN2(-1.0, 0.0, 0.0);

}  // namespace

std::pair<double, double> score_direction(const GraspCandidate& cand, const ScoreConfig& cfg) {
  const double alpha = clamped_acos((cand.pose.rotation * kN1).dot(cfg.anti_gravity));
  return {alpha, direction_score(alpha, cfg.gamma_alpha)};
}

std::pair<std::optional<double>, double> score_completeness(const GraspCandidate& cand, const HangRecord& hang,
                                                            const ScoreConfig& cfg) {
  if (hang.m == 1.0) return {std::nullopt, 1.0};
  if (!hang.a) throw PreconditionError("hang record with m < 1 has no open direction");
  const Vec3 axis = cand.pose.rotation * (cand.kind == GraspKind::Parallel ? kN1 : kN2);
  const double beta = clamped_acos(hang.a->dot(axis));
  return {beta, completeness_score(beta, cfg.gamma_beta)};
}

ScoreBreakdown score_total(const GraspCandidate& cand, const HangRecord& hang, const ScoreConfig& cfg) {
  ScoreBreakdown s;
  std::tie(s.alpha, s.s_alpha) = score_direction(cand, cfg);
  std::tie(s.beta, s.s_beta) = score_completeness(cand, hang, cfg);
  s.m = hang.m;
  s.s_total = s.m * s.s_beta * s.s_alpha;
  return s;
}

void score_all(std::vector<GraspCandidate>& cands, const std::vector<HangRecord>& hangs, const ScoreConfig& cfg) {
  cfg.validate();
  for (GraspCandidate& c : cands) {
    if (c.hang_index < 0 || c.hang_index >= static_cast<int>(hangs.size())) {
      throw PreconditionError("candidate references a missing hang record");
    }
    c.score = score_total(c, hangs[c.hang_index], cfg);
  }
}

bool ranks_before(const GraspCandidate& a, const GraspCandidate& b) {
  const double sa = a.score ? a.score->s_total : 0.0;
  const double sb = b.score ? b.score->s_total : 0.0;
  if (sa != sb) return sa > sb;
  return std::make_tuple(static_cast<int>(a.kind), a.hang_index, a.contact_index, a.sign_index) <
         std::make_tuple(static_cast<int>(b.kind), b.hang_index, b.contact_index, b.sign_index);
}

std::vector<GraspCandidate> rank_top_k(std::vector<GraspCandidate> cands, std::size_t k) {
  for (const GraspCandidate& c : cands) {
    if (!c.score) throw PreconditionError("rank_top_k: unscored candidate");
  }
  std::stable_sort(cands.begin(), cands.end(), ranks_before);
  if (cands.size() > k) cands.resize(k);
  return cands;
}

}  // namespace gbh
