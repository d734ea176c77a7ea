// Grasp scores: direction against gravity, free-space completeness, total,
// and the top-k ranking.
#pragma once

#include "gbh/grasp_gen.hpp"
#include "gbh/hangability.hpp"

#include <utility>
#include <vector>

namespace gbh {

struct ScoreConfig {
  double gamma_alpha = 0.04;
  double gamma_beta = 2.0;
  Vec3 anti_gravity = Vec3::UnitZ();

  /// Throws PreconditionError naming the offending field ("score.<name>").
  void validate() const;
};

double direction_score(double alpha, double gamma_alpha);
double completeness_score(double beta, double gamma_beta);

/// (alpha, s_alpha) with alpha the angle between R n1 and anti_gravity.
std::pair<double, double> score_direction(const GraspCandidate& cand, const ScoreConfig& cfg);

/// (beta, s_beta); beta is absent and s_beta = 1 when hang.m == 1. Throws
/// PreconditionError if m < 1 and the record has no open direction.
std::pair<std::optional<double>, double> score_completeness(const GraspCandidate& cand, const HangRecord& hang,
                                                            const ScoreConfig& cfg);

ScoreBreakdown score_total(const GraspCandidate& cand, const HangRecord& hang, const ScoreConfig& cfg);

/// Scores every candidate in place against hangs[cand.hang_index].
void score_all(std::vector<GraspCandidate>& cands, const std::vector<HangRecord>& hangs, const ScoreConfig& cfg);

/// Strict weak order: s_total descending, then kind, hang, contact, signs.
bool ranks_before(const GraspCandidate& a, const GraspCandidate& b);

/// The k best scored candidates. Throws PreconditionError on an unscored one.
std::vector<GraspCandidate> rank_top_k(std::vector<GraspCandidate> cands, std::size_t k);

}  // namespace gbh
