#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "gbh/scoring.hpp"

#include <numbers>

using gbh::Vec3;

namespace {

constexpr double kPi = std::numbers::pi;

// Pose whose wrist axis R (0,0,-1) makes angle alpha with +z.
gbh::RigidTransform tilted(double alpha) {
  gbh::RigidTransform t;
  t.rotation = Eigen::AngleAxisd(kPi - alpha, Vec3::UnitX()).toRotationMatrix();
  return t;
}

gbh::GraspCandidate cand(gbh::GraspKind kind, double s_total, int hang = 0, int contact = 0, int sign = 0) {
  gbh::GraspCandidate c;
  c.kind = kind;
  c.hang_index = hang;
  c.contact_index = contact;
  c.sign_index = sign;
  c.score = gbh::ScoreBreakdown{};
  c.score->s_total = s_total;
  return c;
}

gbh::HangRecord open_record(double m, const Vec3& a) {
  gbh::HangRecord h;
  h.v = Vec3::UnitY();
  h.m = m;
  h.a = a;
  h.contacts = {Vec3(0.01, 0, 0)};
  return h;
}

}  // namespace

TEST_CASE("direction score values") {
  CHECK(gbh::direction_score(0.0, 0.04) == 1.0);
  CHECK(gbh::direction_score(0.2, 0.04) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(gbh::direction_score(0.2, 0.04) == doctest::Approx(0.367879).epsilon(1e-6));
  const double s = gbh::direction_score(kPi / 2, 0.04);
  CHECK(s == doctest::Approx(std::exp(-61.68502750680849)).epsilon(1e-9));
  CHECK(s > 1.5e-27);
  CHECK(s < 1.7e-27);
}

TEST_CASE("score_direction reads the wrist axis against anti-gravity") {
  const gbh::ScoreConfig cfg;
  gbh::GraspCandidate c;
  c.pose = tilted(0.0);
  auto [alpha, s] = gbh::score_direction(c, cfg);
  CHECK(std::abs(alpha) < 1e-7);
  CHECK(s == doctest::Approx(1.0));
  c.pose = tilted(0.2);
  std::tie(alpha, s) = gbh::score_direction(c, cfg);
  CHECK(alpha == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(s == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  // top-down (wrist up) beats bottom-up
  c.pose = tilted(kPi);
  std::tie(alpha, s) = gbh::score_direction(c, cfg);
  CHECK(alpha == doctest::Approx(kPi));
}

TEST_CASE("completeness score values") {
  CHECK(gbh::completeness_score(0.0, 2.0) == 1.0);
  CHECK(gbh::completeness_score(kPi / 2, 2.0) == doctest::Approx(0.291214).epsilon(1e-5));

  const gbh::ScoreConfig cfg;
  gbh::GraspCandidate c;
  c.kind = gbh::GraspKind::Parallel;
  gbh::HangRecord full;
  full.m = 1.0;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    c.pose = oracle::random_pose(rng, 1.0);
    const auto [beta, s] = gbh::score_completeness(c, full, cfg);
    CHECK_FALSE(beta.has_value());
    CHECK(s == 1.0);
  }

  // parallel uses the wrist axis, vertical the rod axis
  c.pose = gbh::RigidTransform{};
  auto [beta, s] = gbh::score_completeness(c, open_record(0.5, Vec3(0, 0, -1)), cfg);
  REQUIRE(beta.has_value());
  CHECK(*beta == 0.0);
  CHECK(s == 1.0);
  std::tie(beta, s) = gbh::score_completeness(c, open_record(0.5, Vec3(-1, 0, 0)), cfg);
  CHECK(*beta == doctest::Approx(kPi / 2));
  CHECK(s == doctest::Approx(0.291214).epsilon(1e-5));

  c.kind = gbh::GraspKind::Vertical;
  std::tie(beta, s) = gbh::score_completeness(c, open_record(0.5, Vec3(-1, 0, 0)), cfg);
  CHECK(*beta == 0.0);
  std::tie(beta, s) = gbh::score_completeness(c, open_record(0.5, Vec3(1, 0, 0)), cfg);
  CHECK(*beta == doctest::Approx(kPi));

  gbh::HangRecord broken = open_record(0.5, Vec3::UnitX());
  broken.a.reset();
  CHECK_THROWS_AS(gbh::score_completeness(c, broken, cfg), gbh::PreconditionError);
}

TEST_CASE("total score is the product") {
  const gbh::ScoreConfig cfg;
  gbh::GraspCandidate c;
  c.kind = gbh::GraspKind::Parallel;
  c.pose = tilted(0.0);
  gbh::HangRecord full;
  full.m = 1.0;
  CHECK(gbh::score_total(c, full, cfg).s_total == doctest::Approx(1.0));

  // m = 0.5, beta = pi/2, alpha = 0.2
  c.pose = tilted(0.2);
  const Vec3 wrist = c.pose.rotation * Vec3(0, 0, -1);
  const Vec3 a = wrist.cross(Vec3::UnitX()).normalized();
  const gbh::ScoreBreakdown b = gbh::score_total(c, open_record(0.5, a), cfg);
  CHECK(b.m == 0.5);
  CHECK(*b.beta == doctest::Approx(kPi / 2));
  CHECK(b.s_total == doctest::Approx(0.053571).epsilon(1e-4));
  CHECK(b.s_total == b.m * b.s_beta * b.s_alpha);
  CHECK(b.s_total <= std::min({b.m, b.s_beta, b.s_alpha}));
}

TEST_CASE("scores decrease with angle") {
  double prev_a = 2.0, prev_b = 2.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = kPi * i / 100;
    const double sa = gbh::direction_score(x, 0.04);
    const double sb = gbh::completeness_score(x, 2.0);
    // s_alpha underflows to 0 near pi; strictness holds while it is normal
    if (sa > 1e-300) CHECK(sa < prev_a);
    CHECK(sb < prev_b);
    prev_a = sa;
    prev_b = sb;
  }
}

TEST_CASE("ScoreConfig validation") {
  gbh::ScoreConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.gamma_alpha = 0;
  CHECK_THROWS_AS(cfg.validate(), gbh::PreconditionError);
  cfg = {};
  cfg.gamma_beta = -1;
  CHECK_THROWS_AS(cfg.validate(), gbh::PreconditionError);
  cfg = {};
  cfg.anti_gravity = Vec3(0, 0, 2);
  CHECK_THROWS_AS(cfg.validate(), gbh::PreconditionError);
}

TEST_CASE("rank_top_k examples") {
  using K = gbh::GraspKind;
  std::vector<gbh::GraspCandidate> cs = {cand(K::Parallel, 0.9), cand(K::Parallel, 0.5, 0, 1),
                                         cand(K::Parallel, 0.7, 0, 2)};
  auto top = gbh::rank_top_k(cs, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].score->s_total == 0.9);
  CHECK(top[1].score->s_total == 0.7);

  cs.push_back(cand(K::Vertical, 0.1));
  CHECK(gbh::rank_top_k(cs, 10).size() == 4);
  CHECK(gbh::rank_top_k(cs, 0).empty());

  cs.push_back(gbh::GraspCandidate{});
  CHECK_THROWS_AS(gbh::rank_top_k(cs, 3), gbh::PreconditionError);
}

TEST_CASE("rank_top_k tie-break and scale invariance") {
  using K = gbh::GraspKind;
  std::vector<gbh::GraspCandidate> cs = {cand(K::Vertical, 0.5, 0, 0, 0), cand(K::Parallel, 0.5, 1, 0, 0),
                                         cand(K::Parallel, 0.5, 0, 3, 1), cand(K::Parallel, 0.5, 0, 3, 0),
                                         cand(K::Vertical, 0.6, 2, 0, 0)};
  const auto top = gbh::rank_top_k(cs, 5);
  const auto key = [](const gbh::GraspCandidate& c) {
    return std::tuple(static_cast<int>(c.kind), c.hang_index, c.contact_index, c.sign_index);
  };
  CHECK(key(top[0]) == std::tuple(1, 2, 0, 0));
  CHECK(key(top[1]) == std::tuple(0, 0, 3, 0));
  CHECK(key(top[2]) == std::tuple(0, 0, 3, 1));
  CHECK(key(top[3]) == std::tuple(0, 1, 0, 0));
  CHECK(key(top[4]) == std::tuple(1, 0, 0, 0));

  // every input permutation gives the same order
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(cs.begin(), cs.end(), rng);
    const auto again = gbh::rank_top_k(cs, 5);
    for (std::size_t j = 0; j < top.size(); ++j) CHECK(key(again[j]) == key(top[j]));
  }

  auto scaled = cs;
  for (auto& c : scaled) c.score->s_total *= 0.37;
  const auto top_scaled = gbh::rank_top_k(scaled, 5);
  for (std::size_t j = 0; j < top.size(); ++j) CHECK(key(top_scaled[j]) == key(top[j]));
}

TEST_CASE("score_all is reproducible bitwise") {
  std::mt19937_64 rng(12);
  std::vector<gbh::HangRecord> hangs = {open_record(1.0, Vec3::UnitX()), open_record(0.7, Vec3::UnitX())};
  hangs[0].a.reset();
  std::vector<gbh::GraspCandidate> cs;
  for (int i = 0; i < 50; ++i) {
    gbh::GraspCandidate c;
    c.kind = i % 2 ? gbh::GraspKind::Vertical : gbh::GraspKind::Parallel;
    c.hang_index = i % 2;
    c.pose = oracle::random_pose(rng, 0.2);
    cs.push_back(c);
  }
  const gbh::ScoreConfig cfg;
  gbh::score_all(cs, hangs, cfg);
  for (const auto& c : cs) {
    REQUIRE(c.score.has_value());
    const gbh::ScoreBreakdown b = gbh::score_total(c, hangs[c.hang_index], cfg);
    CHECK(b.s_total == c.score->s_total);
    CHECK(b.alpha == c.score->alpha);
    CHECK(b.s_beta == c.score->s_beta);
    CHECK(b.beta == c.score->beta);
    if (hangs[c.hang_index].m == 1.0) CHECK(c.score->s_total == c.score->s_alpha);
    CHECK(c.score->s_total > 0.0);
    CHECK(c.score->s_total <= 1.0);
  }
}
