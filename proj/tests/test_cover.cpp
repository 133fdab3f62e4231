#include <catch2/catch_amalgamated.hpp>

#include "wb/cover.hpp"

using namespace wb;

static const std::vector<CoverSpec> kSpecs{
    {{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}, {{1, 1, 1}},
    {{2, 1, 1}}, {{1, 2, 3}}, {{0, 1, 2}},
};

TEST_CASE("graded lift phases") {
  SECTION("the balanced cover") {
    CoverSpec s{{1, 1, 1}};
    auto lifts = lift_table(s);
    REQUIRE(lifts.size() == 9);
    CHECK(lifts[0].arc == 1);
    CHECK(lifts[0].sheet == 0);
    CHECK(lifts[0].phase_num == -1);  // phase -1/3
  }
  SECTION("a single sheet has phases (-d2, 0, d3)") {
    CoverSpec s{{1, 0, 0}};
    auto lifts = lift_table(s);
    REQUIRE(lifts.size() == 3);
    CHECK(lifts[0].phase_num == 0);  // -d2 = 0
    CHECK(lifts[1].phase_num == 0);
    CHECK(lifts[2].phase_num == 0);
    CoverSpec t{{0, 1, 0}};
    CHECK(lift_table(t)[0].phase_num == -1);
  }
  SECTION("within an arc, lifts are distinct and differ by multiples of 2/D") {
    for (const CoverSpec& s : kSpecs) {
      auto lifts = lift_table(s);
      for (auto& a : lifts)
        for (auto& b : lifts)
          if (a.arc == b.arc) {
            CHECK((a.phase_num - b.phase_num) % 2 == 0);
            if (a.sheet != b.sheet) CHECK(a.phase_num != b.phase_num);
          }
    }
  }
  SECTION("degenerate covers are rejected") {
    CHECK_THROWS_AS(lift_table(CoverSpec{{0, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(lift_table(CoverSpec{{1, -1, -1}}), std::invalid_argument);
  }
}

TEST_CASE("the induced grading on the base") {
  CoverSpec s{{1, 1, 1}};
  Grading g = cover_grading(s);
  CHECK(g.D == 3);
  CHECK(g.P == std::vector<long>{1, -1, 3});
  CHECK(g.Q == std::vector<long>{1, 3, -1});
  // degree numerators encode winding and parity: the identity
  // deg = 2 shift + D weight (mod 2D) drives the divisibility rule
  for (const CoverSpec& sp : kSpecs) {
    Grading gg = cover_grading(sp);
    long D = sp.D();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (const BM& m : hom_basis(gg, i, j, 9)) {
          long lhs = bm_deg_num(gg, m) - 2 * sheet_shift(sp, m) - D * bm_weight(m);
          CHECK(((lhs % (2 * D)) + 2 * D) % (2 * D) == 0);
        }
  }
}

TEST_CASE("divisibility rule for lifted chords") {
  CoverSpec s{{1, 1, 1}};
  SECTION("from the middle arc down: v x^m with 3 | m") {
    auto basis = cover_hom_basis(s, {1, 0}, {0, 0}, 20);
    REQUIRE(basis.size() == 4);  // m = 0, 3, 6, 9 under the weight cap
    for (size_t t = 0; t < basis.size(); ++t) {
      CHECK(basis[t].kind == Kind::V);
      CHECK(basis[t].src == 1);
      CHECK(basis[t].exp == static_cast<int>(3 * t));
    }
  }
  SECTION("from the middle arc up: x^m u with 3 | m") {
    auto basis = cover_hom_basis(s, {1, 0}, {2, 0}, 20);
    REQUIRE(basis.size() == 4);
    for (size_t t = 0; t < basis.size(); ++t) {
      CHECK(basis[t].kind == Kind::U);
      CHECK(basis[t].src == 1);
      CHECK(basis[t].exp == static_cast<int>(3 * t));
    }
  }
  SECTION("a single sheet imposes no condition") {
    CoverSpec t{{1, 0, 0}};
    Grading g = cover_grading(t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(cover_hom_basis(t, {i, 0}, {j, 0}, 10).size() ==
              hom_basis(g, i, j, 10).size());
  }
}

TEST_CASE("cover chords coincide with the tilde construction") {
  for (const CoverSpec& s : kSpecs) {
    Grading g = cover_grading(s);
    long D = s.D();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (long k = 0; k < D; ++k)
          for (long l = 0; l < D; ++l) {
            auto got = cover_hom_basis(s, {i, k}, {j, l}, 12);
            auto want = tilde_hom_basis(g, {i, k}, {j, l}, 12);
            REQUIRE(got.size() == want.size());
            for (size_t t = 0; t < got.size(); ++t)
              CHECK(got[t].encode() == want[t].encode());
          }
  }
}

TEST_CASE("phase differences reproduce the integral degrees") {
  for (const CoverSpec& s : kSpecs) {
    Grading g = cover_grading(s);
    long D = s.D();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (const BM& m : hom_basis(g, i, j, 8))
          for (long k = 0; k < D; ++k)
            for (long l = 0; l < D; ++l) {
              auto a = cover_lift_degree(s, m, k, l);
              auto b = tilde_degree(g, m, k, l);
              CHECK(a.has_value() == b.has_value());
              if (a && b) CHECK(*a == *b);
            }
  }
}
