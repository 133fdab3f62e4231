#include <catch2/catch_amalgamated.hpp>

#include "wb/category.hpp"

using namespace wb;

static Grading g3() { return Grading(3, {1, 1, -1}, {1, -1, 1}); }

// canonical all-odd grading with sum n-2: p = q = (1,...,1,-1)
static Grading gcanon(int n) {
  std::vector<long> p(n, 1);
  p[n - 1] = -1;
  return Grading(n, p, p);
}

TEST_CASE("grading validation") {
  CHECK_NOTHROW(Grading(3, {1, 1, -1}, {1, -1, 1}));
  CHECK_NOTHROW(Grading(4, {1, 1, 1, -1}, {1, 1, 1, -1}));
  CHECK_THROWS_AS(Grading(3, {2, 0, -1}, {1, -1, 1}), GradingError);       // even entries
  CHECK_THROWS_AS(Grading(3, {1, 1, 1}, {1, -1, 1}), GradingError);        // sum != n-2
  CHECK_THROWS_AS(Grading(3, {1, -1, 3}, {1, 3, -1}, 2), GradingError);    // parity vs D
  CHECK_NOTHROW(Grading(3, {1, -1, 3}, {1, 3, -1}, 3));
}

TEST_CASE("degrees of generators") {
  Grading gc = gcanon(3);
  // u out of object i has degree P[next(i)]
  CHECK(bm_deg_num(gc, bm_u(0)) == gc.P[1]);
  CHECK(bm_deg_num(gc, bm_u(2)) == gc.P[0]);
  CHECK(bm_deg_num(gc, bm_v(1)) == gc.Q[1]);
  // x_i^k has degree 2k d_i, y_i^k has degree 2k d_{i+1}
  CHECK(bm_deg_num(gc, bm_x(0, 2)) == 4 * gc.dd[0]);
  CHECK(bm_deg_num(gc, bm_y(0, 2)) == 4 * gc.dd[1]);
  // weight parity = degree parity for D = 1
  for (int i = 0; i < 3; ++i)
    for (const BM& m : hom_basis(gc, i, i, 6))
      CHECK((bm_deg_num(gc, m) & 1) == (bm_weight(m) & 1));
}

TEST_CASE("composition rules") {
  Grading g = g3();
  // u12 . v21 = x2 ; v21 . u12 = y1  (1-based); 0-based: u out of 0, v out of 1
  auto x = compose(g, bm_u(0), bm_v(1));
  REQUIRE(x.has_value());
  CHECK(*x == bm_x(1, 1));
  auto y = compose(g, bm_v(1), bm_u(0));
  REQUIRE(y.has_value());
  CHECK(*y == bm_y(0, 1));
  // x.y = 0
  CHECK(!compose(g, bm_x(1, 1), bm_y(1, 1)).has_value());
  // u.u = 0
  CHECK(!compose(g, bm_u(1), bm_u(0)).has_value());
  // v.v = 0
  CHECK(!compose(g, bm_v(0), bm_v(1)).has_value());
  // module structure: u.x = 0, u.y = shift, x.u = shift, y.u = 0
  CHECK(!compose(g, bm_u(0), bm_x(0, 1)).has_value());
  CHECK(compose(g, bm_u(0), bm_y(0, 2)) == bm_u(0, 2));
  CHECK(compose(g, bm_x(1, 3), bm_u(0)) == bm_u(0, 3));
  CHECK(!compose(g, bm_y(1, 1), bm_u(0)).has_value());
  // v.x = shift, v.y = 0, y.v = shift, x.v = 0
  CHECK(compose(g, bm_v(1), bm_x(1, 2)) == bm_v(1, 2));
  CHECK(!compose(g, bm_v(1), bm_y(1, 1)).has_value());
  CHECK(compose(g, bm_y(0, 2), bm_v(1)) == bm_v(1, 2));
  CHECK(!compose(g, bm_x(0, 1), bm_v(1)).has_value());
  // endpoint mismatch is a contract error
  CHECK_THROWS(compose(g, bm_u(0), bm_u(0)));
}

TEST_CASE("hom_basis windows") {
  Grading g4 = gcanon(4);
  // nonadjacent objects: zero
  CHECK(hom_basis(g4, 0, 2, 10).empty());
  // endomorphisms of weight <= 4: id, x, y, x^2, y^2
  auto e = hom_basis(g4, 0, 0, 4);
  REQUIRE(e.size() == 5);
  CHECK(e[0] == bm_id(0));
  // adjacent: u-tower with weight <= 3
  auto u = hom_basis(g4, 0, 1, 3);
  REQUIRE(u.size() == 2);
  CHECK(u[0] == bm_u(0, 0));
  CHECK(u[1] == bm_u(0, 1));
}

TEST_CASE("associativity, degree and weight additivity on a weight window") {
  for (int n : {3, 4, 5}) {
    Grading g = gcanon(n);
    std::vector<BM> all;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const BM& m : hom_basis(g, i, j, 6)) all.push_back(m);
    for (const BM& f : all)
      for (const BM& gg : all) {
        if (gg.src != bm_target(g, f)) continue;
        auto gf = compose(g, gg, f);
        if (gf) {
          CHECK(bm_deg_num(g, *gf) == bm_deg_num(g, f) + bm_deg_num(g, gg));
          CHECK(bm_weight(*gf) == bm_weight(f) + bm_weight(gg));
        }
        for (const BM& h : all) {
          if (h.src != bm_target(g, gg)) continue;
          auto hg = compose(g, h, gg);
          // (h g) f vs h (g f), guarding the weight-12 window
          if (bm_weight(h) + bm_weight(gg) + bm_weight(f) > 12) continue;
          std::optional<BM> lhs =
              hg ? compose(g, *hg, f) : std::nullopt;
          std::optional<BM> rhs =
              gf ? compose(g, h, *gf) : std::nullopt;
          CHECK(lhs == rhs);
        }
      }
  }
}

TEST_CASE("tilde category at D = 1 matches the base category") {
  Grading g = gcanon(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto base = hom_basis(g, i, j, 8);
      auto til = tilde_hom_basis(g, {i, 0}, {j, 0}, 8);
      CHECK(base == til);
    }
}

TEST_CASE("tilde category divisibility example at D = 3") {
  // (d1,d2,d3) = (1,1,1), p = (1,-1,3), q = (1,3,-1)  (1-based).
  // 0-based: P[t] = p_{t+1}, i.e. u into object t has degree P[t].
  Grading g(3, {1, -1, 3}, {1, 3, -1}, 3);
  CHECK(g.dd == std::vector<long>{1, 1, 1});
  // worked example: Hom((2,0),(1,0)) = { v_{2,1} x_2^k : 3 | k } (1-based).
  // 0-based: v out of object 1, i.e. bm_v(1, k), between sheets (0,0).
  auto basis = tilde_hom_basis(g, {1, 0}, {0, 0}, 27);
  for (const BM& m : basis) {
    CHECK(m.kind == Kind::V);
    CHECK(m.exp % 3 == 0);
  }
  int count = 0;
  for (int e = 0; 2 * e + 1 <= 27; e += 3) ++count;
  CHECK(static_cast<int>(basis.size()) == count);
  // identities have tilde-degree 0
  for (int i = 0; i < 3; ++i)
    for (long k = 0; k < 3; ++k) CHECK(tilde_degree(g, bm_id(i), k, k) == 0);
}

TEST_CASE("shift closure relabeling") {
  Grading a(3, {1, -1, 3}, {1, 3, -1}, 3);
  SECTION("identity when gradings agree") {
    auto rel = shift_closure_iso(a, a);
    CHECK(rel.c == std::vector<long>{0, 0, 0});
  }
  SECTION("nontrivial relabeling certified") {
    // move degree between p and q at object index 1 keeping p+q fixed
    Grading b(3, {1, 1, 1}, {1, 1, 1}, 3);
    auto rel = shift_closure_iso(a, b);
    CHECK(rel.c[0] == 0);
    CHECK(rel.c[1] == (b.P[1] - a.P[1]) / 2);
    CHECK(rel.c[2] == (b.P[1] - a.P[1]) / 2 + (b.P[2] - a.P[2]) / 2);
    // inverse composes to the identity
    auto inv = shift_closure_iso(b, a);
    for (int i = 0; i < 3; ++i) CHECK(rel.c[i] + inv.c[i] == 0);
  }
  SECTION("precondition failure") {
    Grading c(3, {1, -1, 3}, {3, 1, -1}, 3);
    CHECK_THROWS_AS(shift_closure_iso(a, c), GradingError);
  }
}
