#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wb/sparse.hpp"

using namespace wb;

TEST_CASE("rank_kernel basic cases") {
  SECTION("empty matrix") {
    SparseMatrix<Rat> M(0, 0);
    auto [r, k] = rank_kernel(M);
    CHECK(r == 0);
    CHECK(k.empty());
  }
  SECTION("identity 2x2") {
    SparseMatrix<Rat> M(2, 2);
    M.set(0, 0, Rat(1));
    M.set(1, 1, Rat(1));
    auto [r, k] = rank_kernel(M);
    CHECK(r == 2);
    CHECK(k.empty());
  }
  SECTION("all-ones 2x2") {
    SparseMatrix<Rat> M(2, 2);
    M.set(0, 0, Rat(1));
    M.set(0, 1, Rat(1));
    M.set(1, 0, Rat(1));
    M.set(1, 1, Rat(1));
    auto [r, k] = rank_kernel(M);
    REQUIRE(r == 1);
    REQUIRE(k.size() == 1);
    // kernel spanned by (1,-1) up to scale
    auto v = k[0];
    REQUIRE(v.size() == 2);
    CHECK(v[0].second == -v[1].second);
    CHECK(M.apply(v).empty());
  }
}

TEST_CASE("solve_in_image basic cases") {
  SECTION("identity") {
    SparseMatrix<Rat> M(3, 3);
    for (int i = 0; i < 3; ++i) M.set(i, i, Rat(1));
    SVec<Rat> b{{0, Rat(5)}, {2, rat(-7, 3)}};
    auto x = solve_in_image(M, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);
  }
  SECTION("zero matrix, zero rhs") {
    SparseMatrix<Rat> M(2, 2);
    auto x = solve_in_image(M, SVec<Rat>{});
    REQUIRE(x.has_value());
    CHECK(x->empty());
  }
  SECTION("inconsistent system") {
    SparseMatrix<Rat> M(2, 1);
    M.set(0, 0, Rat(1));
    M.set(1, 0, Rat(1));
    SVec<Rat> b{{0, Rat(1)}, {1, Rat(2)}};
    CHECK(!solve_in_image(M, b).has_value());
  }
}

TEST_CASE("quotient_dim basic cases") {
  std::vector<SVec<Rat>> Z{{{0, Rat(1)}}, {{1, Rat(1)}}};
  SECTION("full vs empty") { CHECK(quotient_dim<Rat>(Z, {}, 2) == 2); }
  SECTION("Z = B") { CHECK(quotient_dim<Rat>(Z, Z, 2) == 0); }
  SECTION("plane in 3-space") {
    std::vector<SVec<Rat>> Z3{{{0, Rat(1)}}, {{1, Rat(1)}}, {{2, Rat(1)}}};
    std::vector<SVec<Rat>> B{{{0, Rat(1)}, {1, Rat(2)}}, {{1, Rat(1)}, {2, Rat(-1)}}};
    CHECK(quotient_dim<Rat>(Z3, B, 3) == 1);
  }
  SECTION("containment failure reported") {
    std::vector<SVec<Rat>> Zp{{{0, Rat(1)}}};
    std::vector<SVec<Rat>> B{{{1, Rat(1)}}};
    CHECK_THROWS_AS(quotient_dim<Rat>(Zp, B, 2), std::domain_error);
  }
}

TEST_CASE("properties over F_p: rank invariant under row shuffles") {
  Fp::set_modulus(32003);
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 25; ++trial) {
    int nr = 1 + static_cast<int>(rng() % 8);
    int nc = 1 + static_cast<int>(rng() % 8);
    SparseMatrix<Fp> M(nr, nc);
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c)
        if (rng() % 3 == 0) M.set(r, c, Fp(static_cast<std::int64_t>(rng() % 97) - 48));
    auto [r1, k1] = rank_kernel(M);
    // shuffled copy
    SparseMatrix<Fp> M2 = M;
    std::shuffle(M2.rows.begin(), M2.rows.end(), rng);
    auto [r2, k2] = rank_kernel(M2);
    CHECK(r1 == r2);
    for (auto& v : k1) CHECK(M.apply(v).empty());
    CHECK(r1 + static_cast<int>(k1.size()) == nc);
  }
}

TEST_CASE("solve then multiply reproduces b exactly") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 25; ++trial) {
    int nr = 1 + static_cast<int>(rng() % 7);
    int nc = 1 + static_cast<int>(rng() % 7);
    SparseMatrix<Rat> M(nr, nc);
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c)
        if (rng() % 3 == 0)
          M.set(r, c, rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4)));
    // choose b in the image by construction
    SVec<Rat> x0;
    for (int c = 0; c < nc; ++c)
      if (rng() % 2) x0.emplace_back(c, Rat(static_cast<long>(rng() % 11) - 5));
    auto b = M.apply(x0);
    auto x = solve_in_image(M, b);
    REQUIRE(x.has_value());
    CHECK(M.apply(*x) == b);
  }
}

TEST_CASE("quotient_dim rank arithmetic property") {
  std::mt19937 rng(424242);
  Fp::set_modulus(32003);
  for (int trial = 0; trial < 20; ++trial) {
    int nc = 2 + static_cast<int>(rng() % 6);
    std::vector<SVec<Fp>> Z;
    for (int i = 0; i < nc; ++i) {
      std::map<int, Fp> v;
      for (int c = 0; c < nc; ++c)
        if (rng() % 2) v[c] = Fp(static_cast<std::int64_t>(rng() % 101));
      Z.push_back(svec_from_map(v));
    }
    // B: random combinations of Z
    std::vector<SVec<Fp>> B;
    for (int i = 0; i < 2; ++i) {
      std::map<int, Fp> acc;
      for (auto& z : Z)
        if (rng() % 2) {
          Fp c(static_cast<std::int64_t>(rng() % 101));
          for (auto& [j, v] : z) {
            acc[j] += c * v;
          }
        }
      B.push_back(svec_from_map(acc));
    }
    SparseMatrix<Fp> MB(static_cast<int>(B.size()), nc);
    MB.rows = B;
    auto [rb, kb] = rank_kernel(MB);
    SparseMatrix<Fp> MZ(static_cast<int>(Z.size()), nc);
    MZ.rows = Z;
    auto [rz, kz] = rank_kernel(MZ);
    CHECK(quotient_dim(Z, B, nc) + rb == rz);
  }
}
