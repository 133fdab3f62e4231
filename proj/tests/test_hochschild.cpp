#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wb/hochschild.hpp"

using namespace wb;

static Grading gcanon(int n) {
  std::vector<long> p(n, 1);
  p[n - 1] = -1;
  return Grading(n, p, p);
}

// random cochain of the given arity supported on a few chains, with values
// drawn from the matching hom spaces (not necessarily homogeneous; d only
// looks at the chain entries and the parity of ldeg)
template <class S>
static Cochain<S> random_cochain(const Grading& g, int arity, long ldeg, long wmax,
                                 std::mt19937& rng) {
  Cochain<S> T;
  T.arity = arity;
  T.ldeg = ldeg;
  auto chains = enumerate_chains(g, arity, wmax);
  for (int pick = 0; pick < 12 && !chains.empty(); ++pick) {
    const Chain& c = chains[rng() % chains.size()];
    auto vals = hom_basis(g, chain_src(c), chain_tgt(g, c), 6);
    if (vals.empty()) continue;
    const BM& v = vals[rng() % vals.size()];
    T.add(c, v.encode(), S(static_cast<long>(rng() % 9) - 4));
  }
  return T;
}

TEST_CASE("d of d vanishes on the truncated domain") {
  Grading g = gcanon(3);
  std::mt19937 rng(2024);
  const long wmax = 8;
  for (int arity = 1; arity <= 3; ++arity)
    for (long l : {0L, 1L}) {
      auto T = random_cochain<Rat>(g, arity, l, wmax, rng);
      auto dT = hochschild_d(g, T, wmax);
      for (const Chain& rho : enumerate_chains(g, arity + 2, wmax))
        CHECK(hochschild_d_eval(g, dT, rho).empty());
    }
}

TEST_CASE("d of the unit 0-cochain vanishes") {
  Grading g = gcanon(4);
  Cochain<Rat> T;
  T.arity = 0;
  T.ldeg = 0;
  T.obj0_values.resize(4);
  for (int i = 0; i < 4; ++i) helt_add(T.obj0_values[i], bm_id(i).encode(), Rat(1));
  auto dT = hochschild_d(g, T, 8);
  CHECK(dT.empty());
}

TEST_CASE("arity-1 example: composing around the cycle shows up in d") {
  // T sends the forward generator out of object 0 to its x-multiple; dT on
  // the chain with the backward generator innermost has a nonzero x-component.
  Grading g = gcanon(3);
  Cochain<Rat> T;
  T.arity = 1;
  T.ldeg = 2;
  T.add(Chain{bm_u(0).encode()}, bm_u(0, 1).encode(), Rat(1));
  Chain rho{bm_v(1).encode(), bm_u(0).encode()};  // a_1 = v out of 1, a_2 = u out of 0
  auto val = hochschild_d_eval(g, T, rho);
  bool has_x = false;
  for (auto& [key, c] : val)
    if (BM::decode(key).kind == Kind::X && !is_zero(c)) has_x = true;
  CHECK(has_x);
}

TEST_CASE("block matrix agrees with direct evaluation of d") {
  Grading g = gcanon(3);
  const long wmax = 8;
  std::mt19937 rng(99);
  ChainStore cs{&g, wmax, {}};
  for (auto [k, j] : std::vector<std::pair<int, long>>{{2, -1}, {3, -1}, {3, -2}}) {
    for (long delta : block_deltas(g, k, j, wmax, &cs)) {
      auto bk = build_block<Rat>(g, k, j, delta, wmax, &cs);
      auto bk1 = build_block<Rat>(g, k + 1, j, delta, wmax, &cs);
      if (bk.basis.empty()) continue;
      auto D = block_matrix<Rat>(g, bk, bk1, k, j, delta, wmax);
      for (int trial = 0; trial < 4; ++trial) {
        int col = static_cast<int>(rng() % bk.basis.size());
        Cochain<Rat> e;
        e.arity = k;
        e.ldeg = j;
        e.add(bk.basis[col].chain, bk.basis[col].value, Rat(1));
        // direct evaluation on every target chain must match the matrix column
        std::map<int, Rat> expect;
        for (int r = 0; r < D.nrows; ++r) {
          Rat v = D.get(r, col);
          if (!is_zero(v)) expect[r] = v;
        }
        std::map<int, Rat> got;
        long cap = block_chain_cap(wmax, delta);
        for (int r = 0; r < static_cast<int>(bk1.basis.size()); ++r) {
          const BlockKey& t = bk1.basis[r];
          if (chain_weight(t.chain) > cap) continue;
          auto val = hochschild_d_eval(g, e, t.chain);
          for (auto& [key, c] : val)
            if (key == t.value && !is_zero(c)) got[r] = c;
        }
        CHECK(expect == got);
      }
    }
  }
}

TEST_CASE("consecutive block matrices compose to zero") {
  Grading g = gcanon(3);
  const long wmax = 8;
  ChainStore cs{&g, wmax, {}};
  int k = 3;
  long j = -1;
  for (long delta : block_deltas(g, k, j, wmax, &cs)) {
    auto bk = build_block<Rat>(g, k, j, delta, wmax, &cs);
    auto bk1 = build_block<Rat>(g, k + 1, j, delta, wmax, &cs);
    auto bk2 = build_block<Rat>(g, k + 2, j, delta, wmax, &cs);
    auto D1 = block_matrix<Rat>(g, bk, bk1, k, j, delta, wmax);
    auto D2 = block_matrix<Rat>(g, bk1, bk2, k + 1, j, delta, wmax);
    for (auto& col : matrix_columns(D1)) CHECK(D2.apply(col).empty());
  }
}

TEST_CASE("cohomology dimensions match the closed form") {
  SECTION("n = 3") {
    Grading g = gcanon(3);
    auto r1 = hh_dim<Rat>(g, 2, -1, 8);
    CHECK(r1.dim == 2);
    CHECK(r1.stabilized);
    auto r2 = hh_dim<Rat>(g, 3, -1, 8);
    CHECK(r2.dim == 2);
    CHECK(r2.stabilized);
    auto r3 = hh_dim<Rat>(g, 2, -2, 8);
    CHECK(r3.dim == 0);
    CHECK(r3.stabilized);
  }
  SECTION("n = 5") {
    Fp::set_modulus(32003);
    Grading g = gcanon(5);
    auto r = hh_dim<Fp>(g, 2, -3, 8);
    CHECK(r.dim == 2);
    CHECK(r.stabilized);
  }
  SECTION("truncation-insufficient report") {
    Grading g = gcanon(3);
    auto r = hh_dim<Rat>(g, 4, -2, 4);  // arity 6 > Wmax 4
    CHECK(r.truncation_insufficient);
  }
}

TEST_CASE("representatives span, are closed, and normalize to unit coordinates") {
  Grading g = gcanon(3);
  const long wmax = 8;
  auto reps = hh_representatives<Rat>(g, 2, -1, wmax);
  REQUIRE(reps.size() == 2);
  auto [a0, b0] = cycle_coordinates(g, reps[0]);
  auto [a1, b1] = cycle_coordinates(g, reps[1]);
  CHECK(a0 == Rat(1));
  CHECK(b0 == Rat(0));
  CHECK(a1 == Rat(0));
  CHECK(b1 == Rat(1));
  for (auto& r : reps) CHECK(hochschild_d(g, r, wmax).empty());
}

TEST_CASE("odd representatives at (3, -1) for n = 3") {
  // the odd classes have no invariant cycle-coordinate pairing (coboundaries
  // can hit the bare-generator chains), so only span and closedness are pinned
  Grading g = gcanon(3);
  auto reps = hh_representatives<Rat>(g, 3, -1, 8);
  REQUIRE(reps.size() == 2);
  for (auto& r : reps) CHECK(hochschild_d(g, r, 8).empty());
}
