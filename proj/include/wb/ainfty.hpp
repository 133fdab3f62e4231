#pragma once

// A-infinity structures on the cycle category, truncated at arity K and input
// weight Wmax.  m_1 = 0, m_2 = composition, m_k (k >= 3) are stored cochains
// of bidegree (arity k, internal degree 2-k), strictly unital (vanishing on
// chains containing identities).
//
// The associativity relation of order N reads
//   sum_{s+l+t=N} (-1)^{s+lt} m_{N-l+1}(id^s (x) m_l (x) id^t) = 0,
// applied to elements with the Koszul rule (f (x) g)(x (x) y) =
// (-1)^{deg g . deg x} f(x) (x) g(y): the inner m_l (degree 2-l) picks up
// (-1)^{l . sum of degrees it passes over}, i.e. over the s leftmost inputs.
// All signs reduce to weight parities.
//
// The m_k-linear part of the order-(k+1) relation is a differential on
// bidegree-(k, 2-k) cochains ("lin" below); the remaining terms are the
// quadratic obstruction.  The extension solver works per (internal degree,
// weight defect) block and kills each relation instance exactly.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wb/hochschild.hpp"

namespace wb {

template <class S>
struct AInfty {
  Grading g;
  int K = 2;     // products known through arity K
  long wmax = 0;
  std::map<int, Cochain<S>> mk;  // arity >= 3

  const Cochain<S>* find_m(int k) const {
    auto it = mk.find(k);
    return it == mk.end() ? nullptr : &it->second;
  }
};

// m applied to a monomial chain (index 0 innermost): arity 1 is zero,
// arity 2 is composition, arity >= 3 looks up the stored cochain.
template <class S>
HomElt<S> eval_m(const AInfty<S>& A, const Chain& chain) {
  HomElt<S> out;
  if (chain.size() == 2) {
    auto p = compose(A.g, BM::decode(chain[1]), BM::decode(chain[0]));
    if (p) helt_add(out, p->encode(), S(1));
    return out;
  }
  if (chain.size() < 3) return out;
  for (auto e : chain)
    if (BM::decode(e).kind == Kind::Id) return out;  // strict unitality
  if (const Cochain<S>* m = A.find_m(static_cast<int>(chain.size())))
    if (const HomElt<S>* v = m->find(chain)) out = *v;
  return out;
}

// One side of the order-N relation, with the inner arity restricted to
// [lmin, lmax]; the full relation is lmin = 2, lmax = N-1.
template <class S>
HomElt<S> relation_eval(const AInfty<S>& A, const Chain& rho, int lmin, int lmax) {
  const int N = static_cast<int>(rho.size());
  HomElt<S> out;
  std::vector<int> par(N);
  for (int i = 0; i < N; ++i) par[i] = bm_parity(BM::decode(rho[i]));
  for (int l = std::max(2, lmin); l <= std::min(N - 1, lmax); ++l) {
    for (int t = 0; t + l <= N; ++t) {
      int s = N - l - t;
      long koszul = 0;
      for (int i = t + l; i < N; ++i) koszul += par[i];
      int sign = detail::par(s + static_cast<long>(l) * t + static_cast<long>(l) * koszul);
      Chain inner(rho.begin() + t, rho.begin() + t + l);
      HomElt<S> iv = eval_m(A, inner);
      if (iv.empty()) continue;
      Chain outer;
      outer.reserve(N - l + 1);
      outer.insert(outer.end(), rho.begin(), rho.begin() + t);
      outer.push_back(0);  // placeholder for the inner value
      outer.insert(outer.end(), rho.begin() + t + l, rho.end());
      for (auto& [key, c] : iv) {
        outer[t] = key;
        HomElt<S> ov = eval_m(A, outer);
        for (auto& [okey, oc] : ov)
          helt_add(out, okey, S(detail::sgn<S>(sign) * c * oc));
      }
    }
  }
  return out;
}

struct RelationReport {
  bool ok = true;
  int max_order_checked = 2;
  int fail_order = 0;
  Chain fail_chain;
};

// Check all relation orders 3..K+1 on identity-free chains of weight <= Wmax.
// (Instances with identity inputs reduce to these under strict unitality.)
template <class S>
RelationReport check_relations(const AInfty<S>& A) {
  RelationReport rep;
  ChainStore cs{&A.g, A.wmax, {}};
  for (int N = 3; N <= A.K + 1 && N <= A.wmax; ++N) {
    for (const Chain& rho : cs.get(N)) {
      if (!relation_eval(A, rho, 2, N - 1).empty()) {
        rep.ok = false;
        rep.fail_order = N;
        rep.fail_chain = rho;
        return rep;
      }
    }
    rep.max_order_checked = N;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The linear part as a block matrix.  For a cochain of the given arity and
// internal-degree parity, the m_2-pairings in the order-(arity+1) relation
// give a degree-1 map; it preserves the weight defect.

template <class S>
SparseMatrix<S> ainfty_lin_matrix(const Grading& g, const HHBlock<S>& src,
                                  const HHBlock<S>& tgt, int arity, int ldeg_par,
                                  long delta, long wmax) {
  SparseMatrix<S> M(static_cast<int>(tgt.basis.size()), static_cast<int>(src.basis.size()));
  const int k = arity;
  long cap = block_chain_cap(wmax, delta);
  for (int col = 0; col < static_cast<int>(src.basis.size()); ++col) {
    const BlockKey& e = src.basis[col];
    BM val = BM::decode(e.value);
    const Chain& sigma = e.chain;
    auto emit = [&](const Chain& rho, const BM& v, int sign_par) {
      if (chain_weight(rho) > cap) return;
      auto it = tgt.index.find({rho, v.encode()});
      if (it == tgt.index.end()) return;
      M.add(it->second, col, detail::sgn<S>(sign_par));
    };
    long budget = cap - chain_weight(sigma);
    // inner e, t = 1, s = 0: (-1)^{k} m_2(e(sigma), a_1)
    {
      int src_obj = chain_src(sigma);
      for (int o = 0; o < g.n; ++o)
        for (const BM& a1 : hom_basis(g, o, src_obj, static_cast<int>(budget))) {
          if (a1.kind == Kind::Id) continue;
          auto prod = compose(g, val, a1);
          if (!prod) continue;
          Chain rho;
          rho.reserve(sigma.size() + 1);
          rho.push_back(a1.encode());
          rho.insert(rho.end(), sigma.begin(), sigma.end());
          emit(rho, *prod, detail::par(k));
        }
    }
    // inner e, t = 0, s = 1: -(-1)^{ldeg . deg a} m_2(a, e(sigma))
    {
      int tgt_obj = chain_tgt(g, sigma);
      for (int o = 0; o < g.n; ++o)
        for (const BM& ak1 : hom_basis(g, tgt_obj, o, static_cast<int>(budget))) {
          if (ak1.kind == Kind::Id) continue;
          auto prod = compose(g, ak1, val);
          if (!prod) continue;
          Chain rho(sigma);
          rho.push_back(ak1.encode());
          emit(rho, *prod, detail::par(1 + static_cast<long>(ldeg_par) * bm_parity(ak1)));
        }
    }
    // outer e, inner m_2 at positions q, q+1 (1-based): (-1)^{k+q} on splits
    {
      for (int q = 1; q <= k; ++q) {
        BM entry = BM::decode(sigma[q - 1]);
        for (auto& [c2, c1] : factorizations(g, entry)) {
          Chain rho;
          rho.reserve(sigma.size() + 1);
          for (int i = 0; i < q - 1; ++i) rho.push_back(sigma[i]);
          rho.push_back(c1.encode());
          rho.push_back(c2.encode());
          for (int i = q; i < k; ++i) rho.push_back(sigma[i]);
          emit(rho, val, detail::par(k + q));
        }
      }
    }
  }
  return M;
}

// ---------------------------------------------------------------------------
// Seeds and extension.

// Cycle chains pinned by the seed: the 2n full generator cycles of arity n.
inline std::vector<std::pair<Chain, bool>> seed_cycles(const Grading& g) {
  std::vector<std::pair<Chain, bool>> out;  // (chain, is_u_cycle)
  for (int t = 0; t < g.n; ++t) out.push_back({u_cycle_chain(g, g.n, t), true});
  for (int t = 0; t < g.n; ++t) out.push_back({v_cycle_chain(g, g.n, t), false});
  return out;
}

struct ExtendReport {
  bool ok = true;
  int fail_arity = 0;
  long fail_delta = 0;
  std::string note;
};

// Extend the arity-n seed with id-coefficients (a, b) on the u/v cycles to an
// A-infinity structure through arity K.  The seed is first completed to a
// cochain annihilated by the linear part (corrections live off the cycle
// chains); then each arity solves lin(m_k) = -quad(m_3..m_{k-1}) per block.
template <class S>
AInfty<S> extend_structure(const Grading& g, const S& a, const S& b, int K, long wmax,
                           ExtendReport* report = nullptr) {
  if (g.D != 1) throw GradingError("extend_structure: integral gradings only");
  ExtendReport local;
  ExtendReport& rep = report ? *report : local;
  AInfty<S> A{g, 2, wmax, {}};
  const int n = g.n;
  ChainStore cs{&g, wmax, {}};

  // --- seed completion at arity n, block (n, 2-n, delta = -n)
  {
    long j = 2 - n, delta = -n;
    auto bk = build_block<S>(g, n, j, delta, wmax, &cs);
    auto bk1 = build_block<S>(g, n + 1, j, delta, wmax, &cs);
    auto M = ainfty_lin_matrix<S>(g, bk, bk1, n, detail::par(2 - n), delta, wmax);
    auto cyc = seed_cycles(g);
    std::vector<bool> pinned(bk.basis.size(), false);
    SVec<S> pinned_vec;
    for (auto& [chain, is_u] : cyc) {
      auto it = bk.index.find({chain, bm_id(chain_tgt(g, chain)).encode()});
      if (it == bk.index.end()) throw std::logic_error("seed cycle missing from block");
      pinned[it->second] = true;
      const S& coef = is_u ? a : b;
      if (!is_zero(coef)) pinned_vec.emplace_back(it->second, coef);
    }
    std::sort(pinned_vec.begin(), pinned_vec.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    SVec<S> rhs = M.apply(pinned_vec);
    for (auto& [r, v] : rhs) v = S(0) - v;
    // restrict to the free columns
    std::vector<int> free_cols;
    for (int c = 0; c < static_cast<int>(bk.basis.size()); ++c)
      if (!pinned[c]) free_cols.push_back(c);
    SparseMatrix<S> Mf(M.nrows, static_cast<int>(free_cols.size()));
    std::vector<int> col_map(bk.basis.size(), -1);
    for (int i = 0; i < static_cast<int>(free_cols.size()); ++i) col_map[free_cols[i]] = i;
    for (int r = 0; r < M.nrows; ++r)
      for (auto& [c, v] : M.rows[r])
        if (col_map[c] >= 0) Mf.rows[r].emplace_back(col_map[c], v);
    auto x = solve_in_image(Mf, rhs);
    if (!x) {
      rep.ok = false;
      rep.fail_arity = n;
      rep.fail_delta = delta;
      rep.note = "seed completion unsolvable";
      if (!report) throw std::runtime_error(rep.note);
      return A;
    }
    Cochain<S> mn;
    mn.arity = n;
    mn.ldeg = j;
    for (auto& [i, v] : pinned_vec) mn.add(bk.basis[i].chain, bk.basis[i].value, v);
    for (auto& [i, v] : *x)
      mn.add(bk.basis[free_cols[i]].chain, bk.basis[free_cols[i]].value, v);
    if (!mn.empty()) A.mk.emplace(n, std::move(mn));
    A.K = n;
  }

  // --- obstruction steps
  for (int k = n + 1; k <= K; ++k) {
    if (k > wmax) {  // arity-k chains all exceed the weight cap; m_k = 0 there
      A.K = k;
      continue;
    }
    long j = 2 - k;
    // quadratic right-hand side, grouped by weight defect
    std::map<long, std::map<int, S>> rhs_by_delta;  // delta -> (tgt index -> coef)
    std::map<long, HHBlock<S>> tgt_blocks;
    for (const Chain& rho : cs.get(k + 1)) {
      HomElt<S> q = relation_eval(A, rho, 3, k - 1);
      if (q.empty()) continue;
      long cw = chain_weight(rho);
      for (auto& [key, c] : q) {
        long delta = bm_weight(BM::decode(key)) - cw;
        if (cw > block_chain_cap(wmax, delta)) continue;  // truncated away
        auto [it, fresh] = tgt_blocks.try_emplace(delta);
        if (fresh) it->second = build_block<S>(g, k + 1, j, delta, wmax, &cs);
        auto pos = it->second.index.find({rho, key});
        if (pos == it->second.index.end())
          throw std::logic_error("obstruction component outside its block");
        rhs_by_delta[delta][pos->second] += S(0) - c;
      }
    }
    Cochain<S> mkk;
    mkk.arity = k;
    mkk.ldeg = j;
    for (auto& [delta, rhs_map] : rhs_by_delta) {
      SVec<S> rhs = svec_from_map(rhs_map);
      if (rhs.empty()) continue;
      auto bk = build_block<S>(g, k, j, delta, wmax, &cs);
      auto M = ainfty_lin_matrix<S>(g, bk, tgt_blocks[delta], k, detail::par(j), delta, wmax);
      auto x = solve_in_image(M, rhs);
      if (!x) {
        rep.ok = false;
        rep.fail_arity = k;
        rep.fail_delta = delta;
        rep.note = "obstruction not in the image of the linear part";
        if (!report) throw std::runtime_error(rep.note);
        return A;
      }
      for (auto& [i, v] : *x) mkk.add(bk.basis[i].chain, bk.basis[i].value, v);
    }
    if (!mkk.empty()) A.mk.emplace(k, std::move(mkk));
    A.K = k;
  }
  return A;
}

// The id-coefficients of m_n on the full generator cycles, checked to be
// independent of the base object.
template <class S>
std::pair<S, S> invariants_ab(const AInfty<S>& A) {
  const Grading& g = A.g;
  const Cochain<S>* mn = A.find_m(g.n);
  S a(0), b(0);
  for (int t = 0; t < g.n; ++t) {
    S at(0), bt(0);
    if (mn) {
      if (const HomElt<S>* v = mn->find(u_cycle_chain(g, g.n, t)))
        for (auto& [key, c] : *v)
          if (BM::decode(key).kind == Kind::Id) at = c;
      if (const HomElt<S>* v = mn->find(v_cycle_chain(g, g.n, t)))
        for (auto& [key, c] : *v)
          if (BM::decode(key).kind == Kind::Id) bt = c;
    }
    if (t == 0) {
      a = at;
      b = bt;
    } else if (!(at == a) || !(bt == b)) {
      throw std::logic_error("invariants_ab: coefficients differ across objects");
    }
  }
  return {a, b};
}

// ---------------------------------------------------------------------------
// The sign twist u -> u, v -> -v, x -> -x (hence y^e -> (-1)^e y^e).

inline int twist_parity(const BM& m) {
  switch (m.kind) {
    case Kind::Id: return 0;
    case Kind::X:
    case Kind::Y:
    case Kind::U: return m.exp & 1;
    case Kind::V: return (m.exp + 1) & 1;
  }
  return 0;
}

template <class S>
AInfty<S> sign_twist(const AInfty<S>& A) {
  AInfty<S> B{A.g, A.K, A.wmax, {}};
  for (auto& [k, m] : A.mk) {
    Cochain<S> t;
    t.arity = m.arity;
    t.ldeg = m.ldeg;
    for (auto& [chain, val] : m.data) {
      int p = 0;
      for (auto e : chain) p ^= twist_parity(BM::decode(e));
      for (auto& [key, c] : val) {
        int q = p ^ twist_parity(BM::decode(key));
        t.add(chain, key, S(detail::sgn<S>(q) * c));
      }
    }
    if (!t.empty()) B.mk.emplace(k, std::move(t));
  }
  return B;
}

// ---------------------------------------------------------------------------
// Strict homotopies: f_1 = id (implicit), f_k (k >= 2) of degree 1-k.

template <class S>
struct StrictHomotopy {
  std::map<int, Cochain<S>> fk;  // arity >= 2

  const Cochain<S>* find_f(int k) const {
    auto it = fk.find(k);
    return it == fk.end() ? nullptr : &it->second;
  }
};

template <class S>
HomElt<S> eval_f(const StrictHomotopy<S>& F, const Chain& chain) {
  HomElt<S> out;
  if (chain.size() == 1) {
    helt_add(out, chain[0], S(1));  // f_1 = id
    return out;
  }
  for (auto e : chain)
    if (BM::decode(e).kind == Kind::Id) return out;
  if (const Cochain<S>* f = F.find_f(static_cast<int>(chain.size())))
    if (const HomElt<S>* v = f->find(chain)) out = *v;
  return out;
}

// Functor equation of order N on one chain:
//   sum_{u_1+..+u_r=N} (-1)^{eps + koszul} m'_r(f_{u_1}(..), .., f_{u_r}(..))
//   - sum_{s+l+t=N} (-1)^{s+lt+koszul} f_{N-l+1}(.., m_l(..), ..) = 0,
// eps = (r-1)(u_1-1) + (r-2)(u_2-1) + ... ; f_{u_i} has degree 1-u_i and the
// Koszul rule charges each block passed over by the operators to its right.
template <class S>
HomElt<S> homotopy_defect(const StrictHomotopy<S>& F, const AInfty<S>& m,
                          const AInfty<S>& mp, const Chain& rho) {
  const int N = static_cast<int>(rho.size());
  HomElt<S> out;
  std::vector<int> par(N);
  for (int i = 0; i < N; ++i) par[i] = bm_parity(BM::decode(rho[i]));
  // left side: compositions of N read from the left block (the a_N side)
  std::vector<int> parts;
  auto lhs = [&](auto&& self) -> void {
    int used = 0;
    for (int u : parts) used += u;
    if (used == N) {
      int r = static_cast<int>(parts.size());
      long eps = 0;
      for (int i = 0; i < r; ++i) eps += static_cast<long>(r - 1 - i) * (parts[i] - 1);
      // koszul: block i (from the left) passed over by f_{u_j}, j > i
      long kz = 0;
      int hi = N;  // exclusive upper bound of the current block in rho indices
      std::vector<std::pair<int, int>> spans;  // [lo, hi) per block, left first
      for (int i = 0; i < r; ++i) {
        spans.push_back({hi - parts[i], hi});
        hi -= parts[i];
      }
      for (int i = 0; i < r; ++i) {
        long opdeg = 0;
        for (int j = i + 1; j < r; ++j) opdeg += 1 - parts[j];
        long blkdeg = 0;
        for (int idx = spans[i].first; idx < spans[i].second; ++idx) blkdeg += par[idx];
        kz += opdeg * blkdeg;
      }
      int sign = detail::par(eps + kz);
      // expand the product of block values right-to-left into chains for m'_r
      std::vector<HomElt<S>> vals(r);
      for (int i = 0; i < r; ++i) {
        Chain blk(rho.begin() + spans[i].first, rho.begin() + spans[i].second);
        vals[i] = eval_f(F, blk);
        if (vals[i].empty()) return;
      }
      Chain keys(r);
      auto expand = [&](auto&& self2, int i, const S& coef) -> void {
        if (i < 0) {
          Chain mc(r);
          // vals[0] is the leftmost block = outermost entry of the chain
          for (int q = 0; q < r; ++q) mc[q] = keys[r - 1 - q];
          HomElt<S> mv = eval_m(mp, mc);
          for (auto& [okey, oc] : mv)
            helt_add(out, okey, S(detail::sgn<S>(sign) * coef * oc));
          return;
        }
        for (auto& [key, c] : vals[i]) {
          keys[i] = key;
          self2(self2, i - 1, S(coef * c));
        }
      };
      expand(expand, r - 1, S(1));
      return;
    }
    for (int u = 1; u + used <= N; ++u) {
      parts.push_back(u);
      self(self);
      parts.pop_back();
    }
  };
  lhs(lhs);
  // right side, subtracted: f_{N-l+1}(id^s (x) m_l (x) id^t) terms
  for (int l = 2; l <= N; ++l) {
    for (int t = 0; t + l <= N; ++t) {
      int s = N - l - t;
      long kz = 0;
      for (int i = t + l; i < N; ++i) kz += par[i];
      int sign = detail::par(1 + s + static_cast<long>(l) * t + static_cast<long>(l) * kz);
      Chain inner(rho.begin() + t, rho.begin() + t + l);
      HomElt<S> iv = eval_m(m, inner);
      if (iv.empty()) continue;
      Chain outer;
      outer.insert(outer.end(), rho.begin(), rho.begin() + t);
      outer.push_back(0);
      outer.insert(outer.end(), rho.begin() + t + l, rho.end());
      for (auto& [key, c] : iv) {
        outer[t] = key;
        HomElt<S> ov = eval_f(F, outer);
        for (auto& [okey, oc] : ov)
          helt_add(out, okey, S(detail::sgn<S>(sign) * c * oc));
      }
    }
  }
  return out;
}

struct HomotopyReport {
  bool ok = true;
  int max_order_checked = 1;
  int fail_order = 0;
  Chain fail_chain;
};

template <class S>
HomotopyReport check_homotopy(const StrictHomotopy<S>& F, const AInfty<S>& m,
                              const AInfty<S>& mp, int max_order) {
  HomotopyReport rep;
  ChainStore cs{&m.g, m.wmax, {}};
  for (int N = 2; N <= max_order && N <= m.wmax; ++N) {
    for (const Chain& rho : cs.get(N)) {
      if (!homotopy_defect(F, m, mp, rho).empty()) {
        rep.ok = false;
        rep.fail_order = N;
        rep.fail_chain = rho;
        return rep;
      }
    }
    rep.max_order_checked = N;
  }
  return rep;
}

}  // namespace wb
