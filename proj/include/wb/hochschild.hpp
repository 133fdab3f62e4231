#pragma once

// Reduced Hochschild complex of the cycle category, truncated by total input
// weight.  A cochain of arity k and internal degree l sends composable chains
// (a_k, ..., a_1) of non-identity monomials to hom elements; the chain is
// stored innermost-first (index 0 = a_1, the morphism applied first).
//
// The differential is the three-term formula
//   dT(a_{k+1},...,a_1) = (-1)^{(k+l)(deg a_1 - 1) + 1} T(a_{k+1},...,a_2) a_1
//     + sum_j (-1)^{eps_j + (k+l) - 1} T(a_{k+1},..., a_{j+1} a_j, ..., a_1)
//     + (-1)^{eps_k + (k+l)} a_{k+1} T(a_k,...,a_1),
// with eps_j = sum_{i<=j} (deg a_i - 1).  All signs depend only on parities,
// and parity(deg) = parity(weight) for every monomial, so the implementation
// works uniformly from weights.
//
// Truncation: chains of total weight > Wmax are dropped.  Since every term of
// dT on a chain of weight W only consumes T on chains of weight <= W, the
// truncation is a quotient complex and d.d = 0 holds exactly on it.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "wb/category.hpp"
#include "wb/sparse.hpp"

namespace wb {

using Chain = std::vector<std::uint32_t>;  // encoded BMs, index 0 innermost

template <class S>
using HomElt = std::vector<std::pair<std::uint32_t, S>>;  // sorted by key

template <class S>
inline void helt_add(HomElt<S>& h, std::uint32_t key, const S& c) {
  auto it = std::lower_bound(h.begin(), h.end(), key,
                             [](const auto& a, std::uint32_t k) { return a.first < k; });
  if (it != h.end() && it->first == key) {
    it->second += c;
    if (is_zero(it->second)) h.erase(it);
  } else if (!is_zero(c)) {
    h.insert(it, {key, c});
  }
}

inline long chain_weight(const Chain& c) {
  long w = 0;
  for (auto e : c) w += bm_weight(BM::decode(e));
  return w;
}

inline long chain_deg_num(const Grading& g, const Chain& c) {
  long d = 0;
  for (auto e : c) d += bm_deg_num(g, BM::decode(e));
  return d;
}

inline int chain_src(const Chain& c) { return BM::decode(c.front()).src; }
inline int chain_tgt(const Grading& g, const Chain& c) {
  return bm_target(g, BM::decode(c.back()));
}

// Arity k >= 0, internal degree l (integral gradings).  Values are stored
// sparsely; absent chains evaluate to zero.  Arity-0 components are keyed by
// the empty chain's object via value entries in End(X_i), one map entry with
// an empty chain is not expressible, so arity 0 uses obj0_values instead.
template <class S>
struct Cochain {
  int arity = 0;
  long ldeg = 0;
  std::map<Chain, HomElt<S>> data;        // arity >= 1
  std::vector<HomElt<S>> obj0_values;     // arity == 0: per-object elements

  bool empty() const {
    for (auto& [c, v] : data)
      if (!v.empty()) return false;
    for (auto& v : obj0_values)
      if (!v.empty()) return false;
    return true;
  }

  const HomElt<S>* find(const Chain& c) const {
    auto it = data.find(c);
    return it == data.end() || it->second.empty() ? nullptr : &it->second;
  }

  void add(const Chain& c, std::uint32_t key, const S& coef) {
    helt_add(data[c], key, coef);
  }
};

// All composable identity-free chains of the given arity with total weight
// <= wcap, in a deterministic order (start object, then entry-wise basis
// order).  Arity 0 is excluded (callers handle it separately).
inline std::vector<Chain> enumerate_chains(const Grading& g, int arity, long wcap) {
  std::vector<Chain> out;
  if (arity <= 0 || wcap < arity) return out;
  Chain cur(arity);
  // entries filled from index 0 (innermost); track current target and budget
  auto rec = [&](auto&& self, int pos, int at, long budget) -> void {
    if (pos == arity) {
      out.push_back(cur);
      return;
    }
    long reserve = arity - pos - 1;  // min weight of remaining entries
    for (int j = 0; j < g.n; ++j) {
      for (const BM& m : hom_basis(g, at, j, static_cast<int>(budget - reserve))) {
        if (m.kind == Kind::Id) continue;
        cur[pos] = m.encode();
        self(self, pos + 1, j, budget - bm_weight(m));
      }
    }
  };
  for (int i = 0; i < g.n; ++i) rec(rec, 0, i, wcap);
  return out;
}

// All two-factor factorizations b = c2 . c1 into non-identity monomials,
// returned as (c2, c1) pairs (c1 applied first).
inline std::vector<std::pair<BM, BM>> factorizations(const Grading& g, const BM& b) {
  std::vector<std::pair<BM, BM>> out;
  int i = b.src;
  switch (b.kind) {
    case Kind::X:
      for (int e1 = 1; e1 < b.exp; ++e1) out.push_back({bm_x(i, b.exp - e1), bm_x(i, e1)});
      for (int e1 = 0; e1 + 1 <= b.exp; ++e1)
        out.push_back({bm_u(g.prev(i), b.exp - 1 - e1), bm_v(i, e1)});
      break;
    case Kind::Y:
      for (int e1 = 1; e1 < b.exp; ++e1) out.push_back({bm_y(i, b.exp - e1), bm_y(i, e1)});
      for (int e1 = 0; e1 + 1 <= b.exp; ++e1)
        out.push_back({bm_v(g.next(i), b.exp - 1 - e1), bm_u(i, e1)});
      break;
    case Kind::U:
      for (int a = 1; a <= b.exp; ++a) out.push_back({bm_x(g.next(i), a), bm_u(i, b.exp - a)});
      for (int a = 1; a <= b.exp; ++a) out.push_back({bm_u(i, b.exp - a), bm_y(i, a)});
      break;
    case Kind::V:
      for (int a = 1; a <= b.exp; ++a) out.push_back({bm_v(i, b.exp - a), bm_x(i, a)});
      for (int a = 1; a <= b.exp; ++a) out.push_back({bm_y(g.prev(i), a), bm_v(i, b.exp - a)});
      break;
    default: break;
  }
  return out;
}

namespace detail {
// parity helpers; all signs reduce to Z/2 data
inline int par(long x) { return static_cast<int>(((x % 2) + 2) % 2); }
template <class S>
inline S sgn(int parity) { return parity ? S(-1) : S(1); }
}  // namespace detail

// dT evaluated on one chain (a_{k+1},...,a_1) where k = T.arity.
template <class S>
HomElt<S> hochschild_d_eval(const Grading& g, const Cochain<S>& T, const Chain& rho) {
  const int k = T.arity;
  HomElt<S> out;
  if (static_cast<int>(rho.size()) != k + 1) return out;
  const int kl = detail::par(k + T.ldeg);
  std::vector<BM> a(rho.size());
  for (size_t i = 0; i < rho.size(); ++i) a[i] = BM::decode(rho[i]);

  auto value_of = [&](const Chain& c, int obj) -> const HomElt<S>* {
    if (k == 0) {
      if (T.obj0_values.empty()) return nullptr;
      return T.obj0_values[obj].empty() ? nullptr : &T.obj0_values[obj];
    }
    return T.find(c);
  };

  // term 1: T(a_{k+1},...,a_2) a_1
  {
    Chain sub(rho.begin() + 1, rho.end());
    if (const HomElt<S>* v = value_of(sub, bm_target(g, a[0]))) {
      int s = detail::par(static_cast<long>(kl) * (bm_parity(a[0]) + 1) + 1);
      for (auto& [key, c] : *v) {
        auto prod = compose(g, BM::decode(key), a[0]);
        if (prod) helt_add(out, prod->encode(), S(detail::sgn<S>(s) * c));
      }
    }
  }
  // middle terms: merge a_{j+1} a_j
  {
    long eps = 0;  // parity of sum_{i<=j} (deg a_i - 1)
    for (int j = 1; j <= k; ++j) {
      eps += bm_parity(a[j - 1]) + 1;
      auto prod = compose(g, a[j], a[j - 1]);
      if (!prod) continue;
      Chain merged;
      merged.reserve(k);
      for (int i = 0; i < j - 1; ++i) merged.push_back(rho[i]);
      merged.push_back(prod->encode());
      for (int i = j + 1; i <= k; ++i) merged.push_back(rho[i]);
      if (const HomElt<S>* v = value_of(merged, 0)) {
        int s = detail::par(eps + kl - 1);
        for (auto& [key, c] : *v) helt_add(out, key, S(detail::sgn<S>(s) * c));
      }
    }
  }
  // term 3: a_{k+1} T(a_k,...,a_1)
  {
    Chain sub(rho.begin(), rho.end() - 1);
    long eps = 0;
    for (int i = 0; i < k; ++i) eps += bm_parity(a[i]) + 1;
    if (const HomElt<S>* v = value_of(sub, a[k].src)) {
      int s = detail::par(eps + kl);
      for (auto& [key, c] : *v) {
        auto prod = compose(g, a[k], BM::decode(key));
        if (prod) helt_add(out, prod->encode(), S(detail::sgn<S>(s) * c));
      }
    }
  }
  return out;
}

// Materialized differential on the weight-truncated domain.
template <class S>
Cochain<S> hochschild_d(const Grading& g, const Cochain<S>& T, long wmax) {
  Cochain<S> out;
  out.arity = T.arity + 1;
  out.ldeg = T.ldeg;
  for (const Chain& rho : enumerate_chains(g, T.arity + 1, wmax)) {
    HomElt<S> v = hochschild_d_eval(g, T, rho);
    if (!v.empty()) out.data.emplace(rho, std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Block linear algebra.  A block is indexed by (arity k, internal degree j,
// weight defect delta = weight(value) - weight(chain)); d preserves (j, delta)
// and raises k by one.  Within a block the chain weight is capped by
// min(Wmax, Wmax - delta) so that value weights also stay <= Wmax; this is
// still a quotient complex per block.

struct BlockKey {
  Chain chain;
  std::uint32_t value;
  friend bool operator<(const BlockKey& a, const BlockKey& b) {
    return std::tie(a.chain, a.value) < std::tie(b.chain, b.value);
  }
};

template <class S>
struct HHBlock {
  std::vector<BlockKey> basis;
  std::map<BlockKey, int> index;
};

inline long block_chain_cap(long wmax, long delta) {
  return delta > 0 ? wmax - delta : wmax;
}

// Chains per arity at the full cap, enumerated once and filtered per block.
struct ChainStore {
  const Grading* g = nullptr;
  long wmax = 0;
  std::map<int, std::vector<Chain>> per_arity;
  const std::vector<Chain>& get(int arity) {
    auto it = per_arity.find(arity);
    if (it == per_arity.end())
      it = per_arity.emplace(arity, enumerate_chains(*g, arity, wmax)).first;
    return it->second;
  }
};

template <class S>
HHBlock<S> build_block(const Grading& g, int k, long j, long delta, long wmax,
                       ChainStore* store = nullptr) {
  HHBlock<S> blk;
  if (k < 0) return blk;
  if (k == 0) {
    // arity-0 components: one value per object, chain weight 0
    for (int i = 0; i < g.n; ++i)
      for (const BM& m : hom_basis(g, i, i, static_cast<int>(wmax)))
        if (bm_deg_num(g, m) == j && bm_weight(m) == delta)
          blk.basis.push_back({Chain{static_cast<std::uint32_t>(i)}, m.encode()});
  } else {
    long cap = block_chain_cap(wmax, delta);
    ChainStore local{&g, wmax, {}};
    ChainStore& cs = store ? *store : local;
    for (const Chain& c : cs.get(k)) {
      long sw = chain_weight(c);
      if (sw > cap) continue;
      long sd = chain_deg_num(g, c);
      long vw = sw + delta;
      if (vw < 0) continue;
      for (const BM& m :
           hom_basis(g, chain_src(c), chain_tgt(g, c), static_cast<int>(vw)))
        if (bm_weight(m) == vw && bm_deg_num(g, m) == sd + j)
          blk.basis.push_back({c, m.encode()});
    }
  }
  for (int i = 0; i < static_cast<int>(blk.basis.size()); ++i)
    blk.index.emplace(blk.basis[i], i);
  return blk;
}

// Columns of M as sparse vectors (rows of the transpose), dropping zeros.
template <class S>
std::vector<SVec<S>> matrix_columns(const SparseMatrix<S>& M) {
  std::vector<std::map<int, S>> cols(M.ncols);
  for (int r = 0; r < M.nrows; ++r)
    for (auto& [c, v] : M.rows[r]) cols[c][r] += v;
  std::vector<SVec<S>> out;
  for (auto& col : cols) {
    SVec<S> w = svec_from_map(col);
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

// Matrix of d : block(k) -> block(k+1); rows = target basis, cols = source.
template <class S>
SparseMatrix<S> block_matrix(const Grading& g, const HHBlock<S>& src, const HHBlock<S>& tgt,
                             int k, long j, long delta, long wmax) {
  SparseMatrix<S> M(static_cast<int>(tgt.basis.size()), static_cast<int>(src.basis.size()));
  long cap = block_chain_cap(wmax, delta);
  const int kl = detail::par(k + j);
  for (int col = 0; col < static_cast<int>(src.basis.size()); ++col) {
    const BlockKey& e = src.basis[col];
    BM val = BM::decode(e.value);
    auto emit = [&](const Chain& rho, const BM& v, int sign_par, const S& coef) {
      if (chain_weight(rho) > cap) return;
      auto it = tgt.index.find({rho, v.encode()});
      if (it == tgt.index.end()) return;  // outside the block: truncated away
      M.add(it->second, col, detail::sgn<S>(sign_par) * coef);
    };
    if (k == 0) {
      // e is a value at object i = e.chain[0]; dT(a_1) has two terms
      int i = static_cast<int>(e.chain[0]);
      for (int o = 0; o < g.n; ++o) {
        for (const BM& a1 : hom_basis(g, o, i, static_cast<int>(cap))) {
          if (a1.kind == Kind::Id) continue;
          Chain rho{a1.encode()};
          if (bm_target(g, a1) == i) {  // term 1: T_i . a1
            auto prod = compose(g, val, a1);
            if (prod)
              emit(rho, *prod, detail::par(static_cast<long>(kl) * (bm_parity(a1) + 1) + 1),
                   S(1));
          }
        }
        for (const BM& a1 : hom_basis(g, i, o, static_cast<int>(cap))) {
          if (a1.kind == Kind::Id) continue;
          Chain rho{a1.encode()};
          // term 3: a1 . T_i ; eps_0 = 0
          auto prod = compose(g, a1, val);
          if (prod) emit(rho, *prod, detail::par(kl), S(1));
        }
      }
      continue;
    }
    const Chain& sigma = e.chain;
    std::vector<BM> a(sigma.size());
    for (size_t t = 0; t < sigma.size(); ++t) a[t] = BM::decode(sigma[t]);
    // right extension: rho = (sigma, a1), contributes T(sigma) a1
    {
      int src_obj = chain_src(sigma);
      long budget = cap - chain_weight(sigma);
      for (int o = 0; o < g.n; ++o)
        for (const BM& a1 : hom_basis(g, o, src_obj, static_cast<int>(budget))) {
          if (a1.kind == Kind::Id) continue;
          auto prod = compose(g, val, a1);
          if (!prod) continue;
          Chain rho;
          rho.reserve(sigma.size() + 1);
          rho.push_back(a1.encode());
          rho.insert(rho.end(), sigma.begin(), sigma.end());
          emit(rho, *prod, detail::par(static_cast<long>(kl) * (bm_parity(a1) + 1) + 1),
               S(1));
        }
    }
    // splits: rho has sigma_t factored as c2 . c1 at positions t+1, t
    {
      long eps_prefix = 0;  // parity of sum_{i<t} (deg sigma_i - 1)
      for (int t = 0; t < k; ++t) {
        for (auto& [c2, c1] : factorizations(g, a[t])) {
          Chain rho;
          rho.reserve(sigma.size() + 1);
          for (int i = 0; i < t; ++i) rho.push_back(sigma[i]);
          rho.push_back(c1.encode());
          rho.push_back(c2.encode());
          for (int i = t + 1; i < k; ++i) rho.push_back(sigma[i]);
          long eps = eps_prefix + bm_parity(c1) + 1;
          emit(rho, val, detail::par(eps + kl - 1), S(1));
        }
        eps_prefix += bm_parity(a[t]) + 1;
      }
    }
    // left extension: rho = (a_{k+1}, sigma), contributes a_{k+1} T(sigma)
    {
      int tgt_obj = chain_tgt(g, sigma);
      long budget = cap - chain_weight(sigma);
      long eps = 0;
      for (int i = 0; i < k; ++i) eps += bm_parity(a[i]) + 1;
      for (int o = 0; o < g.n; ++o)
        for (const BM& ak1 : hom_basis(g, tgt_obj, o, static_cast<int>(budget))) {
          if (ak1.kind == Kind::Id) continue;
          auto prod = compose(g, ak1, val);
          if (!prod) continue;
          Chain rho(sigma);
          rho.push_back(ak1.encode());
          emit(rho, *prod, detail::par(eps + kl), S(1));
        }
    }
  }
  return M;
}

// The set of weight defects with a nonempty block at (k, j).
inline std::vector<long> block_deltas(const Grading& g, int k, long j, long wmax,
                                      ChainStore* store = nullptr) {
  std::vector<long> ds;
  auto note = [&](long d) {
    if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
  };
  if (k == 0) {
    for (int i = 0; i < g.n; ++i)
      for (const BM& m : hom_basis(g, i, i, static_cast<int>(wmax)))
        if (bm_deg_num(g, m) == j) note(bm_weight(m));
  } else {
    ChainStore local{&g, wmax, {}};
    ChainStore& cs = store ? *store : local;
    for (const Chain& c : cs.get(k)) {
      long sw = chain_weight(c);
      long sd = chain_deg_num(g, c);
      for (const BM& m :
           hom_basis(g, chain_src(c), chain_tgt(g, c), static_cast<int>(wmax)))
        if (bm_deg_num(g, m) == sd + j) {
          long delta = bm_weight(m) - sw;
          if (sw <= block_chain_cap(wmax, delta)) note(delta);
        }
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

struct HHDim {
  long dim = 0;
  bool stabilized = false;
  bool truncation_insufficient = false;
};

// dim of ker/im at bidegree (d, j): arity k = d - j.
template <class S>
long hh_dim_at(const Grading& g, long d, long j, long wmax) {
  int k = static_cast<int>(d - j);
  if (k < 0) return 0;
  long total = 0;
  ChainStore cs{&g, wmax, {}};
  for (long delta : block_deltas(g, k, j, wmax, &cs)) {
    auto bk = build_block<S>(g, k, j, delta, wmax, &cs);
    if (bk.basis.empty()) continue;
    auto bk1 = build_block<S>(g, k + 1, j, delta, wmax, &cs);
    auto bkm = build_block<S>(g, k - 1, j, delta, wmax, &cs);
    auto Dk = block_matrix<S>(g, bk, bk1, k, j, delta, wmax);
    auto [rk, ker] = rank_kernel(Dk);
    (void)rk;
    std::vector<SVec<S>> img;
    if (!bkm.basis.empty()) {
      auto Dkm = block_matrix<S>(g, bkm, bk, k - 1, j, delta, wmax);
      img = matrix_columns(Dkm);
    }
    total += quotient_dim(ker, img, static_cast<int>(bk.basis.size()));
  }
  return total;
}

template <class S>
HHDim hh_dim(const Grading& g, long d, long j, long wmax) {
  HHDim r;
  long k = d - j;
  if (k < 0) return r;
  if (k > wmax) {
    // the minimal weight of an arity-k chain is k, so every block is empty
    r.truncation_insufficient = true;
    return r;
  }
  r.dim = hh_dim_at<S>(g, d, j, wmax);
  if (wmax - 2 >= k) {
    long prev = hh_dim_at<S>(g, d, j, wmax - 2);
    r.stabilized = (prev == r.dim);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Closed-form representative cochains.

// Full forward cycle of length r ending at object t (entries all bare u).
inline Chain u_cycle_chain(const Grading& g, int r, int t) {
  Chain c(r);
  int at = (t % g.n + g.n - r % g.n + g.n) % g.n;  // start object
  for (int i = 0; i < r; ++i) {
    c[i] = bm_u(at).encode();
    at = g.next(at);
  }
  return c;
}

// Full backward cycle of length r ending at object t (entries all bare v).
inline Chain v_cycle_chain(const Grading& g, int r, int t) {
  Chain c(r);
  int at = (t + r) % g.n;
  for (int i = 0; i < r; ++i) {
    c[i] = bm_v(at).encode();
    at = g.prev(at);
  }
  return c;
}

// Even representative at (d, j) = (2m, m(2-n)): value a.id on every full
// u-cycle of length mn and b.id on every full v-cycle.
template <class S>
Cochain<S> phi_cochain(const Grading& g, int m, const S& a, const S& b) {
  Cochain<S> T;
  T.arity = m * g.n;
  T.ldeg = static_cast<long>(m) * (2 - g.n);
  for (int t = 0; t < g.n; ++t) {
    if (!is_zero(a)) T.add(u_cycle_chain(g, T.arity, t), bm_id(t).encode(), a);
    if (!is_zero(b)) T.add(v_cycle_chain(g, T.arity, t), bm_id(t).encode(), b);
  }
  return T;
}

// Odd representative at (d, j) = (2m+1, m(2-n)): value c.u on the one
// (mn+1)-chain of u's ending at object 0, and d.v on the corresponding
// v-chain ending at object 0.
template <class S>
Cochain<S> psi_cochain(const Grading& g, int m, const S& c, const S& d) {
  Cochain<S> T;
  T.arity = m * g.n + 1;
  T.ldeg = static_cast<long>(m) * (2 - g.n);
  if (!is_zero(c)) T.add(u_cycle_chain(g, T.arity, 0), bm_u(g.prev(0)).encode(), c);
  if (!is_zero(d)) T.add(v_cycle_chain(g, T.arity, 0), bm_v(g.next(0)).encode(), d);
  return T;
}

// Evaluation coordinates of a cochain in the distinguished bidegrees: the
// coefficients read off the forward/backward cycle chains at object 0.
template <class S>
std::pair<S, S> cycle_coordinates(const Grading& g, const Cochain<S>& T) {
  S a(0), b(0);
  int k = T.arity;
  bool odd = (k % g.n) == 1 && k > 1;
  Chain uc = u_cycle_chain(g, k, 0);
  Chain vc = v_cycle_chain(g, k, 0);
  std::uint32_t ukey = odd ? bm_u(g.prev(0)).encode() : bm_id(0).encode();
  std::uint32_t vkey = odd ? bm_v(g.next(0)).encode() : bm_id(0).encode();
  if (const HomElt<S>* v = T.find(uc))
    for (auto& [key, coef] : *v)
      if (key == ukey) a = coef;
  if (const HomElt<S>* v = T.find(vc))
    for (auto& [key, coef] : *v)
      if (key == vkey) b = coef;
  return {a, b};
}

// Cocycles spanning ker/im at (d, j).  When the space is 2-dimensional and
// the cycle-coordinate pairing is invertible, the basis is normalized so its
// coordinate vectors are (1,0) and (0,1).
template <class S>
std::vector<Cochain<S>> hh_representatives(const Grading& g, long d, long j, long wmax) {
  std::vector<Cochain<S>> reps;
  int k = static_cast<int>(d - j);
  if (k < 0 || k > wmax) return reps;
  ChainStore cs{&g, wmax, {}};
  for (long delta : block_deltas(g, k, j, wmax, &cs)) {
    auto bk = build_block<S>(g, k, j, delta, wmax, &cs);
    if (bk.basis.empty()) continue;
    auto bk1 = build_block<S>(g, k + 1, j, delta, wmax, &cs);
    auto bkm = build_block<S>(g, k - 1, j, delta, wmax, &cs);
    auto Dk = block_matrix<S>(g, bk, bk1, k, j, delta, wmax);
    auto [rk, ker] = rank_kernel(Dk);
    (void)rk;
    Echelon<S> img(static_cast<int>(bk.basis.size()));
    if (!bkm.basis.empty()) {
      auto Dkm = block_matrix<S>(g, bkm, bk, k - 1, j, delta, wmax);
      for (SVec<S>& w : matrix_columns(Dkm)) img.add_row(w);
    }
    for (const SVec<S>& z : ker) {
      SVec<S> zc = z;
      if (img.add_row(zc) < 0) continue;  // a coboundary modulo reps found so far
      Cochain<S> T;
      T.arity = k;
      T.ldeg = j;
      for (auto& [idx, coef] : z) {
        const BlockKey& bkey = bk.basis[idx];
        if (k == 0) {
          if (T.obj0_values.empty()) T.obj0_values.resize(g.n);
          helt_add(T.obj0_values[static_cast<int>(bkey.chain[0])], bkey.value, coef);
        } else {
          T.add(bkey.chain, bkey.value, coef);
        }
      }
      reps.push_back(std::move(T));
    }
  }
  // Normalization by cycle coordinates is only meaningful in the even case
  // (arity a multiple of n): there the coordinate functional kills
  // coboundaries, because the would-be preimage values have negative weight.
  if (reps.size() == 2 && k >= g.n && k % g.n == 0) {
    auto [a1, b1] = cycle_coordinates(g, reps[0]);
    auto [a2, b2] = cycle_coordinates(g, reps[1]);
    S det = a1 * b2 - a2 * b1;
    if (!is_zero(det)) {
      // rows of the inverse pairing matrix give the normalized combinations
      std::vector<Cochain<S>> norm(2);
      auto combine = [&](const S& c1, const S& c2) {
        Cochain<S> T;
        T.arity = k;
        T.ldeg = j;
        for (int r = 0; r < 2; ++r) {
          const S& c = r == 0 ? c1 : c2;
          if (is_zero(c)) continue;
          for (auto& [chain, v] : reps[r].data)
            for (auto& [key, coef] : v) T.add(chain, key, S(c * coef));
        }
        return T;
      };
      norm[0] = combine(b2 / det, -b1 / det);
      norm[1] = combine(-a2 / det, a1 / det);
      return norm;
    }
  }
  return reps;
}

}  // namespace wb
