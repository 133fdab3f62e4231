#pragma once

// Graded matrix factorizations of W = z1 z2 z3 with rational gradings
// deg(z_i) = 2 d_i / D, the three Koszul-type objects T_i, their 2-periodic
// hom complexes and cohomology slices, the identification of H* with the
// cycle category on the induced grading p_i = 2 d_i + 2 d_{i+1} - D,
// q_i = 2 d_{i+1} + 2 d_{i+2} - D (0-based, cyclic), and homotopy transfer of
// the dg structure to a minimal model on H*.
//
// Each T_i has rank-one modules on both sides, so a hom element is a parity
// plus two polynomials:
//   even f: (f1 : T1 -> S1, f0 : T0 -> S0)     stored as (a, b)
//   odd  g: (g10 : T1 -> S0, g01 : T0 -> S1)   stored as (a, b)
// with d(even f) = (s1 f1 - f0 t1, s0 f0 - f1 t0)
//      d(odd  g) = (s0 g10 + g01 t1, s1 g01 + g10 t0).
// Internal degrees are integer numerators over D.  The generator of a shifted
// rank-one module R[a] sits in internal degree -a; with t1 = z_i and
// t0 = z_{i+1} z_{i+2} this makes both structure maps homogeneous of degree 1.
//
// When all deg(z_i) > 0 every slice is finite and enumerated exactly; if some
// deg(z_i) <= 0 slices are truncated at a total polynomial degree cap and all
// derived numbers carry a "capped" caveat.

#include <array>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "wb/ainfty.hpp"

namespace wb {

using Mono = std::array<int, 3>;

template <class S>
using Poly = std::map<Mono, S>;

template <class S>
void poly_add(Poly<S>& p, const Mono& m, const S& c) {
  if (is_zero(c)) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
  } else {
    it->second += c;
    if (is_zero(it->second)) p.erase(it);
  }
}

template <class S>
Poly<S> poly_mul(const Poly<S>& p, const Poly<S>& q) {
  Poly<S> r;
  for (auto& [m1, c1] : p)
    for (auto& [m2, c2] : q)
      poly_add(r, Mono{m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]}, S(c1 * c2));
  return r;
}

template <class S>
Poly<S> poly_z(int i) {  // 0-based variable index
  Poly<S> r;
  Mono m{0, 0, 0};
  m[i] = 1;
  r.emplace(m, S(1));
  return r;
}

template <class S>
Poly<S> poly_const(const S& c) {
  Poly<S> r;
  if (!is_zero(c)) r.emplace(Mono{0, 0, 0}, c);
  return r;
}

inline int mono_total(const Mono& m) { return m[0] + m[1] + m[2]; }

// ---------------------------------------------------------------------------

struct MfData {
  long D = 1;
  std::array<long, 3> d{};  // sum d_i = D > 0

  void validate() const {
    if (D < 1) throw std::invalid_argument("mf: need D >= 1");
    if (d[0] + d[1] + d[2] != D) throw std::invalid_argument("mf: need sum d_i = D");
  }
  long deg_z(int i) const { return 2 * d[i]; }  // numerator over D
  long mono_deg(const Mono& m) const {
    return m[0] * deg_z(0) + m[1] * deg_z(1) + m[2] * deg_z(2);
  }
  long mono_char(const Mono& m) const {  // Z/D weight of a monomial
    return (((m[0] * d[0] + m[1] * d[1] + m[2] * d[2]) % D) + D) % D;
  }
  // internal degree of the T1 generator of the factorization at object i
  long gamma(int i) const { return 2 * d[i] - D; }
  bool slices_finite() const { return d[0] > 0 && d[1] > 0 && d[2] > 0; }
  // induced cycle-category grading (n = 3)
  Grading induced_grading() const {
    std::vector<long> p(3), q(3);
    for (int i = 0; i < 3; ++i) {
      p[i] = 2 * d[i] + 2 * d[(i + 1) % 3] - D;
      q[i] = 2 * d[(i + 1) % 3] + 2 * d[(i + 2) % 3] - D;
    }
    return Grading(3, p, q, D);
  }
};

// ---------------------------------------------------------------------------
// Explicit factorization objects.  Generators carry a shift (numerator over
// D; the generator of R[a] has internal degree -a) and a character mod D.

struct GFGen {
  long shift_num = 0;
  long character = 0;
};

struct GradedFreeModule {
  std::vector<GFGen> gens;
  int rank() const { return static_cast<int>(gens.size()); }
};

template <class S>
struct MatrixFactorization {
  int i = 0;  // 0-based cyclic index of the Koszul factorization
  GradedFreeModule T1, T0;
  std::vector<std::vector<Poly<S>>> t1, t0;  // [target gen][source gen]
};

// T_i (1-based i, cyclically reduced): T1 = R[1 - 2 d_i/D](chi_{k - d_i}),
// T0 = R(chi_k), t1 = z_i, t0 = z_{i+1} z_{i+2}.
template <class S>
MatrixFactorization<S> build_T_equivariant(const MfData& md, int i_one_based, long k) {
  md.validate();
  if (i_one_based < 1) throw std::invalid_argument("mf: need i >= 1");
  MatrixFactorization<S> T;
  T.i = (i_one_based - 1) % 3;
  long kk = ((k % md.D) + md.D) % md.D;
  T.T0.gens.push_back({0, kk});
  T.T1.gens.push_back({md.D - 2 * md.d[T.i], (((kk - md.d[T.i]) % md.D) + md.D) % md.D});
  T.t1 = {{poly_z<S>(T.i)}};
  T.t0 = {{poly_mul(poly_z<S>((T.i + 1) % 3), poly_z<S>((T.i + 2) % 3))}};
  return T;
}

template <class S>
MatrixFactorization<S> build_T(const MfData& md, int i_one_based) {
  return build_T_equivariant<S>(md, i_one_based, 0);
}

// t1 t0 = t0 t1 = W on rank-one factorizations
template <class S>
bool mf_check_W(const MatrixFactorization<S>& T) {
  Poly<S> W = poly_mul(poly_mul(poly_z<S>(0), poly_z<S>(1)), poly_z<S>(2));
  return poly_mul(T.t1[0][0], T.t0[0][0]) == W && poly_mul(T.t0[0][0], T.t1[0][0]) == W;
}

// every entry homogeneous of degree 1 and Z/D-equivariant
template <class S>
bool mf_check_graded(const MfData& md, const MatrixFactorization<S>& T) {
  auto check = [&](const std::vector<std::vector<Poly<S>>>& t, const GradedFreeModule& src,
                   const GradedFreeModule& tgt) {
    for (int r = 0; r < tgt.rank(); ++r)
      for (int c = 0; c < src.rank(); ++c)
        for (auto& [m, v] : t[r][c]) {
          long sdeg = -src.gens[c].shift_num;
          long tdeg = -tgt.gens[r].shift_num;
          if (md.mono_deg(m) + tdeg != sdeg + md.D) return false;
          long w = (md.mono_char(m) + src.gens[c].character) % md.D;
          if (w != tgt.gens[r].character % md.D) return false;
        }
    return true;
  };
  return check(T.t1, T.T1, T.T0) && check(T.t0, T.T0, T.T1);
}

// ---------------------------------------------------------------------------
// Hom elements between T_i and T_j (rank-one shapes only).

template <class S>
struct MfElt {
  int parity = 0;
  Poly<S> a, b;
  bool empty() const { return a.empty() && b.empty(); }
};

template <class S>
void mf_axpy(MfElt<S>& x, const S& c, const MfElt<S>& y) {
  for (auto& [m, v] : y.a) poly_add(x.a, m, S(c * v));
  for (auto& [m, v] : y.b) poly_add(x.b, m, S(c * v));
}

// composition g . f of f : T_i -> T_j and g : T_j -> T_k
template <class S>
MfElt<S> mf_compose(const MfElt<S>& g, const MfElt<S>& f) {
  MfElt<S> r;
  r.parity = (g.parity + f.parity) & 1;
  if (f.parity == 0) {
    r.a = poly_mul(g.a, f.a);
    r.b = poly_mul(g.b, f.b);
  } else if (g.parity == 0) {
    r.a = poly_mul(g.b, f.a);  // T1 -> S0 through T0 of the middle object
    r.b = poly_mul(g.a, f.b);  // T0 -> S1 through T1
  } else {
    r.a = poly_mul(g.b, f.a);  // T1 -> S1
    r.b = poly_mul(g.a, f.b);  // T0 -> S0
  }
  return r;
}

// differential on Hom(T_i, T_j)
template <class S>
MfElt<S> mf_d(const MfData& md, int j, int i, const MfElt<S>& f) {
  (void)md;
  Poly<S> ti1 = poly_z<S>(i);
  Poly<S> ti0 = poly_mul(poly_z<S>((i + 1) % 3), poly_z<S>((i + 2) % 3));
  Poly<S> tj1 = poly_z<S>(j);
  Poly<S> tj0 = poly_mul(poly_z<S>((j + 1) % 3), poly_z<S>((j + 2) % 3));
  MfElt<S> r;
  r.parity = f.parity ^ 1;
  if (f.parity == 0) {
    r.a = poly_mul(tj1, f.a);
    for (auto& [m, v] : poly_mul(f.b, ti1)) poly_add(r.a, m, S(S(0) - v));
    r.b = poly_mul(tj0, f.b);
    for (auto& [m, v] : poly_mul(f.a, ti0)) poly_add(r.b, m, S(S(0) - v));
  } else {
    r.a = poly_mul(tj0, f.a);
    for (auto& [m, v] : poly_mul(f.b, ti1)) poly_add(r.a, m, v);
    r.b = poly_mul(tj1, f.b);
    for (auto& [m, v] : poly_mul(f.a, ti0)) poly_add(r.b, m, v);
  }
  return r;
}

// internal-degree offsets of the two polynomial slots of Hom(T_i, T_j)
inline std::pair<long, long> mf_slot_degrees(const MfData& md, int j, int i, int parity) {
  if (parity == 0) return {md.gamma(j) - md.gamma(i), 0};  // (f1, f0)
  return {-md.gamma(i), md.gamma(j)};                      // (g10, g01)
}

// ---------------------------------------------------------------------------
// Slices.

struct SliceKey {
  int slot;  // 0 = a, 1 = b
  Mono mono;
  friend bool operator<(const SliceKey& x, const SliceKey& y) {
    return std::tie(x.slot, x.mono) < std::tie(y.slot, y.mono);
  }
};

struct Slice {
  int parity = 0;
  long t = 0;
  std::vector<SliceKey> basis;
  std::map<SliceKey, int> index;
  bool complete = true;
};

inline void enumerate_monos(const MfData& md, long deg, int cap, std::vector<Mono>& out,
                            bool* complete) {
  int bound = cap;
  if (md.slices_finite()) {
    long dmin = std::min({md.d[0], md.d[1], md.d[2]});
    bound = deg >= 0 ? static_cast<int>(deg / (2 * dmin)) : -1;  // exact, cap ignored
  } else {
    *complete = false;
  }
  for (int e0 = 0; e0 <= bound; ++e0)
    for (int e1 = 0; e1 + e0 <= bound; ++e1)
      for (int e2 = 0; e2 + e1 + e0 <= bound; ++e2)
        if (md.mono_deg(Mono{e0, e1, e2}) == deg) out.push_back(Mono{e0, e1, e2});
}

inline Slice mf_slice(const MfData& md, int j, int i, int parity, long t, int cap) {
  Slice sl;
  sl.parity = parity;
  sl.t = t;
  auto [off_a, off_b] = mf_slot_degrees(md, j, i, parity);
  for (int slot = 0; slot < 2; ++slot) {
    std::vector<Mono> ms;
    enumerate_monos(md, t - (slot == 0 ? off_a : off_b), cap, ms, &sl.complete);
    for (auto& m : ms) sl.basis.push_back({slot, m});
  }
  for (int r = 0; r < static_cast<int>(sl.basis.size()); ++r) sl.index.emplace(sl.basis[r], r);
  return sl;
}

// coordinates of f in a slice; components outside the basis are dropped and
// reported through `inside`
template <class S>
SVec<S> mf_to_vec(const Slice& sl, const MfElt<S>& f, bool* inside = nullptr) {
  std::map<int, S> v;
  bool ok = true;
  auto put = [&](int slot, const Poly<S>& p) {
    for (auto& [m, c] : p) {
      auto it = sl.index.find({slot, m});
      if (it == sl.index.end()) {
        ok = false;
        continue;
      }
      v[it->second] += c;
    }
  };
  put(0, f.a);
  put(1, f.b);
  if (inside) *inside = ok;
  return svec_from_map(v);
}

template <class S>
MfElt<S> mf_from_vec(const Slice& sl, const SVec<S>& v) {
  MfElt<S> f;
  f.parity = sl.parity;
  for (auto& [r, c] : v) {
    const SliceKey& k = sl.basis[r];
    poly_add(k.slot == 0 ? f.a : f.b, k.mono, c);
  }
  return f;
}

// matrix of d : src -> tgt; overflow past the target cap is projected away
// and clears *exact (never happens on complete slices)
template <class S>
SparseMatrix<S> mf_d_matrix(const MfData& md, int j, int i, const Slice& src,
                            const Slice& tgt, bool* exact = nullptr) {
  SparseMatrix<S> M(static_cast<int>(tgt.basis.size()), static_cast<int>(src.basis.size()));
  for (int c = 0; c < static_cast<int>(src.basis.size()); ++c) {
    MfElt<S> e = mf_from_vec(src, SVec<S>{{c, S(1)}});
    MfElt<S> de = mf_d(md, j, i, e);
    bool inside = true;
    for (auto& [r, v] : mf_to_vec(tgt, de, &inside)) M.add(r, c, v);
    if (!inside) {
      if (tgt.complete) throw std::logic_error("mf_d_matrix: overflow on a complete slice");
      if (exact) *exact = false;
    }
  }
  return M;
}

// ---------------------------------------------------------------------------
// Cohomology of one slice, with optional representatives.

struct HSlice {
  long t = 0;
  int parity = 0;
  int dim = 0;
  bool complete = true;
};

template <class S>
struct HomCohomology {
  std::vector<HSlice> slices;
  std::vector<std::vector<MfElt<S>>> reps;  // parallel to slices
};

// boundaries of the capped complex whose components all stay under the cap:
// d from an enlarged `below` into an extended target (both exact since d
// raises total degree by 1 or 2), keeping the kernel of the coordinates
// outside `here`.  Each returned vector lives in `here` coordinates and its
// preimage (in `below` coordinates) is stored alongside.
template <class S>
void mf_boundaries(const MfData& md, int j, int i, const Slice& below, const Slice& here,
                   const Slice& here_ext, bool* complete,
                   std::vector<std::pair<SVec<S>, SVec<S>>>& out) {
  auto Din = mf_d_matrix<S>(md, j, i, below, here_ext, complete);
  std::vector<int> remap(here_ext.basis.size(), -1);  // here_ext row -> here row
  int nout = 0;
  std::vector<int> outrow(here_ext.basis.size(), -1);
  for (int r = 0; r < static_cast<int>(here_ext.basis.size()); ++r) {
    auto it = here.index.find(here_ext.basis[r]);
    if (it != here.index.end()) remap[r] = it->second;
    else outrow[r] = nout++;
  }
  auto cols = matrix_columns(Din);
  SparseMatrix<S> B(nout, Din.ncols);
  for (int c = 0; c < Din.ncols; ++c)
    for (auto& [r, v] : cols[c])
      if (outrow[r] >= 0) B.add(outrow[r], c, v);
  auto [rk, combos] = rank_kernel(B);
  (void)rk;
  for (auto& kv : combos) {
    std::map<int, S> acc;
    for (auto& [c, x] : kv)
      for (auto& [r, v] : cols[c])
        if (remap[r] >= 0) acc[remap[r]] += S(v * x);
    SVec<S> b = svec_from_map(acc);
    if (!b.empty()) out.emplace_back(std::move(b), kv);
  }
}

template <class S>
std::pair<int, bool> slice_h_dim(const MfData& md, int j, int i, int parity, long t,
                                 int cap, std::vector<MfElt<S>>* reps = nullptr) {
  // staggered caps keep every matrix exact: d raises total degree by 1 or 2
  Slice below = mf_slice(md, j, i, parity ^ 1, t - md.D, cap - 1);
  Slice here = mf_slice(md, j, i, parity, t, cap);
  Slice here_ext = mf_slice(md, j, i, parity, t, cap + 1);
  Slice above = mf_slice(md, j, i, parity ^ 1, t + md.D, cap + 2);
  bool complete = below.complete && here.complete && above.complete;
  std::vector<std::pair<SVec<S>, SVec<S>>> bdry;
  mf_boundaries<S>(md, j, i, below, here, here_ext, &complete, bdry);
  auto Dout = mf_d_matrix<S>(md, j, i, here, above, &complete);
  auto [rout, kernel] = rank_kernel(Dout);
  (void)rout;
  Echelon<S> e(static_cast<int>(here.basis.size()));
  for (auto& [b, pre] : bdry) e.add_row(b);
  int dim = 0;
  for (auto& kv : kernel) {
    if (e.add_row(kv) >= 0) {
      ++dim;
      if (reps) reps->push_back(mf_from_vec(here, kv));
    }
  }
  return {dim, complete};
}

// dims + representatives over a window of internal-degree numerators
template <class S>
HomCohomology<S> hom_cohomology(const MfData& md, int j, int i, long t_lo, long t_hi,
                                int cap) {
  HomCohomology<S> out;
  for (long t = t_lo; t <= t_hi; ++t)
    for (int parity = 0; parity < 2; ++parity) {
      std::vector<MfElt<S>> reps;
      auto [dim, complete] = slice_h_dim<S>(md, j, i, parity, t, cap, &reps);
      out.slices.push_back({t, parity, dim, complete});
      out.reps.push_back(std::move(reps));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Generator representatives.  0-based object s carries the factorization of
// index s; u out of s maps T_s -> T_{s+1} with components (-1, z_{s+2}) and
// v out of s maps T_s -> T_{s-1} with components (-1, z_{s+1}), both odd and
// closed.  Representatives of all basis monomials are honest composites, so
// the identification of classes is multiplicative by construction.

template <class S>
MfElt<S> rep_u(int s) {
  MfElt<S> f;
  f.parity = 1;
  f.a = poly_const(S(-1));
  f.b = poly_z<S>((s + 2) % 3);
  return f;
}

template <class S>
MfElt<S> rep_v(int s) {
  MfElt<S> f;
  f.parity = 1;
  f.a = poly_const(S(-1));
  f.b = poly_z<S>((s + 1) % 3);
  return f;
}

template <class S>
MfElt<S> rep_id() {
  MfElt<S> f;
  f.parity = 0;
  f.a = poly_const(S(1));
  f.b = poly_const(S(1));
  return f;
}

// generator pair around 1-based object i: the u into i and the v out of i,
// both odd cocycles
template <class S>
std::pair<MfElt<S>, MfElt<S>> generator_morphisms(int i_one_based) {
  int s = (i_one_based - 1) % 3;
  return {rep_u<S>((s + 2) % 3), rep_v<S>(s)};
}

template <class S>
MfElt<S> rep_monomial(const BM& m) {
  auto next = [](int i) { return (i + 1) % 3; };
  auto prev = [](int i) { return (i + 2) % 3; };
  auto power = [&](const MfElt<S>& one, int e) {
    MfElt<S> r = rep_id<S>();
    for (int q = 0; q < e; ++q) r = mf_compose(one, r);
    return r;
  };
  auto xrep = [&](int i, int e) {  // x_i = (u into i) . (v out of i)
    return power(mf_compose(rep_u<S>(prev(i)), rep_v<S>(i)), e);
  };
  switch (m.kind) {
    case Kind::Id: return rep_id<S>();
    case Kind::X: return xrep(m.src, m.exp);
    case Kind::Y:  // y_i = (v out of next(i)) . (u out of i)
      return power(mf_compose(rep_v<S>(next(m.src)), rep_u<S>(m.src)), m.exp);
    case Kind::U:  // x_{next(s)}^e . u_s
      return mf_compose(xrep(next(m.src), m.exp), rep_u<S>(m.src));
    case Kind::V:  // v_s . x_s^e
      return mf_compose(rep_v<S>(m.src), xrep(m.src, m.exp));
  }
  return rep_id<S>();
}

// ---------------------------------------------------------------------------
// Contraction data per slice: independent columns [reps | img | w] with
// h(img_j) = the stored preimage, h(reps) = h(w) = 0, p = rep coordinates.
// On complete slices the three families are checked to be a full basis; on
// capped slices they span a subspace and out-of-span inputs are reported.

template <class S>
struct SliceDecomp {
  Slice here, below;
  std::vector<std::uint32_t> rep_keys;
  std::vector<SVec<S>> img_preimages;  // coordinates in `below`
  int nimg = 0;
  SparseMatrix<S> span_cols;
  bool ok = true;
  bool complete = true;
};

template <class S>
class MfCategory {
 public:
  MfData md;
  Grading ga;  // induced cycle-category grading
  int cap;     // polynomial-degree cap (ignored where slices are finite)
  bool capped_mode;

  MfCategory(const MfData& data, int poly_cap)
      : md(data), ga(data.induced_grading()), cap(poly_cap),
        capped_mode(!data.slices_finite()) {
    md.validate();
  }

  const SliceDecomp<S>& decomp(int j, int i, int parity, long t) {
    auto key = std::make_tuple(j, i, parity, t);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, build_decomp(j, i, parity, t)).first;
    return it->second;
  }

  std::pair<int, bool> h_dim(int j, int i, int parity, long t) {
    return slice_h_dim<S>(md, j, i, parity, t, cap);
  }

  // coordinates of f in [reps | img | w], or nullopt outside the span
  std::optional<SVec<S>> coords(const SliceDecomp<S>& D, const MfElt<S>& f) {
    if (!D.ok) return std::nullopt;
    bool inside = true;
    SVec<S> v = mf_to_vec(D.here, f, &inside);
    if (!inside) return std::nullopt;
    return solve_in_image(D.span_cols, v);
  }

  HomElt<S> project(int j, int i, const MfElt<S>& f, long t, bool* ok = nullptr) {
    const SliceDecomp<S>& D = decomp(j, i, f.parity, t);
    HomElt<S> out;
    auto x = coords(D, f);
    if (ok) *ok = x.has_value();
    if (!x) return out;
    for (auto& [c, val] : *x)
      if (c < static_cast<int>(D.rep_keys.size())) helt_add(out, D.rep_keys[c], val);
    return out;
  }

  MfElt<S> homotopy(int j, int i, const MfElt<S>& f, long t, bool* ok = nullptr) {
    const SliceDecomp<S>& D = decomp(j, i, f.parity, t);
    MfElt<S> out;
    out.parity = f.parity ^ 1;
    auto x = coords(D, f);
    if (ok) *ok = x.has_value();
    if (!x) return out;
    std::map<int, S> acc;
    int nrep = static_cast<int>(D.rep_keys.size());
    for (auto& [c, val] : *x) {
      int bi = c - nrep;
      if (bi < 0 || bi >= D.nimg) continue;
      for (auto& [r, pv] : D.img_preimages[bi]) acc[r] += S(val * pv);
    }
    return mf_from_vec(D.below, svec_from_map(acc));
  }

 private:
  std::map<std::tuple<int, int, int, long>, SliceDecomp<S>> cache_;

  SliceDecomp<S> build_decomp(int j, int i, int parity, long t) {
    SliceDecomp<S> D;
    D.here = mf_slice(md, j, i, parity, t, cap);
    D.below = mf_slice(md, j, i, parity ^ 1, t - md.D, cap - 1);
    Slice here_ext = mf_slice(md, j, i, parity, t, cap + 1);
    Slice above = mf_slice(md, j, i, parity ^ 1, t + md.D, cap + 2);
    D.complete = D.here.complete && D.below.complete && above.complete;
    int n = static_cast<int>(D.here.basis.size());
    std::vector<SVec<S>> cols;
    // identified classes: basis monomials of the matching degree and parity
    int wcap = static_cast<int>(std::max(t, 0L)) + 2 * cap + 2;
    for (const BM& m : hom_basis(ga, i, j, wcap)) {
      if (bm_deg_num(ga, m) != t || bm_parity(m) != parity) continue;
      MfElt<S> r = rep_monomial<S>(m);
      bool inside = true;
      SVec<S> v = mf_to_vec(D.here, r, &inside);
      if (!inside) {
        if (!capped_mode) {
          D.ok = false;
          return D;
        }
        continue;  // representative beyond the cap; unusable on this slice
      }
      D.rep_keys.push_back(m.encode());
      cols.push_back(std::move(v));
    }
    // image of d from below, with preimages
    std::vector<std::pair<SVec<S>, SVec<S>>> bdry;
    mf_boundaries<S>(md, j, i, D.below, D.here, here_ext, &D.complete, bdry);
    Echelon<S> eimg(n);
    for (auto& [b, pre] : bdry) {
      if (eimg.add_row(b) >= 0) {
        cols.push_back(b);
        D.img_preimages.push_back(pre);
        ++D.nimg;
      }
    }
    // complement on which d is injective
    auto Dout = mf_d_matrix<S>(md, j, i, D.here, above, &D.complete);
    Echelon<S> eout(static_cast<int>(above.basis.size()));
    for (int c = 0; c < n; ++c) {
      SVec<S> col;
      for (int r = 0; r < Dout.nrows; ++r) {
        S v = Dout.get(r, c);
        if (!is_zero(v)) col.emplace_back(r, v);
      }
      if (col.empty()) continue;
      if (eout.add_row(col) >= 0) cols.push_back(SVec<S>{{c, S(1)}});
    }
    D.span_cols = SparseMatrix<S>(n, static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c)
      for (auto& [r, v] : cols[c]) D.span_cols.add(r, c, v);
    // the columns must be independent; on complete slices they must be a basis
    int rank = echelonize(D.span_cols).rank();
    if (rank != static_cast<int>(cols.size())) D.ok = false;
    if (D.complete && rank != n) D.ok = false;
    return D;
  }
};

// ---------------------------------------------------------------------------
// Per-degree dimension comparison with the induced cycle category.  For every
// hom pair the monomial degrees observed up to the weight cap are compared
// against slice cohomology, in both parities (the off-parity count is zero).

struct EquivalenceReport {
  bool ok = true;
  bool complete = true;
  int fail_i = -1, fail_j = -1;
  long fail_t = 0;
  int fail_parity = 0;
  int dim_mf = -1, dim_a = -1;
};

template <class S>
EquivalenceReport verify_A_equivalence(MfCategory<S>& C, int weight_cap) {
  EquivalenceReport rep;
  const Grading& g = C.ga;
  // with infinite slices the truncated cohomology sees exactly the classes
  // whose representatives fit under the polynomial cap, so count those
  int wcap = C.capped_mode ? std::max(weight_cap, 2 * C.cap + 2) : weight_cap;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::map<std::pair<long, int>, int> counts;
      std::map<std::pair<long, int>, Slice> slices;
      long lo = 0, hi = 0;
      for (const BM& m : hom_basis(g, i, j, wcap)) {
        long t = bm_deg_num(g, m);
        int parity = bm_parity(m);
        if (C.capped_mode) {
          auto [it, fresh] = slices.try_emplace({t, parity});
          if (fresh) it->second = mf_slice(C.md, j, i, parity, t, C.cap);
          bool inside = true;
          mf_to_vec(it->second, rep_monomial<S>(m), &inside);
          if (!inside) continue;
        }
        counts[{t, parity}]++;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
      for (long t = lo; t <= hi; ++t)
        for (int parity = 0; parity < 2; ++parity) {
          auto [dim, complete] = C.h_dim(j, i, parity, t);
          rep.complete = rep.complete && complete;
          auto it = counts.find({t, parity});
          int want = it == counts.end() ? 0 : it->second;
          if (dim != want) {
            rep.ok = false;
            rep.fail_i = i;
            rep.fail_j = j;
            rep.fail_t = t;
            rep.fail_parity = parity;
            rep.dim_mf = dim;
            rep.dim_a = want;
            return rep;
          }
        }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Homotopy transfer.  lambda_1 = rep, and on a chain (index 0 innermost)
//   lambda_k = sum_{s=1}^{k-1} sign(s, k, chain) F_{k-s}(left) . F_s(right),
//   F_1 = rep, F_j = h(lambda_j),   m_k = p(lambda_k).
// F_s has operator parity s + 1 and the Koszul rule charges it against the
// left block; the operator-level sign was fixed once by requiring the
// transferred products to pass the relation checker, and is pinned by the
// test suite (sign_mode encodes the convention; the default is the pinned
// one).

inline int transfer_sign_parity(int s, int k, long left_par, int mode) {
  long e = ((mode & 1) ? s : 0) + ((mode & 2) ? (k - s) : 0) +
           ((mode & 4) ? static_cast<long>(s) * (k - s) : 0) + ((mode & 8) ? 1 : 0) +
           (((mode & 16) ? s : s + 1) * left_par) +
           ((mode & 32) ? (s == 1) + (k - s == 1) : 0);
  return detail::par(e);
}

inline constexpr int kTransferSignMode = 42;

template <class S>
struct TransferContext {
  MfCategory<S>* C;
  int sign_mode = kTransferSignMode;
  bool ok = true;
  std::map<Chain, MfElt<S>> fcache;

  int src_of(const Chain& c) const { return chain_src(c); }
  int tgt_of(const Chain& c) const { return chain_tgt(C->ga, c); }

  MfElt<S> F(const Chain& c) {
    if (c.size() == 1) return rep_monomial<S>(BM::decode(c[0]));
    auto it = fcache.find(c);
    if (it != fcache.end()) return it->second;
    MfElt<S> lam = lambda(c);
    int k = static_cast<int>(c.size());
    long t = chain_deg_num(C->ga, c) + (2 - k) * C->md.D;
    bool hok = true;
    MfElt<S> out = C->homotopy(tgt_of(c), src_of(c), lam, t, &hok);
    if (!hok) ok = false;
    fcache.emplace(c, out);
    return out;
  }

  MfElt<S> lambda(const Chain& c) {
    int k = static_cast<int>(c.size());
    MfElt<S> acc;
    long chain_par = 0;
    for (auto e : c) chain_par += bm_parity(BM::decode(e));
    acc.parity = detail::par(k + chain_par);  // element parity, not operator parity
    for (int s = 1; s <= k - 1; ++s) {
      Chain right(c.begin(), c.begin() + s);
      Chain left(c.begin() + s, c.end());
      long left_par = 0;
      for (auto e : left) left_par += bm_parity(BM::decode(e));
      MfElt<S> fr = F(right);
      if (fr.empty()) continue;
      MfElt<S> fl = F(left);
      if (fl.empty()) continue;
      int sign = transfer_sign_parity(s, k, left_par, sign_mode);
      mf_axpy(acc, detail::sgn<S>(sign), mf_compose(fl, fr));
    }
    return acc;
  }
};

struct TransferReport {
  bool ok = true;        // all slice projections and homotopies resolved
  bool complete = true;  // no capped slices involved
};

template <class S>
AInfty<S> transfer_minimal_model(MfCategory<S>& C, int K, long wmax,
                                 TransferReport* report = nullptr,
                                 int sign_mode = kTransferSignMode) {
  AInfty<S> A{C.ga, K, wmax, {}};
  TransferContext<S> ctx{&C, sign_mode};
  ChainStore cs{&C.ga, wmax, {}};
  TransferReport local;
  TransferReport& rep = report ? *report : local;
  rep.complete = !C.capped_mode;
  for (int k = 3; k <= K && k <= wmax; ++k) {
    Cochain<S> mk;
    mk.arity = k;
    mk.ldeg = 2 - k;
    for (const Chain& rho : cs.get(k)) {
      MfElt<S> lam = ctx.lambda(rho);
      if (lam.empty()) continue;
      long t = chain_deg_num(C.ga, rho) + (2 - k) * C.md.D;
      bool pok = true;
      HomElt<S> val = C.project(ctx.tgt_of(rho), ctx.src_of(rho), lam, t, &pok);
      if (!pok) ctx.ok = false;
      for (auto& [key, c] : val) mk.add(rho, key, c);
    }
    if (!mk.empty()) A.mk.emplace(k, std::move(mk));
  }
  rep.ok = ctx.ok;
  return A;
}

// transferred m_2 must be the plain category composition
template <class S>
bool transfer_m2_matches(MfCategory<S>& C, long wmax) {
  ChainStore cs{&C.ga, wmax, {}};
  for (const Chain& rho : cs.get(2)) {
    BM f = BM::decode(rho[0]), gm = BM::decode(rho[1]);
    MfElt<S> prod = mf_compose(rep_monomial<S>(gm), rep_monomial<S>(f));
    bool pok = true;
    HomElt<S> val =
        C.project(bm_target(C.ga, gm), f.src, prod, chain_deg_num(C.ga, rho), &pok);
    if (!pok) return false;
    HomElt<S> want;
    if (auto expect = compose(C.ga, gm, f)) helt_add(want, expect->encode(), S(1));
    if (val != want) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Diagonal rescaling: the character on monomials induced by u_s -> lambda_s
// u_s, v_s -> mu_s v_s.  Rescaling is a strict automorphism, so it preserves
// the relations and fixes m_2; the cycle invariants pick up the products of
// the lambda's resp. mu's.

template <class S>
S bm_scale(const Grading& g, const BM& m, const std::vector<S>& lambda,
           const std::vector<S>& mu) {
  auto pw = [](const S& base, int e) {
    S r(1);
    for (int q = 0; q < e; ++q) r = S(r * base);
    return r;
  };
  switch (m.kind) {
    case Kind::Id: return S(1);
    case Kind::X: return pw(S(lambda[g.prev(m.src)] * mu[m.src]), m.exp);
    case Kind::Y: return pw(S(mu[g.next(m.src)] * lambda[m.src]), m.exp);
    case Kind::U:
      return S(lambda[m.src] * pw(S(lambda[m.src] * mu[g.next(m.src)]), m.exp));
    case Kind::V:
      return S(mu[m.src] * pw(S(lambda[g.prev(m.src)] * mu[m.src]), m.exp));
  }
  return S(1);
}

template <class S>
AInfty<S> diagonal_rescale(const AInfty<S>& A, const std::vector<S>& lambda,
                           const std::vector<S>& mu) {
  AInfty<S> B{A.g, A.K, A.wmax, {}};
  for (auto& [k, m] : A.mk) {
    Cochain<S> t;
    t.arity = m.arity;
    t.ldeg = m.ldeg;
    for (auto& [chain, val] : m.data) {
      S f(1);
      for (auto e : chain) f = S(f * bm_scale(A.g, BM::decode(e), lambda, mu));
      for (auto& [key, c] : val)
        t.add(chain, key, S(f * c / bm_scale(A.g, BM::decode(key), lambda, mu)));
    }
    if (!t.empty()) B.mk.emplace(k, std::move(t));
  }
  return B;
}

// normalize the cycle invariants to (1, 1); the raw constants are returned
template <class S>
AInfty<S> rescale_to_unit(const AInfty<S>& A, std::pair<S, S>* raw = nullptr) {
  auto ab = invariants_ab(A);
  if (raw) *raw = ab;
  if (is_zero(ab.first) || is_zero(ab.second))
    throw std::domain_error("rescale_to_unit: a cycle invariant vanishes");
  std::vector<S> lambda(A.g.n, S(1)), mu(A.g.n, S(1));
  lambda[0] = S(S(1) / ab.first);
  mu[0] = S(S(1) / ab.second);
  return diagonal_rescale(A, lambda, mu);
}

// ---------------------------------------------------------------------------
// Integral cover of the fractional structure: objects (i, k) with hom of
// integral degree m given by the base slice at numerator m D + 2(l - k) and
// parity m mod 2.  For D = 1 this is the base category itself.

template <class S>
std::pair<int, bool> b_tilde_hom_dim(MfCategory<S>& C, CoverObject a, CoverObject b,
                                     long m) {
  long t = m * C.md.D + 2 * (b.k - a.k);
  return C.h_dim(b.i, a.i, detail::par(m), t);
}

// induced products stay integral: on any component whose inputs all admit
// integral lifts, the sheet corrections telescope, so the output lifts too
template <class S>
bool b_tilde_products_integral(const AInfty<S>& A) {
  const Grading& g = A.g;
  for (auto& [k, m] : A.mk) {
    for (auto& [chain, val] : m.data) {
      for (long k0 = 0; k0 < g.D; ++k0) {
        long sheet = k0;
        bool liftable = true;
        for (auto e : chain) {
          BM b = BM::decode(e);
          bool found = false;
          for (long l = 0; l < g.D && !found; ++l)
            if (tilde_degree(g, b, sheet, l)) {
              sheet = l;
              found = true;
            }
          if (!found) {
            liftable = false;
            break;
          }
        }
        if (!liftable) continue;
        for (auto& [key, c] : val)
          if (!tilde_degree(g, BM::decode(key), k0, sheet)) return false;
      }
    }
  }
  return true;
}

}  // namespace wb
