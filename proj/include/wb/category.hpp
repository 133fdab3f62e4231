#pragma once

// The cycle category A_{(p,q)}: n objects in a ring, forward arrows u,
// backward arrows v, loops x, y with xy = 0.  Gradings may be integral
// (D = 1) or fractional with denominator D; degrees are stored as integer
// numerators over D.  Also contains the D-sheeted "tilde" category (integral
// degree selection) and the shift-closure relabeling.
//
// Objects are 0-based internally (0..n-1).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wb {

struct GradingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Grading {
  int n = 0;
  // P[t]: degree numerator of the u-arrow into object t (u_{t-1,t}).
  // Q[s]: degree numerator of the v-arrow out of object s (v_{s,s-1}).
  std::vector<long> P, Q;
  long D = 1;
  std::vector<long> dd;  // dd[t] = (P[t]+Q[t])/2, the "d_i" attached to object t

  Grading() = default;
  Grading(int n_, std::vector<long> P_, std::vector<long> Q_, long D_ = 1)
      : n(n_), P(std::move(P_)), Q(std::move(Q_)), D(D_) {
    validate();
    dd.resize(n);
    for (int t = 0; t < n; ++t) dd[t] = (P[t] + Q[t]) / 2;
  }

  void validate() const {
    if (n < 3) throw GradingError("grading: need n >= 3");
    if (D < 1) throw GradingError("grading: need D >= 1");
    if (static_cast<int>(P.size()) != n || static_cast<int>(Q.size()) != n)
      throw GradingError("grading: p,q must have length n");
    for (int i = 0; i < n; ++i) {
      if (((P[i] - D) % 2 + 2) % 2 != 0 || ((Q[i] - D) % 2 + 2) % 2 != 0)
        throw GradingError("grading: p_i, q_i must all have the parity of D");
    }
    long sp = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
      sp += P[i];
      sq += Q[i];
    }
    if (D == 1) {
      if (sp != n - 2 || sq != n - 2)
        throw GradingError("grading: sum p_i = sum q_i = n-2 required");
    } else {
      long sd = (sp + sq) / 2;
      if (sd != D) throw GradingError("grading: sum d_i = D > 0 required");
    }
  }

  int next(int i) const { return (i + 1) % n; }
  int prev(int i) const { return (i + n - 1) % n; }
};

enum class Kind : std::uint8_t { Id = 0, X = 1, Y = 2, U = 3, V = 4 };

// One monomial generator of a hom space.
//   Id(i)      identity of object i          (exp = 0)
//   X(i,e)     x_i^e,  e >= 1                object i -> i
//   Y(i,e)     y_i^e,  e >= 1                object i -> i
//   U(s,e)     x_{s+1}^e u_{s,s+1}           object s -> s+1
//   V(s,e)     v_{s,s-1} x_s^e               object s -> s-1
struct BM {
  int src = 0;
  Kind kind = Kind::Id;
  int exp = 0;

  friend bool operator==(const BM&, const BM&) = default;
  friend auto operator<=>(const BM&, const BM&) = default;

  std::uint32_t encode() const {
    return (static_cast<std::uint32_t>(src) << 24) |
           (static_cast<std::uint32_t>(kind) << 20) |
           static_cast<std::uint32_t>(exp);
  }
  static BM decode(std::uint32_t w) {
    BM m;
    m.src = static_cast<int>(w >> 24);
    m.kind = static_cast<Kind>((w >> 20) & 0xF);
    m.exp = static_cast<int>(w & 0xFFFFF);
    return m;
  }
};

inline BM bm_id(int i) { return {i, Kind::Id, 0}; }
inline BM bm_x(int i, int e) { return {i, Kind::X, e}; }
inline BM bm_y(int i, int e) { return {i, Kind::Y, e}; }
inline BM bm_u(int s, int e = 0) { return {s, Kind::U, e}; }
inline BM bm_v(int s, int e = 0) { return {s, Kind::V, e}; }

inline int bm_target(const Grading& g, const BM& m) {
  switch (m.kind) {
    case Kind::U: return g.next(m.src);
    case Kind::V: return g.prev(m.src);
    default: return m.src;
  }
}

inline int bm_weight(const BM& m) {
  switch (m.kind) {
    case Kind::Id: return 0;
    case Kind::X:
    case Kind::Y: return 2 * m.exp;
    default: return 2 * m.exp + 1;
  }
}

// parity in A_{(1,1)}: u, v odd; x, y even
inline int bm_parity(const BM& m) { return bm_weight(m) & 1; }

// degree numerator over g.D
inline long bm_deg_num(const Grading& g, const BM& m) {
  switch (m.kind) {
    case Kind::Id: return 0;
    case Kind::X: return 2L * m.exp * g.dd[m.src];
    case Kind::Y: return 2L * m.exp * g.dd[g.next(m.src)];
    case Kind::U: {
      int t = g.next(m.src);
      return g.P[t] + 2L * m.exp * g.dd[t];
    }
    case Kind::V: return g.Q[m.src] + 2L * m.exp * g.dd[m.src];
  }
  return 0;
}

// Composition g . f (apply f first).  All nonzero products of monomials are
// monomials with coefficient 1.  Returns nullopt for a zero product and
// throws on endpoint mismatch.
inline std::optional<BM> compose(const Grading& gr, const BM& g, const BM& f) {
  if (g.src != bm_target(gr, f))
    throw std::invalid_argument("compose: endpoint mismatch");
  if (f.kind == Kind::Id) return g;
  if (g.kind == Kind::Id) return f;
  switch (g.kind) {
    case Kind::X:
      if (f.kind == Kind::X) return bm_x(f.src, f.exp + g.exp);
      if (f.kind == Kind::U) return bm_u(f.src, f.exp + g.exp);
      return std::nullopt;  // x.y = 0, x.v = 0
    case Kind::Y:
      if (f.kind == Kind::Y) return bm_y(f.src, f.exp + g.exp);
      if (f.kind == Kind::V) return bm_v(f.src, f.exp + g.exp);
      return std::nullopt;  // y.x = 0, y.u = 0
    case Kind::U:
      if (f.kind == Kind::Y) return bm_u(f.src, g.exp + f.exp);
      if (f.kind == Kind::V) return bm_x(f.src, g.exp + f.exp + 1);
      return std::nullopt;  // u.x = 0, u.u = 0
    case Kind::V:
      if (f.kind == Kind::X) return bm_v(f.src, g.exp + f.exp);
      if (f.kind == Kind::U) return bm_y(f.src, g.exp + f.exp + 1);
      return std::nullopt;  // v.y = 0, v.v = 0
    default: return std::nullopt;
  }
}

// All basis monomials i -> j of weight <= wcap, optionally filtered by a
// degree-numerator window [deg_lo, deg_hi].  Sorted by (kind, exp).
inline std::vector<BM> hom_basis(const Grading& g, int i, int j, int wcap,
                                 std::optional<std::pair<long, long>> deg_window = {}) {
  std::vector<BM> out;
  auto push = [&](const BM& m) {
    if (bm_weight(m) > wcap) return;
    if (deg_window) {
      long d = bm_deg_num(g, m);
      if (d < deg_window->first || d > deg_window->second) return;
    }
    out.push_back(m);
  };
  if (i == j) {
    push(bm_id(i));
    for (int e = 1; 2 * e <= wcap; ++e) {
      push(bm_x(i, e));
      push(bm_y(i, e));
    }
  }
  if (j == g.next(i))
    for (int e = 0; 2 * e + 1 <= wcap; ++e) push(bm_u(i, e));
  if (j == g.prev(i))
    for (int e = 0; 2 * e + 1 <= wcap; ++e) push(bm_v(i, e));
  return out;
}

// ---------------------------------------------------------------------------
// Tilde category: objects (i, k) with 0 <= k < D; morphisms are base
// monomials whose shifted degree (deg - 2(l-k)/D) is an integer of the same
// parity as the Z/2-degree in A_{(1,1)}.

struct CoverObject {
  int i = 0;   // base object
  long k = 0;  // sheet
  friend bool operator==(const CoverObject&, const CoverObject&) = default;
  friend auto operator<=>(const CoverObject&, const CoverObject&) = default;
};

// Integral degree of m as a morphism (i,k) -> (j,l), if admissible.
inline std::optional<long> tilde_degree(const Grading& g, const BM& m, long k, long l) {
  long num = bm_deg_num(g, m) - 2 * (l - k);
  if (num % g.D != 0) return std::nullopt;
  long deg = num / g.D;
  if (((deg - bm_parity(m)) % 2 + 2) % 2 != 0) return std::nullopt;
  return deg;
}

inline std::vector<BM> tilde_hom_basis(const Grading& g, CoverObject a, CoverObject b,
                                       int wcap,
                                       std::optional<std::pair<long, long>> deg_window = {}) {
  std::vector<BM> out;
  for (const BM& m : hom_basis(g, a.i, b.i, wcap)) {
    auto deg = tilde_degree(g, m, a.k, b.k);
    if (!deg) continue;
    if (deg_window && (*deg < deg_window->first || *deg > deg_window->second)) continue;
    out.push_back(m);
  }
  return out;
}

// Shift-closure relabeling between two gradings with p_i + q_i = p'_i + q'_i:
// sheet of object i moves by c_i = sum_{j<=i} (p'_j - p_j)/2 (c_0 = 0, indices
// 0-based, cumulative from object 1), so that c_t - c_s absorbs the change in
// the degree of every arrow s -> t.  Sheets are tracked over Z; reducing mod D
// costs an even homological shift per wrap.
struct ShiftRelabeling {
  std::vector<long> c;  // per-object sheet offset
};

inline ShiftRelabeling shift_closure_iso(const Grading& from, const Grading& to,
                                         int certify_wcap = 8) {
  if (from.n != to.n || from.D != to.D)
    throw GradingError("shift_closure_iso: shapes differ");
  for (int i = 0; i < from.n; ++i)
    if (from.P[i] + from.Q[i] != to.P[i] + to.Q[i])
      throw GradingError("shift_closure_iso: requires p_i + q_i = p'_i + q'_i");
  ShiftRelabeling rel;
  rel.c.assign(from.n, 0);
  long acc = 0;
  for (int i = 1; i < from.n; ++i) {
    if ((from.P[i] - to.P[i]) % 2 != 0)
      throw GradingError("shift_closure_iso: parity mismatch");
    acc += (to.P[i] - from.P[i]) / 2;
    rel.c[i] = acc;
  }
  // certify: every admissible morphism stays admissible with equal degree
  for (int i = 0; i < from.n; ++i)
    for (int j = 0; j < from.n; ++j)
      for (const BM& m : hom_basis(from, i, j, certify_wcap))
        for (long k = 0; k < from.D; ++k)
          for (long l = 0; l < from.D; ++l) {
            auto d0 = tilde_degree(from, m, k, l);
            auto d1 = tilde_degree(to, m, k + rel.c[i], l + rel.c[j]);
            if (d0.has_value() != d1.has_value() || (d0 && *d0 != *d1))
              throw std::logic_error("shift_closure_iso: certification failed");
          }
  return rel;
}

}  // namespace wb
