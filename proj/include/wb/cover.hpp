#pragma once

// Graded lifts of the three real arcs on the cyclic cover y^D = x^{d2}(1-x)^{d3}
// of the thrice-punctured line, and the divisibility rule selecting which
// chords lift with integral degree.  No Floer geometry: a chord is determined
// by its projection, so everything reduces to phase and winding bookkeeping,
// which this module keeps independent of the tilde construction it is
// cross-checked against.

#include <stdexcept>
#include <vector>

#include "wb/category.hpp"

namespace wb {

struct CoverSpec {
  long d[3] = {0, 0, 0};  // d1, d2, d3; punctures ordered (infinity, 0, 1)
  long D() const { return d[0] + d[1] + d[2]; }
  void validate() const {
    if (D() < 1) throw std::invalid_argument("cover: need d1 + d2 + d3 >= 1");
  }
};

// the grading on the base arcs induced by dx/y (numerators over D)
inline Grading cover_grading(const CoverSpec& s) {
  s.validate();
  long D = s.D();
  return Grading(3, {D - 2 * s.d[1], 2 * s.d[1] - D, D},
                 {D - 2 * s.d[2], D, 2 * s.d[2] - D}, D);
}

struct GradedLift {
  int arc = 1;        // base arc 1..3
  long sheet = 0;     // 0 <= sheet < D
  long phase_num = 0; // phase = phase_num / D
};

// phases of the chosen lifts: -d2/D + 2k/D, 2k/D, d3/D + 2k/D
inline long lift_phase_num(const CoverSpec& s, int arc, long k) {
  long base = arc == 1 ? -s.d[1] : arc == 2 ? 0 : s.d[2];
  return base + 2 * k;
}

inline std::vector<GradedLift> lift_table(const CoverSpec& s) {
  s.validate();
  std::vector<GradedLift> out;
  for (int arc = 1; arc <= 3; ++arc)
    for (long k = 0; k < s.D(); ++k) out.push_back({arc, k, lift_phase_num(s, arc, k)});
  return out;
}

namespace detail {

// sheet shifts of the minimal chords, pinned by the phase table: the u and v
// landing on arc 2's endpoints lift at sheet 0 (u_{2,3} and v_{2,1}), and the
// rest follow from requiring the minimal chord to have integral phase
// difference.  shift_u[j] is indexed by the 0-based target object of u,
// shift_v[s] by the source object of v.
inline long cover_shift_u(const CoverSpec& s, int j) {
  long v[3] = {-s.d[1], s.d[1], 0};
  return v[j];
}

inline long cover_shift_v(const CoverSpec& s, int src) {
  long v[3] = {-s.d[2], 0, s.d[2]};
  return v[src];
}

}  // namespace detail

// total sheet shift of a chord monomial: loops x_i and y_i wind once around
// the puncture at the corresponding end of arc i+1 (weights d_i and d_{i+1}),
// u and v contribute their pinned shifts; shifts add along composites
inline long sheet_shift(const CoverSpec& s, const BM& m) {
  switch (m.kind) {
    case Kind::Id: return 0;
    case Kind::X: return m.exp * s.d[m.src];
    case Kind::Y: return m.exp * s.d[(m.src + 1) % 3];
    case Kind::U:  // x_{src+1}^exp . u_src
      return detail::cover_shift_u(s, (m.src + 1) % 3) + m.exp * s.d[(m.src + 1) % 3];
    case Kind::V:  // v_src . x_src^exp
      return detail::cover_shift_v(s, m.src) + m.exp * s.d[m.src];
  }
  return 0;
}

// chords between the graded lifts: the monomials of the base hom space whose
// lift starting on sheet a.k ends on sheet b.k (divisibility rule)
inline std::vector<BM> cover_hom_basis(const CoverSpec& s, CoverObject a, CoverObject b,
                                       int wcap) {
  s.validate();
  Grading g = cover_grading(s);
  long D = s.D();
  std::vector<BM> out;
  for (const BM& m : hom_basis(g, a.i, b.i, wcap)) {
    long delta = (b.k - a.k - sheet_shift(s, m)) % D;
    if ((delta + D) % D != 0) continue;
    out.push_back(m);
  }
  return out;
}

// integral degree of the lifted chord read off the phase table: the lift
// moves the endpoint phases by 2k/D and 2l/D, shifting the base degree by
// their difference
inline std::optional<long> cover_lift_degree(const CoverSpec& s, const BM& m, long k,
                                             long l) {
  Grading g = cover_grading(s);
  long phase_k = lift_phase_num(s, 1, k) - lift_phase_num(s, 1, 0);
  long phase_l = lift_phase_num(s, 1, l) - lift_phase_num(s, 1, 0);
  long num = bm_deg_num(g, m) - (phase_l - phase_k);
  if (num % s.D() != 0) return std::nullopt;
  long deg = num / s.D();
  if (((deg - bm_parity(m)) % 2 + 2) % 2 != 0) return std::nullopt;
  return deg;
}

}  // namespace wb
