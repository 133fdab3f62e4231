#pragma once

// One-sided twisted complexes over a truncated A-infinity structure, the
// twisted composition, and the convolution certificate: composing the two
// canonical morphisms between X_n and the (n-1)-term complex on X_1..X_{n-1}
// forces the full forward cycle into m_n, so the id-coefficient of the
// composite equals the first structure invariant.
//
// Sign convention: twisted-complex entries are stored as plain morphism
// combinations and no extra signs are inserted when differentials are fed
// into the products.  This is one of the self-consistent conventions; it is
// validated by the convolution identity rather than by symbol-level
// comparison with any external normalization.

#include <optional>
#include <vector>

#include "wb/ainfty.hpp"

namespace wb {

template <class S>
struct TwistedComplex {
  std::vector<int> objects;  // base-category objects, in order
  std::vector<long> shifts;  // object i sits in shift shifts[i]
  // differential: delta[i][j] is a map object j -> object i, nonzero only for
  // i > j (strict one-sidedness)
  std::vector<std::vector<HomElt<S>>> delta;

  int size() const { return static_cast<int>(objects.size()); }

  void init(std::vector<int> objs, std::vector<long> shs) {
    objects = std::move(objs);
    shifts = std::move(shs);
    delta.assign(objects.size(), std::vector<HomElt<S>>(objects.size()));
  }

  bool strictly_lower() const {
    for (int i = 0; i < size(); ++i)
      for (int j = i; j < size(); ++j)
        if (!delta[i][j].empty()) return false;
    return true;
  }
};

// Morphisms between twisted complexes: entry (i, j) maps source object j to
// target object i.
template <class S>
struct TwMorphism {
  std::vector<std::vector<HomElt<S>>> entries;  // [target][source]

  static TwMorphism zero(int rows, int cols) {
    TwMorphism f;
    f.entries.assign(rows, std::vector<HomElt<S>>(cols));
    return f;
  }
};

namespace detail {

// All strictly increasing delta-paths from object `from` inside T, appended
// innermost-first to `prefix`; calls sink(path_end, chain) for every path
// (including the empty one).
template <class S, class F>
void walk_delta(const TwistedComplex<S>& T, int from, Chain& prefix,
                std::vector<S>& coefs, const F& sink) {
  sink(from, prefix, coefs);
  for (int to = from + 1; to < T.size(); ++to) {
    for (auto& [key, c] : T.delta[to][from]) {
      prefix.push_back(key);
      coefs.push_back(c);
      walk_delta(T, to, prefix, coefs, sink);
      prefix.pop_back();
      coefs.pop_back();
    }
  }
}

}  // namespace detail

template <class S>
struct TwResult {
  TwMorphism<S> value;
  bool truncation_ok = true;
  int needed_arity = 0;  // largest arity beyond the structure's K encountered
};

// Generalized Maurer-Cartan residual sum_{k>=1} m_k(delta, ..., delta) as an
// entry matrix; empty everywhere iff the twisted differential squares to zero
// within truncation.
template <class S>
TwResult<S> mc_residual(const AInfty<S>& m, const TwistedComplex<S>& T) {
  TwResult<S> out;
  out.value = TwMorphism<S>::zero(T.size(), T.size());
  for (int j = 0; j < T.size(); ++j) {
    Chain path;
    std::vector<S> coefs;
    detail::walk_delta(T, j, path, coefs, [&](int end, const Chain& ch, const std::vector<S>& cf) {
      if (ch.empty()) return;  // m_0 not part of the sum
      int arity = static_cast<int>(ch.size());
      if (arity > m.K && arity > 2) {
        out.truncation_ok = false;
        out.needed_arity = std::max(out.needed_arity, arity);
        return;
      }
      HomElt<S> v = eval_m(m, ch);
      S c(1);
      for (auto& x : cf) c *= x;
      for (auto& [key, val] : v)
        helt_add(out.value.entries[end][j], key, S(c * val));
    });
  }
  return out;
}

// Twisted composition of g : T2 -> T3 after f : T1 -> T2:
//   sum m_{k+l+p+2}(delta3^p, g, delta2^l, f, delta1^k)  (innermost first).
template <class S>
TwResult<S> tw_compose(const AInfty<S>& m, const TwistedComplex<S>& T1,
                       const TwistedComplex<S>& T2, const TwistedComplex<S>& T3,
                       const TwMorphism<S>& g, const TwMorphism<S>& f) {
  TwResult<S> out;
  out.value = TwMorphism<S>::zero(T3.size(), T1.size());
  for (int j = 0; j < T1.size(); ++j) {
    Chain p1;
    std::vector<S> c1;
    detail::walk_delta(T1, j, p1, c1, [&](int e1, const Chain& ch1, const std::vector<S>& cf1) {
      for (int j2 = 0; j2 < T2.size(); ++j2) {
        if (f.entries[j2][e1].empty()) continue;
        for (auto& [fkey, fc] : f.entries[j2][e1]) {
          Chain p2 = ch1;
          p2.push_back(fkey);
          std::vector<S> c2 = cf1;
          c2.push_back(fc);
          detail::walk_delta(T2, j2, p2, c2,
                             [&](int e2, const Chain& ch2, const std::vector<S>& cf2) {
            for (int j3 = 0; j3 < T3.size(); ++j3) {
              if (g.entries[j3][e2].empty()) continue;
              for (auto& [gkey, gc] : g.entries[j3][e2]) {
                Chain p3 = ch2;
                p3.push_back(gkey);
                std::vector<S> c3 = cf2;
                c3.push_back(gc);
                detail::walk_delta(T3, j3, p3, c3,
                                   [&](int e3, const Chain& ch3, const std::vector<S>& cf3) {
                  int arity = static_cast<int>(ch3.size());
                  if (arity > m.K && arity > 2) {
                    out.truncation_ok = false;
                    out.needed_arity = std::max(out.needed_arity, arity);
                    return;
                  }
                  HomElt<S> v = eval_m(m, ch3);
                  if (v.empty()) return;
                  S c(1);
                  for (auto& x : cf3) c *= x;
                  for (auto& [key, val] : v)
                    helt_add(out.value.entries[e3][j], key, S(c * val));
                });
              }
            }
          });
        }
      }
    });
  }
  return out;
}

// The (n-1)-term complex X_1[1-n] -> X_2[2-n] -> ... -> X_{n-1}[-1] with the
// forward generators as differential (0-based objects 0..n-2).
template <class S>
TwistedComplex<S> build_chain_complex(const AInfty<S>& m, int n) {
  if (m.K < n) throw std::invalid_argument("build_chain_complex: structure truncated below n");
  TwistedComplex<S> T;
  std::vector<int> objs(n - 1);
  std::vector<long> shs(n - 1);
  for (int t = 0; t < n - 1; ++t) {
    objs[t] = t;
    shs[t] = (t + 1) - n;
  }
  T.init(std::move(objs), std::move(shs));
  for (int t = 0; t + 1 < n - 1; ++t)
    helt_add(T.delta[t + 1][t], bm_u(t).encode(), S(1));
  return T;
}

// Single-object complex for the base object i placed in shift 0.
template <class S>
TwistedComplex<S> point_complex(int i) {
  TwistedComplex<S> T;
  T.init({i}, {0});
  return T;
}

// Convolution certificate: the id_{X_n}-coefficient of the composite of the
// canonical morphisms X_n -> C_{n-1} -> X_n.
template <class S>
struct ConvolutionReport {
  S id_coefficient = S(0);
  bool mc_ok = true;
  bool truncation_ok = true;
};

template <class S>
ConvolutionReport<S> convolution_iso_check(const AInfty<S>& m, int n) {
  const Grading& g = m.g;
  if (g.n != n) throw std::invalid_argument("convolution_iso_check: n mismatch");
  ConvolutionReport<S> rep;
  TwistedComplex<S> C = build_chain_complex(m, n);
  auto mc = mc_residual(m, C);
  rep.truncation_ok = mc.truncation_ok;
  for (auto& row : mc.value.entries)
    for (auto& e : row)
      if (!e.empty()) rep.mc_ok = false;
  TwistedComplex<S> E = point_complex<S>(n - 1);  // X_n is 0-based object n-1
  // in: X_n -> X_1 via the wrap-around generator, out: X_{n-1} -> X_n
  TwMorphism<S> fin = TwMorphism<S>::zero(C.size(), 1);
  helt_add(fin.entries[0][0], bm_u(n - 1).encode(), S(1));
  TwMorphism<S> fout = TwMorphism<S>::zero(1, C.size());
  helt_add(fout.entries[0][n - 2], bm_u(n - 2).encode(), S(1));
  auto comp = tw_compose(m, E, C, E, fout, fin);
  rep.truncation_ok = rep.truncation_ok && comp.truncation_ok;
  for (auto& [key, c] : comp.value.entries[0][0])
    if (BM::decode(key).kind == Kind::Id) rep.id_coefficient = c;
  return rep;
}

}  // namespace wb
