#pragma once

// Exact sparse linear algebra: row-reduced echelon forms, rank/kernel,
// solving inside the image, quotient dimensions.  Everything is deterministic:
// rows are processed sparsest-first and pivots picked by a fill heuristic with
// ties broken by lowest column index.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wb/scalar.hpp"

namespace wb {

// Sparse vector: sorted by index, no explicit zeros.
template <class S>
using SVec = std::vector<std::pair<int, S>>;

template <class S>
SVec<S> svec_from_map(const std::map<int, S>& m) {
  SVec<S> r;
  r.reserve(m.size());
  for (auto& [i, v] : m)
    if (!is_zero(v)) r.emplace_back(i, v);
  return r;
}

template <class S>
struct SparseMatrix {
  int nrows = 0;
  int ncols = 0;
  std::vector<SVec<S>> rows;  // rows.size() == nrows

  SparseMatrix() = default;
  SparseMatrix(int nr, int nc) : nrows(nr), ncols(nc), rows(nr) {}

  void set(int r, int c, const S& v) {
    if (r < 0 || r >= nrows || c < 0 || c >= ncols)
      throw std::out_of_range("SparseMatrix::set: index out of range");
    auto& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      if (is_zero(v))
        row.erase(it);
      else
        it->second = v;
    } else if (!is_zero(v)) {
      row.insert(it, {c, v});
    }
  }

  void add(int r, int c, const S& v) {
    if (is_zero(v)) return;
    auto& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      it->second += v;
      if (is_zero(it->second)) row.erase(it);
    } else {
      row.insert(it, {c, v});
    }
  }

  S get(int r, int c) const {
    const auto& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return S(0);
  }

  // y = M x, with x indexed by columns.
  SVec<S> apply(const SVec<S>& x) const {
    std::map<int, S> xm(x.begin(), x.end());
    std::map<int, S> acc;
    for (int r = 0; r < nrows; ++r) {
      S s(0);
      bool any = false;
      for (auto& [c, v] : rows[r]) {
        auto it = xm.find(c);
        if (it != xm.end()) {
          s += v * it->second;
          any = true;
        }
      }
      if (any && !is_zero(s)) acc[r] = s;
    }
    return svec_from_map(acc);
  }
};

// r -= coef * p
template <class S>
SVec<S> svec_axpy(const SVec<S>& r, const S& coef, const SVec<S>& p) {
  SVec<S> out;
  out.reserve(r.size() + p.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].first < r[i].first) {
      S v = S(0) - coef * p[j].second;
      if (!is_zero(v)) out.emplace_back(p[j].first, v);
      ++j;
    } else {
      S v = r[i].second - coef * p[j].second;
      if (!is_zero(v)) out.emplace_back(r[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

// Reduced row echelon form accumulated row by row.
template <class S>
struct Echelon {
  int ncols = 0;
  std::vector<SVec<S>> rows;     // pivot entry normalized to 1
  std::vector<int> pivot_cols;   // parallel to rows
  std::map<int, int> col_to_row; // pivot column -> row index
  std::vector<long> col_fill;    // static fill heuristic (may be empty)

  explicit Echelon(int nc) : ncols(nc) {}

  int rank() const { return static_cast<int>(rows.size()); }

  // Reduce v against current pivot rows (v is consumed).
  SVec<S> reduce(SVec<S> v) const {
    // Pivot rows are mutually reduced, so each pivot column is eliminated
    // exactly once and elimination introduces no new pivot columns.
    std::vector<std::pair<int, S>> hits;
    for (auto& [c, val] : v)
      if (col_to_row.count(c)) hits.emplace_back(c, val);
    for (auto& [c, val] : hits)
      v = svec_axpy(v, val, rows[col_to_row.at(c)]);
    return v;
  }

  // Insert a row; returns the pivot column, or -1 if it reduced to zero.
  // forbidden_col (if >= 0) is never chosen as a pivot.
  int add_row(SVec<S> v, int forbidden_col = -1) {
    v = reduce(std::move(v));
    if (v.empty()) return -1;
    // pivot choice: least column fill, ties by lowest column index
    int best = -1;
    long best_fill = 0;
    for (auto& [c, val] : v) {
      if (c == forbidden_col) continue;
      long f = (c < static_cast<int>(col_fill.size())) ? col_fill[c] : 0;
      if (best == -1 || f < best_fill) {
        best = c;
        best_fill = f;
      }
    }
    if (best == -1) return -2;  // supported only on the forbidden column
    // normalize
    S inv = S(1) / [&] {
      for (auto& [c, val] : v)
        if (c == best) return val;
      throw std::logic_error("pivot vanished");
    }();
    for (auto& [c, val] : v) val = val * inv;
    // back-eliminate the new pivot column from existing rows
    for (size_t r = 0; r < rows.size(); ++r) {
      auto it = std::lower_bound(rows[r].begin(), rows[r].end(), best,
                                 [](const auto& e, int col) { return e.first < col; });
      if (it != rows[r].end() && it->first == best) {
        S coef = it->second;
        rows[r] = svec_axpy(rows[r], coef, v);
      }
    }
    col_to_row[best] = static_cast<int>(rows.size());
    rows.push_back(std::move(v));
    pivot_cols.push_back(best);
    return best;
  }
};

// Deterministic processing order: sparsest rows first, ties by row index.
template <class S>
std::vector<int> row_order(const SparseMatrix<S>& M) {
  std::vector<int> ord(M.nrows);
  for (int i = 0; i < M.nrows; ++i) ord[i] = i;
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
    return M.rows[a].size() < M.rows[b].size();
  });
  return ord;
}

template <class S>
Echelon<S> echelonize(const SparseMatrix<S>& M) {
  Echelon<S> e(M.ncols);
  e.col_fill.assign(M.ncols, 0);
  for (auto& row : M.rows)
    for (auto& [c, v] : row) ++e.col_fill[c];
  for (int r : row_order(M)) e.add_row(M.rows[r]);
  return e;
}

// rank + a basis of { x : Mx = 0 }.
template <class S>
std::pair<int, std::vector<SVec<S>>> rank_kernel(const SparseMatrix<S>& M) {
  Echelon<S> e = echelonize(M);
  std::vector<SVec<S>> kernel;
  std::vector<bool> is_pivot(M.ncols, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  for (int f = 0; f < M.ncols; ++f) {
    if (is_pivot[f]) continue;
    std::map<int, S> v;
    v[f] = S(1);
    for (size_t r = 0; r < e.rows.size(); ++r) {
      for (auto& [c, val] : e.rows[r]) {
        if (c == f) v[e.pivot_cols[r]] = S(0) - val;
      }
    }
    kernel.push_back(svec_from_map(v));
  }
  return {e.rank(), std::move(kernel)};
}

// Solve Mx = b exactly; returns the echelon solution (free variables zero)
// under the deterministic pivot order, or nullopt if b is not in the image.
template <class S>
std::optional<SVec<S>> solve_in_image(const SparseMatrix<S>& M, const SVec<S>& b) {
  for (auto& [r, v] : b)
    if (r < 0 || r >= M.nrows)
      throw std::invalid_argument("solve_in_image: rhs length mismatch");
  // Row-reduce the augmented matrix [M | b]; the augmented column is barred
  // from pivoting, so b lies in the image iff no reduced row is supported on
  // the augmented column alone.
  const int bc = M.ncols;  // augmented column index
  SparseMatrix<S> A(M.nrows, M.ncols + 1);
  A.rows = M.rows;
  for (auto& [r, v] : b) A.add(r, bc, v);
  Echelon<S> e(A.ncols);
  e.col_fill.assign(A.ncols, 0);
  for (auto& row : A.rows)
    for (auto& [c, v] : row) ++e.col_fill[c];
  e.col_fill[bc] = static_cast<long>(A.nrows) + 1;  // deprioritize
  for (int r : row_order(A)) {
    int piv = e.add_row(A.rows[r], bc);
    if (piv == -2) return std::nullopt;  // row reduced to (0 ... 0 | beta)
  }
  std::map<int, S> x;
  for (size_t r = 0; r < e.rows.size(); ++r) {
    for (auto& [c, val] : e.rows[r])
      if (c == bc) x[e.pivot_cols[r]] = val;
  }
  return svec_from_map(x);
}

// dim span(Z) - dim span(B), with span(B) <= span(Z) checked.
template <class S>
int quotient_dim(const std::vector<SVec<S>>& Z, const std::vector<SVec<S>>& B, int ncols) {
  SparseMatrix<S> MZ(static_cast<int>(Z.size()), ncols);
  MZ.rows = Z;
  MZ.nrows = static_cast<int>(Z.size());
  Echelon<S> ez = echelonize(MZ);
  int zr = ez.rank();
  // containment check: B must not enlarge the span
  Echelon<S> ezb = ez;
  for (auto& row : B) {
    if (ezb.add_row(row) >= 0)
      throw std::domain_error("quotient_dim: B is not contained in span(Z)");
  }
  SparseMatrix<S> MB(static_cast<int>(B.size()), ncols);
  MB.rows = B;
  MB.nrows = static_cast<int>(B.size());
  Echelon<S> eb = echelonize(MB);
  return zr - eb.rank();
}

}  // namespace wb
