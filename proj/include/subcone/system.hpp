#pragma once

// A pointed polyhedral cone given as { x : rows . x >= 0 } with exact
// integer coefficients. Rows are stored sparse; the submodular cone has at
// most four nonzeros per row and projected neighbor cones stay sparse too.

#include <span>
#include <vector>

#include "subcone/cone.hpp"
#include "subcone/linalg.hpp"

namespace subcone {

template <class Z>
struct ZTerm {
  int col;
  Z coef;
};

template <class Z>
struct IneqSystem {
  int cols = 0;
  std::vector<std::vector<ZTerm<Z>>> rows;

  int row_count() const { return (int)rows.size(); }

  Z dot(int r, std::span<const Z> x) const {
    Z acc = 0;
    for (const ZTerm<Z>& t : rows[r]) {
      if (t.coef == Z(1))
        acc += x[t.col];
      else if (t.coef == Z(-1))
        acc -= x[t.col];
      else
        acc += t.coef * x[t.col];
    }
    return acc;
  }

  std::vector<Z> dense_row(int r) const {
    std::vector<Z> v(cols, Z(0));
    for (const ZTerm<Z>& t : rows[r]) v[t.col] = v[t.col] + t.coef;
    return v;
  }

  Mat<Z> dense_submatrix(std::span<const int> row_ids) const {
    Mat<Z> M((int)row_ids.size(), cols);
    for (int k = 0; k < (int)row_ids.size(); ++k)
      for (const ZTerm<Z>& t : rows[row_ids[k]]) M.at(k, t.col) = M.at(k, t.col) + t.coef;
    return M;
  }

  void add_dense_row(std::span<const Z> v) {
    std::vector<ZTerm<Z>> row;
    for (int c = 0; c < cols; ++c)
      if (sgn_z(v[c]) != 0) row.push_back({c, v[c]});
    rows.push_back(std::move(row));
  }
};

template <class Z>
IneqSystem<Z> system_of(const ConeSpec& spec) {
  IneqSystem<Z> sys;
  sys.cols = spec.d;
  sys.rows.reserve(spec.m);
  for (const auto& row : spec.rows) {
    std::vector<ZTerm<Z>> r;
    r.reserve(row.size());
    for (const RowTerm& t : row) r.push_back({t.col, Z(t.coef)});
    sys.rows.push_back(std::move(r));
  }
  return sys;
}

// Membership test against every row of the system.
template <class Z>
bool in_cone(const IneqSystem<Z>& sys, std::span<const Z> x) {
  for (int r = 0; r < sys.row_count(); ++r)
    if (sgn_z(sys.dot(r, x)) < 0) return false;
  return true;
}

// Row indices with zero product (the support M(r) of a ray).
template <class Z>
std::vector<int> support_rows(const IneqSystem<Z>& sys, std::span<const Z> x) {
  std::vector<int> out;
  for (int r = 0; r < sys.row_count(); ++r)
    if (sgn_z(sys.dot(r, x)) == 0) out.push_back(r);
  return out;
}

}  // namespace subcone
