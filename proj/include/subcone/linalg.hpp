#pragma once

// Exact integer linear algebra on top of fraction-free (Bareiss) Gaussian
// elimination. No floating point anywhere; all divisions performed are
// exact. Works with either scalar backend from ints.hpp.

#include <stdexcept>
#include <vector>

#include "subcone/ints.hpp"

namespace subcone {

template <class Z>
struct Mat {
  int nr = 0;
  int nc = 0;
  std::vector<Z> a;

  Mat() = default;
  Mat(int rows, int cols) : nr(rows), nc(cols), a(size_t(rows) * cols) {}

  Z& at(int r, int c) { return a[size_t(r) * nc + c]; }
  const Z& at(int r, int c) const { return a[size_t(r) * nc + c]; }
};

// Lexicographic comparison of coordinate vectors.
template <class Z>
bool coords_less(const std::vector<Z>& a, const std::vector<Z>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

// Divide by the gcd of the entries, keeping the direction. Throws on the
// zero vector.
template <class Z>
void reduce_gcd(std::vector<Z>& v) {
  Z g = 0;
  for (const Z& x : v) {
    g = gcd_z(g, x);
    if (g == Z(1)) return;
  }
  if (g == Z(0)) throw std::invalid_argument("zero vector has no primitive form");
  for (Z& x : v) x = x / g;
}

// Primitive form with the first nonzero coordinate positive.
template <class Z>
void normalize_primitive(std::vector<Z>& v) {
  reduce_gcd(v);
  for (const Z& x : v) {
    int s = sgn_z(x);
    if (s > 0) return;
    if (s < 0) break;
  }
  for (Z& x : v) x = -x;
}

// Fraction-free row echelon form. Rows are permuted in place; pivot columns
// come out strictly increasing and every entry below a pivot is zero. The
// one-step division by the previous pivot is exact (entries stay minors of
// the input), so arithmetic never leaves the integers.
template <class Z>
struct Echelon {
  Mat<Z> mat;
  std::vector<int> pivot_cols;
  int rank = 0;
};

template <class Z>
Echelon<Z> echelon_ff(Mat<Z> A) {
  Echelon<Z> e;
  int nr = A.nr, nc = A.nc;
  int r = 0;
  Z prev = 1;
  for (int c = 0; c < nc && r < nr; ++c) {
    // pivot: smallest nonzero magnitude in the column, first occurrence
    int p = -1;
    for (int i = r; i < nr; ++i) {
      if (sgn_z(A.at(i, c)) == 0) continue;
      if (p < 0 || abs_z(A.at(i, c)) < abs_z(A.at(p, c))) p = i;
    }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < nc; ++j) std::swap(A.at(r, j), A.at(p, j));
    const Z piv = A.at(r, c);
    for (int i = r + 1; i < nr; ++i) {
      const Z head = A.at(i, c);
      // rows with a zero head still get the piv/prev rescale; dropping it
      // would break the exactness of later divisions
      for (int j = c + 1; j < nc; ++j)
        A.at(i, j) = (A.at(i, j) * piv - head * A.at(r, j)) / prev;
      A.at(i, c) = 0;
    }
    prev = piv;
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rank = r;
  e.mat = std::move(A);
  return e;
}

template <class Z>
int rank_ff(Mat<Z> A) {
  return echelon_ff(std::move(A)).rank;
}

namespace detail {

// Back-substitute one kernel vector from an echelon form: unit value at the
// free column `f`, zero at all other non-pivot columns. Keeps everything
// integral by rescaling the partial solution when a pivot does not divide.
template <class Z>
std::vector<Z> kernel_from_echelon(const Echelon<Z>& e, int f) {
  const Mat<Z>& R = e.mat;
  std::vector<Z> x(R.nc, Z(0));
  x[f] = 1;
  for (int k = e.rank - 1; k >= 0; --k) {
    int pc = e.pivot_cols[k];
    Z num = 0;
    for (int j = pc + 1; j < R.nc; ++j)
      if (sgn_z(x[j]) != 0) num = num + R.at(k, j) * x[j];
    if (sgn_z(num) == 0) {
      x[pc] = 0;
      continue;
    }
    num = -num;
    const Z& piv = R.at(k, pc);
    Z g = gcd_z(num, piv);
    Z scale = piv / g;
    if (!(scale == Z(1))) {
      for (Z& v : x) v = v * scale;
      num = num * scale;
    }
    x[pc] = num / piv;
  }
  return x;
}

}  // namespace detail

// The unique (up to scale) solution of Ax = 0 when rank(A) = cols-1,
// primitive with the first nonzero coordinate positive.
template <class Z>
std::vector<Z> kernel_vector(const Mat<Z>& A) {
  Echelon<Z> e = echelon_ff(A);
  if (e.rank != A.nc - 1)
    throw std::invalid_argument("kernel_vector requires rank cols-1, got rank " +
                                std::to_string(e.rank));
  int f = -1;
  for (int c = 0, k = 0; c < A.nc; ++c) {
    if (k < e.rank && e.pivot_cols[k] == c)
      ++k;
    else
      f = c;
  }
  std::vector<Z> x = detail::kernel_from_echelon(e, f);
  normalize_primitive(x);
  return x;
}

// Primitive integer basis of the right nullspace, one column per non-pivot
// column of the echelon form; A * basis = 0.
template <class Z>
Mat<Z> nullspace_basis(const Mat<Z>& A) {
  Echelon<Z> e = echelon_ff(A);
  int dim = A.nc - e.rank;
  Mat<Z> B(A.nc, dim);
  int out = 0;
  for (int c = 0, k = 0; c < A.nc; ++c) {
    if (k < e.rank && e.pivot_cols[k] == c) {
      ++k;
      continue;
    }
    std::vector<Z> x = detail::kernel_from_echelon(e, c);
    normalize_primitive(x);
    for (int r = 0; r < A.nc; ++r) B.at(r, out) = x[r];
    ++out;
  }
  return B;
}

}  // namespace subcone
