#pragma once

// Model of the cone of p-standardized submodular set functions on a base set
// of n elements. Subsets are n-bit masks (element i = bit i). The reduced
// coordinate set drops the empty set and merges all subsets of size >= n-1
// into the full-set column, so a function is a vector of d = 2^n-(n+1)
// values and the elementary inequalities become an m x d matrix with
// m = C(n,2) * 2^(n-2) rows and entries in {-1, 0, +1}.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "subcone/ints.hpp"

namespace subcone {

constexpr int kMinBase = 3;
constexpr int kMaxBase = 8;  // subset masks stay within one machine word

// Elementary inequality (i,j|K): f(iK) + f(jK) - f(K) - f(ijK) >= 0,
// with i < j and K disjoint from {i, j}.
struct Triplet {
  int i = 0;
  int j = 0;
  std::uint32_t K = 0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

struct RowTerm {
  int col;
  int coef;  // -1 or +1 (never 0)
};

struct ConeSpec {
  int n = 0;
  int d = 0;  // 2^n - (n+1)
  int m = 0;  // C(n,2) * 2^(n-2)
  int xcol = 0;  // column of the merged full-set coordinate (always d-1)
  std::vector<std::uint32_t> coords;       // masks, strictly ascending, size d
  std::vector<int> coord_index;            // size 2^n; mask -> column, or -1
  std::vector<Triplet> triplets;           // canonical row order, size m
  std::vector<std::vector<RowTerm>> rows;  // reduced sparse rows, size m

  std::uint32_t full_mask() const { return (std::uint32_t(1) << n) - 1; }

  std::vector<int> dense_row(int r) const {
    std::vector<int> v(d, 0);
    for (const RowTerm& t : rows[r]) v[t.col] += t.coef;
    return v;
  }

  // Index of a triplet in the canonical order, or -1.
  int row_of(const Triplet& t) const;
};

// All masks A with A != 0 and |A| != n-1, ascending; length 2^n - (n+1).
std::vector<std::uint32_t> enumerate_coordinates(int n);

// All (i,j|K), ordered (i,j) lexicographic then K ascending by mask.
std::vector<Triplet> elementary_triplets(int n);

ConeSpec build_cone(int n);

// Number of facet rows the indicator ray f_J lies on:
// C(n,2)*2^(n-2) - C(k,2)*2^(n-k) with k = |J|.
long long f_j_weight(int n, int j_size);

// Witness that the row (i,j|K) is not implied by the others: a set function
// g with g . delta(i,j|K) = -1 and g . delta in {0, 1} for every other
// elementary triplet. Returned as a full 2^n-vector.
std::vector<long long> necessity_witness(int n, const Triplet& t);

// Product of a full 2^n-vector with delta(i,j|K) (four terms).
template <class Z>
Z delta_product(int n, const Triplet& t, const std::vector<Z>& full) {
  std::uint32_t ik = (std::uint32_t(1) << t.i) | t.K;
  std::uint32_t jk = (std::uint32_t(1) << t.j) | t.K;
  std::uint32_t ijk = ik | jk;
  return full[ik] + full[jk] - full[t.K] - full[ijk];
}

// Reduced coordinates of the indicator-of-intersection function
// f_J(A) = [J meets A]; requires |J| >= 2.
template <class Z>
std::vector<Z> f_j(const ConeSpec& spec, std::uint32_t J) {
  if (std::popcount(J) < 2) throw std::invalid_argument("f_J requires |J| >= 2");
  if (J & ~spec.full_mask()) throw std::invalid_argument("J not a subset of the base");
  std::vector<Z> g(spec.d);
  for (int c = 0; c < spec.d; ++c) g[c] = (spec.coords[c] & J) ? 1 : 0;
  return g;
}

// Expansion of reduced coordinates to all 2^n subsets:
// g~(empty) = 0, g~(A) = g(X) for |A| = n-1, the rest copied.
template <class Z>
std::vector<Z> expand_reduced(const ConeSpec& spec, const std::vector<Z>& g) {
  if ((int)g.size() != spec.d) throw std::invalid_argument("expand_reduced: wrong length");
  std::vector<Z> full(size_t(1) << spec.n);
  full[0] = 0;
  for (std::uint32_t a = 1; a <= spec.full_mask(); ++a) {
    int c = spec.coord_index[a];
    full[a] = (c >= 0) ? g[c] : g[spec.xcol];
  }
  return full;
}

// Inverse of expand_reduced on the p-standardized subspace.
template <class Z>
std::vector<Z> reduce_full(const ConeSpec& spec, const std::vector<Z>& full) {
  if (full.size() != (size_t(1) << spec.n)) throw std::invalid_argument("reduce_full: wrong length");
  std::vector<Z> g(spec.d);
  for (int c = 0; c < spec.d; ++c) g[c] = full[spec.coords[c]];
  return g;
}

// Extension of a ray over n elements to the base extended by a new top
// element y: f*(yA) = f*(A) = f(A). Returns reduced coordinates over n+1.
template <class Z>
std::vector<Z> embed_ray(const ConeSpec& spec, const ConeSpec& spec_up,
                         const std::vector<Z>& g) {
  if (spec_up.n != spec.n + 1) throw std::invalid_argument("embed_ray: bases must differ by 1");
  std::vector<Z> full = expand_reduced(spec, g);
  std::vector<Z> out(spec_up.d);
  for (int c = 0; c < spec_up.d; ++c)
    out[c] = full[spec_up.coords[c] & spec.full_mask()];
  return out;
}

}  // namespace subcone
