#include "subcone/cone.hpp"

#include <algorithm>
#include <bit>

namespace subcone {

namespace {

void check_base(int n) {
  if (n < kMinBase || n > kMaxBase)
    throw std::invalid_argument("base-set size must be between 3 and 8");
}

}  // namespace

std::vector<std::uint32_t> enumerate_coordinates(int n) {
  check_base(n);
  std::vector<std::uint32_t> coords;
  std::uint32_t full = (std::uint32_t(1) << n) - 1;
  coords.reserve((size_t(1) << n) - n - 1);
  for (std::uint32_t a = 1; a <= full; ++a)
    if (std::popcount(a) != n - 1) coords.push_back(a);
  return coords;
}

std::vector<Triplet> elementary_triplets(int n) {
  check_base(n);
  std::vector<Triplet> out;
  std::uint32_t full = (std::uint32_t(1) << n) - 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::uint32_t ij = (std::uint32_t(1) << i) | (std::uint32_t(1) << j);
      std::uint32_t rest = full & ~ij;
      // K runs over all subsets of X \ {i,j} in ascending mask order.
      std::uint32_t K = 0;
      while (true) {
        out.push_back({i, j, K});
        if (K == rest) break;
        K = (K - rest) & rest;
      }
    }
  return out;
}

ConeSpec build_cone(int n) {
  check_base(n);
  ConeSpec spec;
  spec.n = n;
  spec.coords = enumerate_coordinates(n);
  spec.d = (int)spec.coords.size();
  spec.xcol = spec.d - 1;
  spec.coord_index.assign(size_t(1) << n, -1);
  for (int c = 0; c < spec.d; ++c) spec.coord_index[spec.coords[c]] = c;
  spec.triplets = elementary_triplets(n);
  spec.m = (int)spec.triplets.size();

  spec.rows.reserve(spec.m);
  std::uint32_t full = spec.full_mask();
  auto col_of = [&](std::uint32_t mask) -> int {
    // empty set column is dropped; subsets of size >= n-1 merge into xcol
    if (mask == 0) return -1;
    if (std::popcount(mask) >= n - 1) return spec.xcol;
    return spec.coord_index[mask];
  };
  (void)full;
  for (const Triplet& t : spec.triplets) {
    std::uint32_t ik = (std::uint32_t(1) << t.i) | t.K;
    std::uint32_t jk = (std::uint32_t(1) << t.j) | t.K;
    std::uint32_t ijk = ik | jk;
    int acc[4] = {0, 0, 0, 0};
    int cols[4] = {-1, -1, -1, -1};
    int used = 0;
    auto add = [&](std::uint32_t mask, int coef) {
      int c = col_of(mask);
      if (c < 0) return;
      for (int k = 0; k < used; ++k)
        if (cols[k] == c) {
          acc[k] += coef;
          return;
        }
      cols[used] = c;
      acc[used] = coef;
      ++used;
    };
    add(ik, +1);
    add(jk, +1);
    add(t.K, -1);
    add(ijk, -1);
    std::vector<RowTerm> row;
    for (int k = 0; k < used; ++k)
      if (acc[k] != 0) row.push_back({cols[k], acc[k]});
    std::sort(row.begin(), row.end(), [](const RowTerm& a, const RowTerm& b) { return a.col < b.col; });
    spec.rows.push_back(std::move(row));
  }
  return spec;
}

int ConeSpec::row_of(const Triplet& t) const {
  for (int r = 0; r < m; ++r)
    if (triplets[r] == t) return r;
  return -1;
}

long long f_j_weight(int n, int k) {
  check_base(n);
  if (k < 2 || k > n) throw std::invalid_argument("f_J weight requires 2 <= |J| <= n");
  auto choose2 = [](long long x) { return x * (x - 1) / 2; };
  return choose2(n) * (1LL << (n - 2)) - choose2(k) * (1LL << (n - k));
}

std::vector<long long> necessity_witness(int n, const Triplet& t) {
  check_base(n);
  std::uint32_t ij = (std::uint32_t(1) << t.i) | (std::uint32_t(1) << t.j);
  if (t.i >= t.j || (t.K & ij) || (t.K >> n))
    throw std::invalid_argument("invalid elementary triplet");
  int k = std::popcount(t.K);
  std::uint32_t ik = (std::uint32_t(1) << t.i) | t.K;
  std::uint32_t jk = (std::uint32_t(1) << t.j) | t.K;
  std::vector<long long> g(size_t(1) << n);
  for (std::uint32_t a = 0; a < (std::uint32_t(1) << n); ++a)
    g[a] = std::min<long long>(std::popcount(a), k + 1);
  g[ik] = k;
  g[jk] = k;
  return g;
}

}  // namespace subcone
