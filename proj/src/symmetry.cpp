#include "subcone/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace subcone {

SymmetryTable build_symmetry_table(const ConeSpec& spec) {
  SymmetryTable tab;
  tab.spec = &spec;
  const int n = spec.n;

  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    std::vector<int> map(spec.d);
    for (int c = 0; c < spec.d; ++c) {
      std::uint32_t a = spec.coords[c], img = 0;
      for (int i = 0; i < n; ++i)
        if (a >> i & 1) img |= std::uint32_t(1) << pi[i];
      map[c] = spec.coord_index[img];
    }
    tab.perm_maps.push_back(std::move(map));
    tab.elements.push_back({pi, false});
  } while (std::next_permutation(pi.begin(), pi.end()));

  // (sigma g)(A) = g~(X \ A) - g(X) + sum_{i in A} g({i}), with the expanded
  // values g~(empty) = 0 and g~(B) = g(X) for |B| = n-1
  tab.sigma_terms.resize(spec.d);
  const std::uint32_t full = spec.full_mask();
  for (int c = 0; c < spec.d; ++c) {
    std::uint32_t a = spec.coords[c];
    std::vector<std::pair<int, int>> acc;  // (col, coef)
    auto add = [&](int col, int coef) {
      for (auto& t : acc)
        if (t.first == col) {
          t.second += coef;
          return;
        }
      acc.push_back({col, coef});
    };
    std::uint32_t comp = full & ~a;
    if (comp != 0)
      add(std::popcount(comp) == n - 1 ? spec.xcol : spec.coord_index[comp], +1);
    add(spec.xcol, -1);
    for (int i = 0; i < n; ++i)
      if (a >> i & 1) add(spec.coord_index[std::uint32_t(1) << i], +1);
    std::sort(acc.begin(), acc.end());
    for (auto [col, coef] : acc)
      if (coef != 0) tab.sigma_terms[c].push_back({col, coef});
  }
  return tab;
}

}  // namespace subcone
