#pragma once

// The 2*n! symmetries of the cone: base-set permutations acting by
// (pi f)(A) = f(pi A), and the reflection (duality)
// (sigma f)(A) = f(X \ A) - f(X) + sum_{i in A} f({i}),
// which is an involution commuting with every permutation. On the reduced
// coordinates a permutation is a pure index gather and sigma is an integer
// linear map, both precomputed per base size.

#include <cstdint>
#include <string>
#include <vector>

#include "subcone/cone.hpp"
#include "subcone/linalg.hpp"

namespace subcone {

struct SymmetryElement {
  std::vector<int> perm;  // image of each base element
  bool reflect = false;
};

struct SymmetryTable {
  const ConeSpec* spec = nullptr;
  // gather maps: image[c] = input[perm_maps[p][c]]
  std::vector<std::vector<int>> perm_maps;
  std::vector<SymmetryElement> elements;  // n! permutations, reflect excluded
  // sigma as signed terms per output coordinate
  struct SigTerm {
    int col;
    int coef;
  };
  std::vector<std::vector<SigTerm>> sigma_terms;

  size_t group_order() const { return 2 * perm_maps.size(); }
};

SymmetryTable build_symmetry_table(const ConeSpec& spec);

template <class Z>
std::vector<Z> apply_perm_map(const std::vector<int>& map, const std::vector<Z>& g) {
  std::vector<Z> out(g.size());
  for (size_t c = 0; c < g.size(); ++c) out[c] = g[map[c]];
  return out;
}

// Permutation action on reduced coordinates; pi given as element images.
template <class Z>
std::vector<Z> apply_permutation(const ConeSpec& spec, const std::vector<int>& pi,
                                 const std::vector<Z>& g) {
  std::vector<Z> out(spec.d);
  for (int c = 0; c < spec.d; ++c) {
    std::uint32_t a = spec.coords[c], img = 0;
    for (int i = 0; i < spec.n; ++i)
      if (a >> i & 1) img |= std::uint32_t(1) << pi[i];
    out[c] = g[spec.coord_index[img]];
  }
  return out;
}

// Reflection on reduced coordinates, gcd-reduced (the map is linear but not
// a permutation, so images of primitive vectors need re-clearing).
template <class Z>
std::vector<Z> apply_reflection(const SymmetryTable& tab, const std::vector<Z>& g) {
  std::vector<Z> out(tab.spec->d, Z(0));
  for (int c = 0; c < tab.spec->d; ++c) {
    Z acc = 0;
    for (const auto& t : tab.sigma_terms[c]) {
      if (t.coef == 1)
        acc += g[t.col];
      else if (t.coef == -1)
        acc -= g[t.col];
      else
        acc += Z(t.coef) * g[t.col];
    }
    out[c] = acc;
  }
  reduce_gcd(out);
  return out;
}

// Lexicographically minimal primitive image over the whole group.
template <class Z>
std::vector<Z> canonical_coords(const SymmetryTable& tab, const std::vector<Z>& ray) {
  std::vector<Z> base = ray;
  reduce_gcd(base);
  std::vector<Z> reflected = apply_reflection(tab, base);
  std::vector<Z> best = base;
  std::vector<Z> img(base.size());
  for (const std::vector<int>& map : tab.perm_maps) {
    for (const std::vector<Z>* src : {&base, &reflected}) {
      for (size_t c = 0; c < img.size(); ++c) img[c] = (*src)[map[c]];
      if (coords_less(img, best)) best.swap(img);
    }
  }
  return best;
}

// All distinct symmetric images, each primitive.
template <class Z>
std::vector<std::vector<Z>> orbit_expand(const SymmetryTable& tab, const std::vector<Z>& ray) {
  std::vector<Z> base = ray;
  reduce_gcd(base);
  std::vector<Z> reflected = apply_reflection(tab, base);
  std::vector<std::vector<Z>> images;
  images.reserve(tab.group_order());
  for (const std::vector<int>& map : tab.perm_maps) {
    images.push_back(apply_perm_map(map, base));
    images.push_back(apply_perm_map(map, reflected));
  }
  std::sort(images.begin(), images.end(), coords_less<Z>);
  images.erase(std::unique(images.begin(), images.end()), images.end());
  return images;
}

template <class Z>
struct OrbitRecord {
  std::vector<Z> canonical;
  size_t size = 0;
  size_t weight = 0;
};

template <class Z>
OrbitRecord<Z> canonical_form(const SymmetryTable& tab, const std::vector<Z>& ray) {
  OrbitRecord<Z> rec;
  std::vector<std::vector<Z>> images = orbit_expand(tab, ray);
  rec.canonical = images.front();
  rec.size = images.size();
  return rec;
}

}  // namespace subcone
