#pragma once

// Campaign-level exploration: the orbit-frontier search over canonical
// forms (probe one representative per orbit, lowest weight first) and the
// random rank-(d-1) sampler.

#include <functional>
#include <map>
#include <set>

#include "subcone/neighbors.hpp"
#include "subcone/rng.hpp"

namespace subcone {

struct BfsBudget {
  size_t max_probes = 0;  // 0 = unlimited
  size_t max_weight = 0;  // 0 = unlimited; heavier orbits are never probed
};

struct ProbeLog {
  std::string canonical;  // space-separated coordinates
  size_t weight = 0;
  size_t neighbor_count = 0;
  size_t new_orbits = 0;
};

template <class Z>
struct OrbitPoolEntry {
  std::vector<Z> canonical;
  size_t size = 0;
  size_t weight = 0;
  bool probed = false;
};

template <class Z>
struct BfsResult {
  // keyed by canonical coordinates
  std::map<std::vector<Z>, OrbitPoolEntry<Z>, bool (*)(const std::vector<Z>&, const std::vector<Z>&)> pool{
      coords_less<Z>};
  std::vector<ProbeLog> journal;
  bool closed = false;  // every orbit within the weight bound was probed
};

template <class Z>
size_t ray_weight(const IneqSystem<Z>& sys, const std::vector<Z>& ray) {
  size_t w = 0;
  for (int r = 0; r < sys.row_count(); ++r)
    if (sgn_z(sys.dot(r, std::span<const Z>(ray))) == 0) ++w;
  return w;
}

// Frontier search over orbits: insert the canonical forms of all neighbors
// of each probed representative, probing unprobed orbits in (weight,
// canonical coordinates) order. Stops at closure or at the probe budget.
template <class Z>
BfsResult<Z> orbit_bfs(const IneqSystem<Z>& sys, const SymmetryTable& tab,
                       const std::vector<std::vector<Z>>& seeds, const OrderSpec& order,
                       const NeighborOptions& opt, const BfsBudget& budget = {},
                       const std::function<void(const ProbeLog&)>& on_probe = {},
                       const std::vector<std::pair<std::vector<Z>, bool>>* resume = nullptr) {
  BfsResult<Z> res;
  auto insert_orbit = [&](const std::vector<Z>& ray) -> size_t {
    std::vector<Z> canon = canonical_coords(tab, ray);
    auto it = res.pool.find(canon);
    if (it != res.pool.end()) return 0;
    OrbitPoolEntry<Z> e;
    e.weight = ray_weight(sys, canon);
    e.size = 0;  // filled on demand
    e.canonical = canon;
    res.pool.emplace(std::move(canon), std::move(e));
    return 1;
  };
  if (resume)
    for (const auto& [canon, probed] : *resume) {
      insert_orbit(canon);
      res.pool[canon].probed = probed;
    }
  for (const auto& s : seeds) {
    if (!verify_extremal(sys, s)) throw std::invalid_argument("orbit_bfs seed is not extremal");
    insert_orbit(s);
  }

  size_t probes = 0;
  for (;;) {
    if (budget.max_probes && probes >= budget.max_probes) break;
    // lightest unprobed orbit, ties by canonical coordinates
    OrbitPoolEntry<Z>* next = nullptr;
    for (auto& [key, e] : res.pool) {
      if (e.probed) continue;
      if (budget.max_weight && e.weight > budget.max_weight) continue;
      if (!next || e.weight < next->weight) next = &e;
    }
    if (!next) {
      res.closed = true;
      break;
    }
    next->probed = true;
    ++probes;
    NeighborResult<Z> nb = neighbors(sys, next->canonical, order, opt);
    ProbeLog log;
    log.weight = next->weight;
    log.neighbor_count = nb.rays.size();
    {
      std::string k;
      for (size_t c = 0; c < next->canonical.size(); ++c) {
        if (c) k.push_back(' ');
        k += z_str(next->canonical[c]);
      }
      log.canonical = std::move(k);
    }
    for (const auto& r : nb.rays) log.new_orbits += insert_orbit(r);
    res.journal.push_back(log);
    if (on_probe) on_probe(res.journal.back());
  }
  for (auto& [key, e] : res.pool)
    if (e.size == 0) e.size = orbit_expand(tab, e.canonical).size();
  return res;
}

struct SampleStats {
  size_t attempts = 0;
  size_t hits = 0;  // rays found inside the cone (before dedup)
};

// Random extremal sampling: accumulate random rows until their rank reaches
// d-1, solve the kernel, keep the ray if it lies in the cone. With
// `near_support` the first d-2 rows are drawn from that submatrix, which
// restricts hits to the neighborhood of the corresponding ray.
template <class Z>
std::vector<std::vector<Z>> random_extremal_sample(const IneqSystem<Z>& sys,
                                                   std::uint64_t seed, size_t attempts,
                                                   SampleStats* stats = nullptr,
                                                   const std::vector<int>* near_support = nullptr) {
  SplitMix64 rng(seed);
  const int d = sys.cols;
  std::vector<std::vector<Z>> found;
  size_t hits = 0;
  for (size_t att = 0; att < attempts; ++att) {
    // incremental division-free elimination, kept fully reduced so each row
    // is the only one with a nonzero entry at its leading column; rows are
    // gcd-cleared to keep entries small (only the rank matters here)
    std::vector<std::vector<Z>> ech;
    std::vector<int> lead;
    std::vector<int> picked;
    auto clear_gcd = [&](std::vector<Z>& row) {
      Z g = 0;
      for (const Z& v : row) {
        g = gcd_z(g, v);
        if (g == Z(1)) return;
      }
      if (sgn_z(g) != 0)
        for (Z& v : row) v = v / g;
    };
    auto try_add = [&](int rid) -> bool {
      std::vector<Z> row = sys.dense_row(rid);
      for (size_t k = 0; k < ech.size(); ++k) {
        int c = lead[k];
        if (sgn_z(row[c]) == 0) continue;
        Z a = ech[k][c], b = row[c];
        for (int j = 0; j < d; ++j) row[j] = row[j] * a - ech[k][j] * b;
        clear_gcd(row);
      }
      int c = -1;
      for (int j = 0; j < d; ++j)
        if (sgn_z(row[j]) != 0) {
          c = j;
          break;
        }
      if (c < 0) return false;
      for (size_t k = 0; k < ech.size(); ++k) {
        if (sgn_z(ech[k][c]) == 0) continue;
        Z a = row[c], b = ech[k][c];
        for (int j = 0; j < d; ++j) ech[k][j] = ech[k][j] * a - row[j] * b;
        clear_gcd(ech[k]);
      }
      ech.push_back(std::move(row));
      lead.push_back(c);
      picked.push_back(rid);
      return true;
    };
    const size_t draw_cap = size_t(64) * d;
    size_t draws = 0;
    bool bailed = false;
    if (near_support) {
      while ((int)ech.size() < d - 2) {
        if (++draws > draw_cap) {
          bailed = true;
          break;
        }
        try_add((*near_support)[rng.below(near_support->size())]);
      }
    }
    while (!bailed && (int)ech.size() < d - 1) {
      if (++draws > draw_cap) {
        bailed = true;
        break;
      }
      try_add((int)rng.below((std::uint64_t)sys.row_count()));
    }
    if (bailed) continue;
    std::vector<Z> ray = kernel_vector(sys.dense_submatrix(picked));
    if (!in_cone(sys, std::span<const Z>(ray))) continue;
    ++hits;
    found.push_back(std::move(ray));
  }
  std::sort(found.begin(), found.end(), coords_less<Z>);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  if (stats) {
    stats->attempts = attempts;
    stats->hits = hits;
  }
  return found;
}

}  // namespace subcone
