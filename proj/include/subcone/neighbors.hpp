#pragma once

// Adjacency decomposition: extremality checks, the (d-1)-dimensional
// neighbor cone of a ray, lifting its rays back to neighbors, the
// orbit-frontier search, and the random rank-(d-1) sampler.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "subcone/dd.hpp"
#include "subcone/symmetry.hpp"

namespace subcone {

// A ray is extremal iff it lies in the cone and its support rows have rank
// cols-1 (then it is the unique kernel direction of that support).
template <class Z>
bool verify_extremal(const IneqSystem<Z>& sys, const std::vector<Z>& ray) {
  if (!in_cone(sys, std::span<const Z>(ray))) return false;
  std::vector<int> sup = support_rows(sys, std::span<const Z>(ray));
  if ((int)sup.size() < sys.cols - 1) return false;
  return rank_ff(sys.dense_submatrix(sup)) == sys.cols - 1;
}

template <class Z>
struct NeighborCone {
  std::vector<Z> source;            // the probed ray r
  std::vector<int> support;         // M' = M(r), global row ids
  int excluded_row = -1;            // z, a facet with z.r > 0
  Mat<Z> projection;                // P: cols x (cols-1), columns span z-perp
  IneqSystem<Z> projected;          // M' P, a pointed cone of dimension cols-1
};

template <class Z>
NeighborCone<Z> build_neighbor_cone(const IneqSystem<Z>& sys, const std::vector<Z>& ray,
                                    int z_choice = -1) {
  NeighborCone<Z> nc;
  nc.source = ray;
  reduce_gcd(nc.source);
  nc.support = support_rows(sys, std::span<const Z>(nc.source));
  if (rank_ff(sys.dense_submatrix(nc.support)) != sys.cols - 1)
    throw std::invalid_argument("build_neighbor_cone: ray is not extremal");
  if (z_choice >= 0) {
    nc.excluded_row = z_choice;
    if (sgn_z(sys.dot(z_choice, std::span<const Z>(nc.source))) <= 0)
      throw std::invalid_argument("build_neighbor_cone: z must be outside the support");
  } else {
    std::vector<bool> in_sup(sys.row_count(), false);
    for (int r : nc.support) in_sup[r] = true;
    for (int r = 0; r < sys.row_count(); ++r)
      if (!in_sup[r]) {
        nc.excluded_row = r;
        break;
      }
    if (nc.excluded_row < 0)
      throw std::invalid_argument("build_neighbor_cone: no row outside the support");
  }

  Mat<Z> zrow(1, sys.cols);
  {
    std::vector<Z> z = sys.dense_row(nc.excluded_row);
    for (int c = 0; c < sys.cols; ++c) zrow.at(0, c) = z[c];
  }
  nc.projection = nullspace_basis(zrow);

  nc.projected.cols = sys.cols - 1;
  for (int r : nc.support) {
    std::vector<Z> dense = sys.dense_row(r);
    std::vector<Z> prow(nc.projected.cols, Z(0));
    for (int j = 0; j < nc.projected.cols; ++j) {
      Z acc = 0;
      for (int c = 0; c < sys.cols; ++c)
        if (sgn_z(dense[c]) != 0) acc += dense[c] * nc.projection.at(c, j);
      prow[j] = acc;
    }
    nc.projected.add_dense_row(prow);
  }
  return nc;
}

// Lift an extremal ray s of the projected cone back to the neighbor
// r' = s + mu r, with mu the extreme value of -(a.s)/(a.r) over the rows
// outside M'; at least one such row becomes tight.
template <class Z>
std::vector<Z> lift_neighbor(const IneqSystem<Z>& sys, const NeighborCone<Z>& nc,
                             const std::vector<Z>& projected_ray) {
  const int d = sys.cols;
  std::vector<Z> s(d, Z(0));
  for (int c = 0; c < d; ++c) {
    Z acc = 0;
    for (int j = 0; j < nc.projected.cols; ++j)
      acc += nc.projection.at(c, j) * projected_ray[j];
    s[c] = acc;
  }
  reduce_gcd(s);

  std::vector<bool> in_sup(sys.row_count(), false);
  for (int r : nc.support) in_sup[r] = true;
  bool have = false;
  Z best_num = 0, best_den = 1;  // mu = best_num / best_den, best_den > 0
  for (int r = 0; r < sys.row_count(); ++r) {
    if (in_sup[r]) continue;
    Z den = sys.dot(r, std::span<const Z>(nc.source));
    if (sgn_z(den) <= 0) throw std::logic_error("facet outside the support must be positive on r");
    Z num = -sys.dot(r, std::span<const Z>(s));
    if (!have || best_num * den < num * best_den) {
      best_num = num;
      best_den = den;
      have = true;
    }
  }
  if (!have) throw std::logic_error("ray lies on every facet");

  std::vector<Z> lifted(d);
  for (int c = 0; c < d; ++c) lifted[c] = best_den * s[c] + best_num * nc.source[c];
  reduce_gcd(lifted);
  return lifted;
}

struct NeighborOptions {
  AdjTest test = AdjTest::kHalfGraph;
  int threads = 1;
  size_t max_rays = 0;  // projected-cone ray budget; exceeded -> partial
  int depth = 1;        // >= 2 applies adjacency decomposition recursively
  int z_choice = -1;
  bool verify = false;  // re-check extremality of every lifted neighbor
};

template <class Z>
struct NeighborResult {
  std::vector<std::vector<Z>> rays;  // neighbors, sorted by coordinates
  bool partial = false;
};

// Insertion order for a projected system: the parent's order restricted to
// the support rows, renumbered to local ids.
inline OrderSpec restrict_order(const OrderSpec& parent, const std::vector<int>& support) {
  if (parent.is_dynamic()) return parent;
  OrderSpec out;
  out.kind = parent.kind;
  out.shuffle_seed = parent.shuffle_seed;
  std::unordered_map<int, int> local;
  local.reserve(support.size());
  for (size_t k = 0; k < support.size(); ++k) local.emplace(support[k], (int)k);
  for (int r : parent.rows) {
    auto it = local.find(r);
    if (it != local.end()) out.rows.push_back(it->second);
  }
  return out;
}

template <class Z>
NeighborResult<Z> enumerate_system_rays(const IneqSystem<Z>& sys, const OrderSpec& order,
                                        const NeighborOptions& opt);

// All extremal rays adjacent to `ray`, via DD on the projected neighbor
// cone followed by lifting.
template <class Z>
NeighborResult<Z> neighbors(const IneqSystem<Z>& sys, const std::vector<Z>& ray,
                            const OrderSpec& order, const NeighborOptions& opt = {}) {
  NeighborCone<Z> nc = build_neighbor_cone(sys, ray, opt.z_choice);
  OrderSpec sub = restrict_order(order, nc.support);
  NeighborResult<Z> proj = enumerate_system_rays(nc.projected, sub, opt);
  NeighborResult<Z> out;
  out.partial = proj.partial;
  out.rays.reserve(proj.rays.size());
  for (const auto& s : proj.rays) {
    std::vector<Z> lifted = lift_neighbor(sys, nc, s);
    if (opt.verify && !verify_extremal(sys, lifted))
      throw std::logic_error("lifted neighbor failed the extremality check");
    out.rays.push_back(std::move(lifted));
  }
  std::sort(out.rays.begin(), out.rays.end(), coords_less<Z>);
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

// Direct DD when depth is 1; otherwise enumerate by adjacency decomposition
// inside the cone: seed rays are harvested from a truncated DD run (rays of
// an intermediate cone that already lie in the final cone), then the
// neighbor relation is explored to closure with depth reduced by one.
template <class Z>
NeighborResult<Z> enumerate_system_rays(const IneqSystem<Z>& sys, const OrderSpec& order,
                                        const NeighborOptions& opt) {
  NeighborResult<Z> out;
  DdOptions dopt;
  dopt.test = opt.test;
  dopt.threads = opt.threads;
  dopt.max_rays = opt.max_rays;
  if (opt.depth <= 1) {
    RunResult<Z> run = run_dd(sys, order, dopt);
    out.partial = run.partial;
    out.rays.reserve(run.state.rays.size());
    for (const DdRay<Z>& r : run.state.rays) out.rays.push_back(r.x);
    return out;
  }

  // seeds: run DD over a prefix, keep intermediate rays that lie in the cone
  size_t prefix = size_t(sys.cols) + (sys.row_count() - sys.cols) / 2;
  std::vector<std::vector<Z>> seeds;
  {
    RunResult<Z> run = run_dd(sys, order, dopt, prefix);
    for (const DdRay<Z>& r : run.state.rays)
      if (in_cone(sys, std::span<const Z>(r.x))) seeds.push_back(r.x);
  }
  if (seeds.empty()) {
    NeighborOptions direct = opt;
    direct.depth = 1;
    return enumerate_system_rays(sys, order, direct);
  }

  std::set<std::vector<std::string>> done;
  auto key_of = [](const std::vector<Z>& x) {
    std::vector<std::string> k;
    k.reserve(x.size());
    for (const Z& v : x) k.push_back(z_str(v));
    return k;
  };
  std::vector<std::vector<Z>> frontier = seeds;
  NeighborOptions sub = opt;
  sub.depth = opt.depth - 1;
  sub.z_choice = -1;
  while (!frontier.empty()) {
    std::vector<Z> cur = std::move(frontier.back());
    frontier.pop_back();
    reduce_gcd(cur);
    if (!done.insert(key_of(cur)).second) continue;
    NeighborResult<Z> nb = neighbors(sys, cur, order, sub);
    out.partial = out.partial || nb.partial;
    for (auto& r : nb.rays)
      if (!done.count(key_of(r))) frontier.push_back(std::move(r));
  }
  out.rays.reserve(done.size());
  for (const auto& k : done) {
    std::vector<Z> x;
    x.reserve(k.size());
    for (const std::string& s : k) x.push_back(z_parse<Z>(s));
    out.rays.push_back(std::move(x));
  }
  std::sort(out.rays.begin(), out.rays.end(), coords_less<Z>);
  return out;
}

}  // namespace subcone
