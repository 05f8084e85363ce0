#include <doctest.h>

#include <map>
#include <set>

#include "subcone/explore.hpp"
#include "subcone/neighbors.hpp"

using namespace subcone;

namespace {

struct Fixture {
  ConeSpec spec;
  IneqSystem<Int128> sys;
  OrderSpec order;
  std::vector<std::vector<Int128>> rays;

  explicit Fixture(int n) : spec(build_cone(n)), sys(system_of<Int128>(spec)), order(topt_order(spec)) {
    RunResult<Int128> run = run_dd(sys, order);
    for (const auto& r : run.state.rays) rays.push_back(r.x);
  }
};

Fixture& fixture4() {
  static Fixture f(4);
  return f;
}

}  // namespace

TEST_SUITE_BEGIN("neighbors");

TEST_CASE("verify_extremal accepts the full n=4 ray set and all f_J") {
  Fixture& f = fixture4();
  REQUIRE(f.rays.size() == 37);
  for (const auto& r : f.rays) CHECK(verify_extremal(f.sys, r));

  for (int n = 3; n <= 6; ++n) {
    ConeSpec spec = build_cone(n);
    IneqSystem<Int128> sys = system_of<Int128>(spec);
    for (int k = 2; k <= n; ++k) {
      std::uint32_t J = ((1u << k) - 1) << (n - k);  // another representative
      CHECK(verify_extremal(sys, f_j<Int128>(spec, J)));
    }
  }

  // a sum of two distinct extremal rays is not extremal
  std::vector<Int128> sum(f.spec.d);
  for (int c = 0; c < f.spec.d; ++c) sum[c] = f.rays[0][c] + f.rays[1][c];
  CHECK_FALSE(verify_extremal(f.sys, sum));
}

TEST_CASE("neighbor cone has the right ranks and dimension") {
  Fixture& f = fixture4();
  for (size_t k = 0; k < 5; ++k) {
    NeighborCone<Int128> nc = build_neighbor_cone(f.sys, f.rays[k]);
    CHECK(rank_ff(f.sys.dense_submatrix(nc.support)) == f.spec.d - 1);
    std::vector<int> with = nc.support;
    with.push_back(nc.excluded_row);
    CHECK(rank_ff(f.sys.dense_submatrix(with)) == f.spec.d);
    CHECK(nc.projected.cols == f.spec.d - 1);  // dimension 10 for n=4

    // projection is a section: lifting a projected ray and projecting the
    // lift recovers it up to scale (checked via the z-hyperplane identity)
    std::vector<Int128> z = f.sys.dense_row(nc.excluded_row);
    for (int j = 0; j < nc.projection.nc; ++j) {
      Int128 acc = 0;
      for (int c = 0; c < nc.projection.nr; ++c) acc += z[c] * nc.projection.at(c, j);
      CHECK(sgn_z(acc) == 0);
    }
  }
  std::vector<Int128> nonextremal(f.spec.d);
  for (int c = 0; c < f.spec.d; ++c) nonextremal[c] = f.rays[0][c] + f.rays[1][c];
  CHECK_THROWS_AS(build_neighbor_cone(f.sys, nonextremal), std::invalid_argument);
}

TEST_CASE("neighbors match the pairwise adjacency relation of the full run") {
  Fixture& f = fixture4();
  // ground truth from the final DD state: adjacency via the rank test
  RunResult<Int128> run = run_dd(f.sys, f.order);
  const DdState<Int128>& st = run.state;
  REQUIRE(st.rays.size() == 37);

  std::map<std::vector<Int128>, std::set<std::vector<Int128>>> truth;
  for (size_t i = 0; i < st.rays.size(); ++i)
    for (size_t j = i + 1; j < st.rays.size(); ++j)
      if (algebraic_adjacent(st, i, j)) {
        truth[st.rays[i].x].insert(st.rays[j].x);
        truth[st.rays[j].x].insert(st.rays[i].x);
      }

  NeighborOptions opt;
  opt.verify = true;
  for (const auto& r : f.rays) {
    NeighborResult<Int128> nb = neighbors(f.sys, r, f.order, opt);
    std::set<std::vector<Int128>> got(nb.rays.begin(), nb.rays.end());
    CHECK(got == truth[r]);
  }
}

TEST_CASE("neighbor enumeration commutes with the symmetries") {
  Fixture& f = fixture4();
  SymmetryTable tab = build_symmetry_table(f.spec);
  const std::vector<Int128>& r = f.rays[7];
  NeighborResult<Int128> base = neighbors(f.sys, r, f.order);
  const auto& map = tab.perm_maps[5];
  std::vector<Int128> img = apply_perm_map(map, r);
  NeighborResult<Int128> moved = neighbors(f.sys, img, f.order);
  std::set<std::vector<Int128>> expect;
  for (const auto& x : base.rays) expect.insert(apply_perm_map(map, x));
  std::set<std::vector<Int128>> got(moved.rays.begin(), moved.rays.end());
  CHECK(got == expect);
}

TEST_CASE("depth-2 adjacency decomposition agrees with direct DD") {
  Fixture& f = fixture4();
  NeighborOptions deep;
  deep.depth = 2;
  NeighborResult<Int128> a = neighbors(f.sys, f.rays[3], f.order, deep);
  NeighborResult<Int128> b = neighbors(f.sys, f.rays[3], f.order);
  CHECK(a.rays == b.rays);
}

TEST_CASE("lifted neighbors re-project to the ray they came from") {
  Fixture& f = fixture4();
  NeighborCone<Int128> nc = build_neighbor_cone(f.sys, f.rays[0]);
  OrderSpec sub = restrict_order(f.order, nc.support);
  NeighborResult<Int128> proj = enumerate_system_rays(nc.projected, sub, NeighborOptions{});
  for (const auto& s : proj.rays) {
    std::vector<Int128> lifted = lift_neighbor(f.sys, nc, s);
    CHECK(verify_extremal(f.sys, lifted));
    // support gained at least one row beyond the shared ones
    std::vector<int> sup = support_rows(f.sys, std::span<const Int128>(lifted));
    bool outside = false;
    std::set<int> msup(nc.support.begin(), nc.support.end());
    for (int r : sup)
      if (!msup.count(r)) outside = true;
    CHECK(outside);
  }
}

TEST_CASE("orbit search closes at 7 orbits from the embedded seed") {
  Fixture& f = fixture4();
  ConeSpec s3 = build_cone(3);
  IneqSystem<Int128> sys3 = system_of<Int128>(s3);
  RunResult<Int128> run3 = run_dd(sys3, topt_order(s3));
  std::vector<Int128> seed = embed_ray(s3, f.spec, run3.state.rays[0].x);
  REQUIRE(verify_extremal(f.sys, seed));

  SymmetryTable tab = build_symmetry_table(f.spec);
  BfsResult<Int128> res =
      orbit_bfs(f.sys, tab, {seed}, f.order, NeighborOptions{});
  CHECK(res.closed);
  CHECK(res.pool.size() == 7);
  size_t rays_total = 0;
  for (const auto& [k, e] : res.pool) {
    CHECK(e.probed);
    rays_total += e.size;
  }
  CHECK(rays_total == 37);
  CHECK(res.journal.size() == 7);
}

TEST_CASE("probe budget leaves the search open") {
  Fixture& f = fixture4();
  SymmetryTable tab = build_symmetry_table(f.spec);
  BfsBudget budget;
  budget.max_probes = 2;
  BfsResult<Int128> res = orbit_bfs(f.sys, tab, {f.rays[0]}, f.order, NeighborOptions{}, budget);
  CHECK_FALSE(res.closed);
  CHECK(res.journal.size() == 2);
}

TEST_CASE("random sampler finds extremal rays at n=4") {
  Fixture& f = fixture4();
  SampleStats stats;
  std::vector<std::vector<Int128>> got =
      random_extremal_sample(f.sys, 42, 10000, &stats);
  CHECK(stats.attempts == 10000);
  CHECK(stats.hits > 0);
  std::set<std::vector<Int128>> all(f.rays.begin(), f.rays.end());
  for (const auto& r : got) {
    CHECK(verify_extremal(f.sys, r));
    CHECK(all.count(r) == 1);
  }

  // restricted variant: drawing the first d-2 rows from a ray's support
  // yields that ray or one of its neighbors
  NeighborResult<Int128> nb = neighbors(f.sys, f.rays[0], f.order);
  std::set<std::vector<Int128>> allowed(nb.rays.begin(), nb.rays.end());
  allowed.insert(f.rays[0]);
  std::vector<int> sup = support_rows(f.sys, std::span<const Int128>(f.rays[0]));
  SampleStats rstats;
  std::vector<std::vector<Int128>> near =
      random_extremal_sample(f.sys, 7, 2000, &rstats, &sup);
  CHECK(rstats.hits > 0);
  for (const auto& r : near) CHECK(allowed.count(r) == 1);
}

TEST_CASE("sampler bias toward heavy rays at n=4") {
  Fixture& f = fixture4();
  // true mean weight over all 37 rays
  double true_mean = 0;
  for (const auto& r : f.rays)
    true_mean += double(support_rows(f.sys, std::span<const Int128>(r)).size());
  true_mean /= double(f.rays.size());

  SampleStats stats;
  std::vector<std::vector<Int128>> got = random_extremal_sample(f.sys, 1234, 4000, &stats);
  REQUIRE(got.size() > 3);
  double sampled_mean = 0;
  for (const auto& r : got)
    sampled_mean += double(support_rows(f.sys, std::span<const Int128>(r)).size());
  sampled_mean /= double(got.size());
  CHECK(sampled_mean > true_mean);
}

TEST_SUITE_END();
