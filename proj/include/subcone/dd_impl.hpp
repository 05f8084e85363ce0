#pragma once

// Implementation of the DD iteration declared in dd.hpp.

#include <algorithm>
#include <cassert>
#include <numeric>

#include "subcone/orders.hpp"
#include "subcone/rng.hpp"

namespace subcone {

inline void parallel_for_index(size_t count, int threads,
                               const std::function<void(int, size_t)>& fn) {
  if (threads <= 1 || count < 2) {
    for (size_t i = 0; i < count; ++i) fn(0, i);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&](int w) {
    for (;;) {
      size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      fn(w, i);
    }
  };
  std::vector<std::thread> ts;
  ts.reserve(threads);
  for (int w = 0; w < threads; ++w) ts.emplace_back(worker, w);
  for (auto& t : ts) t.join();
}

template <class Z>
bool dd_step_checked(DdState<Z>& st, int row, const DdOptions& opt, StepCounts* counts,
                     CrosscheckStats* xstats) {
  SplitResult<Z> sp = split_rays(st, row, opt.threads);
  const std::vector<size_t>& P = sp.positive;
  const std::vector<size_t>& N = sp.negative;

  if (counts) {
    counts->row = row;
    counts->positive = P.size();
    counts->zero = sp.zero.size();
    counts->negative = N.size();
    counts->pairs = P.size() * N.size();
  }

  // pair sampling stride for the three-way test comparison
  size_t stride = 0;
  if (opt.crosscheck_all)
    stride = 1;
  else if (opt.crosscheck_target > 0 && !P.empty() && !N.empty())
    stride = std::max<size_t>(1, (P.size() * N.size()) / opt.crosscheck_target);

  const int nthreads = std::max(1, opt.threads);
  std::vector<std::vector<DdRay<Z>>> arenas(nthreads);
  std::vector<CrosscheckStats> xlocal(nthreads);
  std::vector<size_t> adjacent_local(nthreads, 0);
  std::vector<HalfGraphCache> caches(nthreads);  // one slot per worker
  const size_t kept_count = P.size() + sp.zero.size();
  std::atomic<size_t> produced{0};
  std::atomic<bool> aborted{false};

  parallel_for_index(P.size(), nthreads, [&](int w, size_t pi) {
    if (aborted.load(std::memory_order_relaxed)) return;
    HalfGraphCache& cache = caches[w];
    const size_t p = P[pi];
    for (size_t qi = 0; qi < N.size(); ++qi) {
      const size_t q = N[qi];
      bool adj;
      switch (opt.test) {
        case AdjTest::kHalfGraph: adj = halfgraph_adjacent(st, p, q, cache); break;
        case AdjTest::kCombinatorial: adj = combinatorial_adjacent(st, p, q); break;
        case AdjTest::kAlgebraic: adj = algebraic_adjacent(st, p, q); break;
        default: adj = false;
      }
      if (stride > 0 && (pi * N.size() + qi) % stride == 0) {
        bool alg = algebraic_adjacent(st, p, q);
        bool comb = combinatorial_adjacent(st, p, q);
        bool hg = adj;
        if (opt.test != AdjTest::kHalfGraph) {
          HalfGraphCache scratch;
          hg = halfgraph_adjacent(st, p, q, scratch);
        }
        ++xlocal[w].pairs_checked;
        if (alg != comb || comb != hg) ++xlocal[w].mismatches;
      }
      if (!adj) continue;
      ++adjacent_local[w];
      DdRay<Z> nr = conic_intersection(st.rays[p], st.rays[q], sp.dots[p], sp.dots[q]);
      nr.inc.push_back(true);
      arenas[w].push_back(std::move(nr));
      if (opt.max_rays &&
          produced.fetch_add(1, std::memory_order_relaxed) + kept_count >= opt.max_rays) {
        aborted.store(true, std::memory_order_relaxed);
        return;
      }
    }
  });

  if (xstats)
    for (const auto& xl : xlocal) {
      xstats->pairs_checked += xl.pairs_checked;
      xstats->mismatches += xl.mismatches;
    }
  if (aborted.load()) return false;

  size_t adjacent_total = 0;
  for (size_t a : adjacent_local) adjacent_total += a;
  if (counts) counts->adjacent = adjacent_total;

  // new rays: deterministic regardless of scheduling once sorted + deduped
  std::vector<DdRay<Z>> fresh;
  {
    size_t total = 0;
    for (const auto& a : arenas) total += a.size();
    fresh.reserve(total);
    for (auto& a : arenas)
      for (auto& r : a) fresh.push_back(std::move(r));
  }
  std::sort(fresh.begin(), fresh.end(),
            [](const DdRay<Z>& a, const DdRay<Z>& b) { return coords_less(a.x, b.x); });
  fresh.erase(std::unique(fresh.begin(), fresh.end(),
                          [](const DdRay<Z>& a, const DdRay<Z>& b) { return a.x == b.x; }),
              fresh.end());

  // keep positive and zero rays (already sorted), extend incidence
  std::vector<DdRay<Z>> kept;
  kept.reserve(P.size() + sp.zero.size());
  for (size_t i = 0; i < st.rays.size(); ++i) {
    int s = sgn_z(sp.dots[i]);
    if (s < 0) continue;
    DdRay<Z> r = std::move(st.rays[i]);
    r.inc.push_back(s == 0);
    kept.push_back(std::move(r));
  }

  std::vector<DdRay<Z>> merged;
  merged.reserve(kept.size() + fresh.size());
  std::merge(std::make_move_iterator(kept.begin()), std::make_move_iterator(kept.end()),
             std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()),
             std::back_inserter(merged),
             [](const DdRay<Z>& a, const DdRay<Z>& b) { return coords_less(a.x, b.x); });
  merged.erase(std::unique(merged.begin(), merged.end(),
                           [](const DdRay<Z>& a, const DdRay<Z>& b) { return a.x == b.x; }),
               merged.end());

  st.rays = std::move(merged);
  st.processed.push_back(row);
  st.rebuild_rowbits();

  if (counts) counts->rays_after = st.rays.size();

  if (opt.check_weight_bound) {
    const size_t need = size_t(st.dim() - 1);
    for (const DdRay<Z>& r : st.rays)
      if (r.weight() < need) throw std::logic_error("extremal ray below the weight bound");
  }
  if (opt.incidence_check_rate > 0 && !st.rays.empty()) {
    SplitMix64 rng(0x5eedULL + st.processed.size());
    size_t cells = st.rays.size() * st.processed.size();
    auto samples = size_t(opt.incidence_check_rate * double(cells)) + 1;
    for (size_t s = 0; s < samples; ++s) {
      size_t cell = rng.below(cells);
      size_t ri = cell % st.rays.size();
      size_t k = cell / st.rays.size();
      Z dot = st.sys->dot(st.processed[k], std::span<const Z>(st.rays[ri].x));
      bool bit = st.rays[ri].inc.test(k);
      if (bit != (sgn_z(dot) == 0))
        throw std::logic_error("incidence bit disagrees with exact dot product");
      if (st.rowbits[k].test(ri) != bit)
        throw std::logic_error("row-major and column-major incidence disagree");
    }
  }
  return true;
}

template <class Z>
void dd_step(DdState<Z>& st, int row, const DdOptions& opt, StepCounts* counts,
             CrosscheckStats* xstats) {
  if (!dd_step_checked(st, row, opt, counts, xstats))
    throw std::runtime_error("dd_step exceeded the ray budget");
}

template <class Z>
DdState<Z> initial_dd_pair(const IneqSystem<Z>& sys, std::span<const int> order,
                           std::vector<int>* remaining) {
  const int d = sys.cols;
  std::vector<int> chosen;
  chosen.reserve(d);
  std::vector<int> rest;
  for (int rid : order) {
    if ((int)chosen.size() == d) {
      rest.push_back(rid);
      continue;
    }
    chosen.push_back(rid);
    if (rank_ff(sys.dense_submatrix(chosen)) != (int)chosen.size()) {
      chosen.pop_back();
      rest.push_back(rid);
    }
  }
  if ((int)chosen.size() != d)
    throw std::invalid_argument("insertion order exhausted before reaching full rank");

  DdState<Z> st;
  st.sys = &sys;
  st.processed = chosen;
  st.rays.reserve(d);
  for (int k = 0; k < d; ++k) {
    std::vector<int> others;
    others.reserve(d - 1);
    for (int t = 0; t < d; ++t)
      if (t != k) others.push_back(chosen[t]);
    DdRay<Z> ray;
    ray.x = kernel_vector(sys.dense_submatrix(others));
    Z s = sys.dot(chosen[k], std::span<const Z>(ray.x));
    if (sgn_z(s) == 0) throw std::logic_error("degenerate initial pair");
    if (sgn_z(s) < 0)
      for (Z& v : ray.x) v = -v;
    ray.inc = BitVec(d);
    for (int t = 0; t < d; ++t)
      if (sgn_z(sys.dot(chosen[t], std::span<const Z>(ray.x))) == 0) ray.inc.set(t);
    st.rays.push_back(std::move(ray));
  }
  std::sort(st.rays.begin(), st.rays.end(),
            [](const DdRay<Z>& a, const DdRay<Z>& b) { return coords_less(a.x, b.x); });
  st.rebuild_rowbits();
  if (remaining) *remaining = std::move(rest);
  return st;
}

template <class Z>
int dynamic_next(const DdState<Z>& st, const std::vector<int>& remaining, OrderKind kind,
                 int threads) {
  if (remaining.empty()) throw std::invalid_argument("no remaining rows");
  std::vector<size_t> negs(remaining.size(), 0);
  parallel_for_index(remaining.size(), threads, [&](int, size_t k) {
    size_t c = 0;
    for (const DdRay<Z>& r : st.rays)
      if (sgn_z(st.sys->dot(remaining[k], std::span<const Z>(r.x))) < 0) ++c;
    negs[k] = c;
  });
  size_t best = 0;
  for (size_t k = 1; k < remaining.size(); ++k) {
    bool better = kind == OrderKind::kMaxCut ? negs[k] > negs[best] : negs[k] < negs[best];
    bool tie = negs[k] == negs[best] && remaining[k] < remaining[best];
    if (better || tie) best = k;
  }
  return remaining[best];
}

template <class Z>
RunResult<Z> run_dd(const IneqSystem<Z>& sys, const OrderSpec& order, const DdOptions& opt,
                    size_t stop_after, const std::vector<int>& skip_rows) {
  std::vector<int> scan;
  if (order.is_dynamic()) {
    scan.resize(sys.row_count());
    std::iota(scan.begin(), scan.end(), 0);
  } else {
    scan = order.rows;
    if ((int)scan.size() != sys.row_count())
      throw std::invalid_argument("order must cover every row");
  }
  if (!skip_rows.empty()) {
    std::vector<int> filtered;
    filtered.reserve(scan.size());
    for (int r : scan)
      if (std::find(skip_rows.begin(), skip_rows.end(), r) == skip_rows.end())
        filtered.push_back(r);
    scan = std::move(filtered);
  }
  if (stop_after != 0 && stop_after < (size_t)sys.cols)
    throw std::invalid_argument("stop_after below the cone dimension");

  RunResult<Z> res;
  std::vector<int> remaining;
  res.state = initial_dd_pair(sys, scan, &remaining);
  res.trajectory.push_back({(int)res.state.processed.size(), res.state.rays.size()});

  const size_t target = stop_after == 0 ? scan.size() : stop_after;
  while (!remaining.empty() && res.state.processed.size() < target) {
    int next_row;
    if (order.is_dynamic()) {
      next_row = dynamic_next(res.state, remaining, order.kind, opt.threads);
      remaining.erase(std::find(remaining.begin(), remaining.end(), next_row));
    } else {
      next_row = remaining.front();
      remaining.erase(remaining.begin());
    }
    DdOptions step_opt = opt;
    if (opt.crosscheck_target > 0 && !opt.crosscheck_all) {
      size_t steps_left = target - res.state.processed.size();
      size_t need = opt.crosscheck_target > res.xstats.pairs_checked
                        ? opt.crosscheck_target - res.xstats.pairs_checked
                        : 0;
      step_opt.crosscheck_target = need == 0 ? 0 : (need + steps_left - 1) / steps_left;
    }
    StepCounts sc;
    if (!dd_step_checked(res.state, next_row, step_opt, &sc, &res.xstats)) {
      res.partial = true;
      break;
    }
    res.steps.push_back(sc);
    res.trajectory.push_back({(int)res.state.processed.size(), res.state.rays.size()});
  }
  return res;
}

template <class Z>
std::vector<std::vector<Z>> harvest_step(const DdState<Z>& st, int row,
                                         const IneqSystem<Z>& full, const DdOptions& opt,
                                         bool cstar_pairs_all_adjacent) {
  SplitResult<Z> sp = split_rays(st, row, opt.threads);
  const std::vector<size_t>& P = sp.positive;
  const std::vector<size_t>& N = sp.negative;
  const size_t need = size_t(st.dim() - 2);
  const int nthreads = std::max(1, opt.threads);
  std::vector<std::vector<std::vector<Z>>> arenas(nthreads);
  std::vector<HalfGraphCache> caches(nthreads);

  parallel_for_index(P.size(), nthreads, [&](int w, size_t pi) {
    HalfGraphCache& cache = caches[w];
    const size_t p = P[pi];
    for (size_t q : N) {
      if (!cstar_pairs_all_adjacent &&
          BitVec::and_count(st.rays[p].inc, st.rays[q].inc) < need)
        continue;
      std::vector<Z> x(st.rays[p].x.size());
      for (size_t i = 0; i < x.size(); ++i)
        x[i] = sp.dots[p] * st.rays[q].x[i] - sp.dots[q] * st.rays[p].x[i];
      reduce_gcd(x);
      bool nonneg = true;
      for (const Z& v : x)
        if (sgn_z(v) < 0) {
          nonneg = false;
          break;
        }
      if (!nonneg) continue;
      if (!in_cone(full, std::span<const Z>(x))) continue;
      if (!cstar_pairs_all_adjacent) {
        bool adj;
        switch (opt.test) {
          case AdjTest::kCombinatorial: adj = combinatorial_adjacent(st, p, q); break;
          case AdjTest::kAlgebraic: adj = algebraic_adjacent(st, p, q); break;
          default: adj = halfgraph_adjacent(st, p, q, cache); break;
        }
        if (!adj) continue;
      }
      arenas[w].push_back(std::move(x));
    }
  });

  std::vector<std::vector<Z>> out;
  for (auto& a : arenas)
    for (auto& x : a) out.push_back(std::move(x));
  std::sort(out.begin(), out.end(), coords_less<Z>);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace subcone
