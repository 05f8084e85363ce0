#pragma once

// The Double Description iteration. Every intermediate cone carries a
// double description: the processed inequality rows together with the
// complete list of its extremal rays and the exact ray-facet incidence,
// stored both per ray (over processed rows) and per row (over rays).
//
// Three adjacency tests are provided: the algebraic rank test, the
// combinatorial incidence test, and the graph-accelerated variant that
// precomputes one candidate bitstring per positive ray and reuses its bits
// as the quick precheck.

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "subcone/bits.hpp"
#include "subcone/system.hpp"

namespace subcone {

template <class Z>
struct DdRay {
  std::vector<Z> x;  // primitive coordinates (gcd 1, cone direction)
  BitVec inc;        // incidence over processed rows, in processing order

  size_t weight() const { return inc.count(); }
};

enum class AdjTest { kHalfGraph, kCombinatorial, kAlgebraic };

struct AdjInstrument {
  size_t precheck_fail = 0;
  size_t rows_anded = 0;
  size_t cache_builds = 0;
  bool b_touched = false;
};

struct StepCounts {
  int row = -1;
  size_t positive = 0;
  size_t zero = 0;
  size_t negative = 0;
  size_t pairs = 0;
  size_t adjacent = 0;
  size_t rays_after = 0;
};

struct CrosscheckStats {
  size_t pairs_checked = 0;
  size_t mismatches = 0;
};

struct DdOptions {
  AdjTest test = AdjTest::kHalfGraph;
  int threads = 1;
  size_t max_rays = 0;           // 0 = unlimited; exceeded -> partial result
  size_t crosscheck_target = 0;  // pairs to run through all three tests
  bool crosscheck_all = false;   // exhaustive instead of sampled
  double incidence_check_rate = 0.0;  // fraction of bits re-verified by dot product
  bool check_weight_bound = false;    // assert w(r) >= dim-1 after each step
};

template <class Z>
struct DdState {
  const IneqSystem<Z>* sys = nullptr;
  std::vector<int> processed;      // global row ids, processing order
  std::vector<DdRay<Z>> rays;      // sorted by coordinate tuple
  std::vector<BitVec> rowbits;     // per processed row: one bit per ray

  int dim() const { return sys->cols; }

  void rebuild_rowbits() {
    rowbits.assign(processed.size(), BitVec(rays.size()));
    for (size_t r = 0; r < rays.size(); ++r) {
      const BitVec& inc = rays[r].inc;
      for (size_t k = 0; k < processed.size(); ++k)
        if (inc.test(k)) rowbits[k].set(r);
    }
  }
};

// ---------------------------------------------------------------------------
// Adjacency tests. `dim` below is the dimension of the current cone, i.e.
// the column count of its system; extremal rays of a pointed cone of that
// dimension are adjacent iff their common support has rank dim-2.

template <class Z>
bool algebraic_adjacent(const DdState<Z>& st, size_t r1, size_t r2) {
  std::vector<int> common;
  BitVec both = BitVec::and_of(st.rays[r1].inc, st.rays[r2].inc);
  std::vector<int> positions;
  both.collect_set_bits(positions);
  common.reserve(positions.size());
  for (int p : positions) common.push_back(st.processed[p]);
  Mat<Z> sub = st.sys->dense_submatrix(common);
  return rank_ff(std::move(sub)) == st.dim() - 2;
}

// Combinatorial test: the pair is adjacent iff no third ray lies on every
// facet the pair shares. Candidate elimination runs over full row strings.
template <class Z>
bool combinatorial_adjacent(const DdState<Z>& st, size_t r1, size_t r2,
                            AdjInstrument* ins = nullptr) {
  const size_t need = size_t(st.dim() - 2);
  if (BitVec::and_count(st.rays[r1].inc, st.rays[r2].inc) < need) {
    if (ins) ++ins->precheck_fail;
    return false;
  }
  BitVec b(st.rays.size(), true);
  b.clear(r1);
  b.clear(r2);
  if (ins) ins->b_touched = true;
  BitVec both = BitVec::and_of(st.rays[r1].inc, st.rays[r2].inc);
  std::vector<int> positions;
  both.collect_set_bits(positions);
  const size_t nw = b.word_count();
  for (int p : positions) {
    if (ins) ++ins->rows_anded;
    const BitVec::Word* aw = st.rowbits[p].words();
    BitVec::Word* bw = b.words();
    BitVec::Word any = 0;
    for (size_t k = 0; k < nw; ++k) {
      bw[k] &= aw[k];
      any |= bw[k];
    }
    if (any == 0) return true;
  }
  return false;
}

// Per-positive-ray candidate cache for the graph-accelerated test.
struct HalfGraphCache {
  std::ptrdiff_t owner = -1;  // ray index the string was built for
  BitVec g;
  size_t builds = 0;
};

template <class Z>
bool halfgraph_adjacent(const DdState<Z>& st, size_t r1, size_t r2, HalfGraphCache& cache,
                        AdjInstrument* ins = nullptr) {
  const size_t need = size_t(st.dim() - 2);
  if (cache.owner != (std::ptrdiff_t)r1) {
    cache.owner = (std::ptrdiff_t)r1;
    ++cache.builds;
    if (ins) ++ins->cache_builds;
    cache.g = BitVec(st.rays.size());
    const BitVec& inc1 = st.rays[r1].inc;
    for (size_t r = 0; r < st.rays.size(); ++r)
      if (r != r1 && BitVec::and_count(st.rays[r].inc, inc1) >= need) cache.g.set(r);
  }
  if (!cache.g.test(r2)) {
    if (ins) ++ins->precheck_fail;
    return false;
  }
  BitVec b = cache.g;
  b.clear(r2);
  if (ins) ins->b_touched = true;
  BitVec both = BitVec::and_of(st.rays[r1].inc, st.rays[r2].inc);
  std::vector<int> positions;
  both.collect_set_bits(positions);
  // chunk-major: a chunk that empties aborts its row loop; a chunk that
  // survives every row certifies a third ray and settles the answer
  BitVec::Word* bw = b.words();
  const size_t nw = b.word_count();
  for (size_t k = 0; k < nw; ++k) {
    BitVec::Word w = bw[k];
    if (!w) continue;
    for (int p : positions) {
      if (ins) ++ins->rows_anded;
      w &= st.rowbits[p].words()[k];
      if (!w) break;
    }
    if (w) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

template <class Z>
struct SplitResult {
  std::vector<Z> dots;
  std::vector<size_t> positive, zero, negative;
};

template <class Z>
SplitResult<Z> split_rays(const DdState<Z>& st, int row, int threads = 1) {
  SplitResult<Z> out;
  const size_t n = st.rays.size();
  out.dots.resize(n);
  auto worker = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i)
      out.dots[i] = st.sys->dot(row, std::span<const Z>(st.rays[i].x));
  };
  if (threads > 1 && n > 2048) {
    std::vector<std::thread> ts;
    size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      size_t lo = std::min(n, t * chunk), hi = std::min(n, lo + chunk);
      if (lo < hi) ts.emplace_back(worker, lo, hi);
    }
    for (auto& t : ts) t.join();
  } else {
    worker(0, n);
  }
  for (size_t i = 0; i < n; ++i) {
    int s = sgn_z(out.dots[i]);
    if (s > 0)
      out.positive.push_back(i);
    else if (s < 0)
      out.negative.push_back(i);
    else
      out.zero.push_back(i);
  }
  return out;
}

// New extremal ray on the cutting hyperplane spanned by an adjacent
// positive/negative pair: r = (a.r1) r2 - (a.r2) r1. The support of the
// result over the processed rows is exactly the intersection of the parent
// supports (every processed product is a sum of two non-negative terms),
// with the bit of the cutting row appended by the caller.
template <class Z>
DdRay<Z> conic_intersection(const DdRay<Z>& r1, const DdRay<Z>& r2, const Z& t1, const Z& t2) {
  DdRay<Z> out;
  const size_t d = r1.x.size();
  out.x.resize(d);
  for (size_t i = 0; i < d; ++i) out.x[i] = t1 * r2.x[i] - t2 * r1.x[i];
  reduce_gcd(out.x);
  out.inc = BitVec::and_of(r1.inc, r2.inc);
  return out;
}

template <class Z>
DdRay<Z> conic_intersection(const DdState<Z>& st, size_t i1, size_t i2, int row) {
  Z t1 = st.sys->dot(row, std::span<const Z>(st.rays[i1].x));
  Z t2 = st.sys->dot(row, std::span<const Z>(st.rays[i2].x));
  if (sgn_z(t1) <= 0 || sgn_z(t2) >= 0)
    throw std::invalid_argument("conic_intersection wants a positive/negative pair");
  return conic_intersection(st.rays[i1], st.rays[i2], t1, t2);
}

void parallel_for_index(size_t count, int threads, const std::function<void(int, size_t)>& fn);

// One DD iteration: cut the current cone with `row`. Keeps positive and
// zero rays, adds the conic intersection of every adjacent positive /
// negative pair, deduplicates and sorts the result, and extends the
// incidence by the new row.
template <class Z>
void dd_step(DdState<Z>& st, int row, const DdOptions& opt, StepCounts* counts = nullptr,
             CrosscheckStats* xstats = nullptr);

struct OrderSpec;  // orders.hpp

template <class Z>
struct RunResult {
  DdState<Z> state;
  std::vector<std::pair<int, size_t>> trajectory;  // (#inequalities, #rays)
  bool partial = false;
  CrosscheckStats xstats;
  std::vector<StepCounts> steps;
};

// Initial DD pair: scan `order`, keep the first dim linearly independent
// rows, and take the rays dual to them (columns of the exact inverse,
// cleared to primitive integers). Skipped rows keep their place in
// `remaining` so the declared order is preserved.
template <class Z>
DdState<Z> initial_dd_pair(const IneqSystem<Z>& sys, std::span<const int> order,
                           std::vector<int>* remaining = nullptr);

template <class Z>
RunResult<Z> run_dd(const IneqSystem<Z>& sys, const OrderSpec& order, const DdOptions& opt = {},
                    size_t stop_after = 0, const std::vector<int>& skip_rows = {});

// Code-4 style harvest: intersect rays of an adjacent positive/negative
// pair with the cutting row, keep only candidates that are non-negative and
// inside the full cone, and confirm adjacency last. When the state is a
// C*-type cone every positive/negative pair is adjacent, so both the
// precheck and the adjacency test are skipped.
template <class Z>
std::vector<std::vector<Z>> harvest_step(const DdState<Z>& st, int row,
                                         const IneqSystem<Z>& full, const DdOptions& opt,
                                         bool cstar_pairs_all_adjacent = false);

}  // namespace subcone

#include "subcone/dd_impl.hpp"
