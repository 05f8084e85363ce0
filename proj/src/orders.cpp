#include "subcone/orders.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

#include "subcone/rng.hpp"

namespace subcone {

const char* order_kind_name(OrderKind k) {
  switch (k) {
    case OrderKind::kLexMin: return "lexmin";
    case OrderKind::kTOpt: return "topt";
    case OrderKind::kRecursive: return "recursive";
    case OrderKind::kMaxCut: return "maxcut";
    case OrderKind::kMinCut: return "mincut";
  }
  return "?";
}

std::optional<OrderKind> order_kind_from_name(std::string_view name) {
  if (name == "lexmin") return OrderKind::kLexMin;
  if (name == "topt") return OrderKind::kTOpt;
  if (name == "recursive") return OrderKind::kRecursive;
  if (name == "maxcut") return OrderKind::kMaxCut;
  if (name == "mincut") return OrderKind::kMinCut;
  return std::nullopt;
}

namespace {

// |K| priority positions: the list 0, n-2, 1, n-3, 2, ... over 0..n-2.
std::vector<int> ksize_priority(int n) {
  std::vector<int> prio(n - 1, -1);
  int lo = 0, hi = n - 2, pos = 0;
  while (lo <= hi) {
    prio[lo++] = pos++;
    if (hi >= lo) prio[hi--] = pos++;
  }
  return prio;
}

// Element sequences compared as integer tuples (equivalently digit strings
// for n <= 10).
int compare_element_lists(std::uint32_t a, std::uint32_t b) {
  while (a && b) {
    int x = std::countr_zero(a), y = std::countr_zero(b);
    if (x != y) return x < y ? -1 : 1;
    a &= a - 1;
    b &= b - 1;
  }
  if (a == b) return 0;
  return a == 0 ? -1 : 1;
}

}  // namespace

bool topt_precedes(int n, const Triplet& a, const Triplet& b) {
  std::vector<int> prio = ksize_priority(n);
  int ka = std::popcount(a.K), kb = std::popcount(b.K);
  if (ka != kb) return prio[ka] < prio[kb];
  if (a.i != b.i) return a.i < b.i;
  if (a.j != b.j) return a.j < b.j;
  return compare_element_lists(a.K, b.K) < 0;
}

OrderSpec topt_order(const ConeSpec& spec) {
  std::vector<int> prio = ksize_priority(spec.n);
  std::vector<int> ids(spec.m);
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&](int x, int y) {
    const Triplet &a = spec.triplets[x], &b = spec.triplets[y];
    int ka = std::popcount(a.K), kb = std::popcount(b.K);
    if (ka != kb) return prio[ka] < prio[kb];
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return compare_element_lists(a.K, b.K) < 0;
  });
  std::reverse(ids.begin(), ids.end());
  OrderSpec o;
  o.kind = OrderKind::kTOpt;
  o.rows = std::move(ids);
  return o;
}

namespace {

void rec_walk(std::uint32_t K, std::vector<std::uint32_t>& out,
              std::unordered_set<std::uint32_t>& seen) {
  if (!seen.insert(K).second) return;  // first occurrence already covered the subtree
  out.push_back(K);
  std::uint32_t rest = K;
  while (rest) {
    int i = 31 - std::countl_zero(rest);  // elements in decreasing order
    rest &= ~(std::uint32_t(1) << i);
    rec_walk(K & ~(std::uint32_t(1) << i), out, seen);
  }
}

}  // namespace

std::vector<std::uint32_t> rec_enumerate(std::uint32_t K) {
  std::vector<std::uint32_t> out;
  std::unordered_set<std::uint32_t> seen;
  rec_walk(K, out, seen);
  return out;
}

OrderSpec recursive_order(const ConeSpec& spec) {
  // canonical row ids are (i,j) lexicographic with K ascending by mask, so
  // the id of (i,j|K) is pair_offset + rank of K among subsets of X \ ij
  int n = spec.n;
  auto subset_rank = [](std::uint32_t K, std::uint32_t rest) {
    int rank = 0, bit = 0;
    for (int p = 0; p < 32; ++p) {
      if (!(rest >> p & 1)) continue;
      if (K >> p & 1) rank |= 1 << bit;
      ++bit;
    }
    return rank;
  };
  std::vector<int> enumeration;
  enumeration.reserve(spec.m);
  int pair_offset = 0;
  int block = 1 << (n - 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::uint32_t rest = spec.full_mask() & ~((std::uint32_t(1) << i) | (std::uint32_t(1) << j));
      for (std::uint32_t K : rec_enumerate(rest))
        enumeration.push_back(pair_offset + subset_rank(K, rest));
      pair_offset += block;
    }
  std::reverse(enumeration.begin(), enumeration.end());
  OrderSpec o;
  o.kind = OrderKind::kRecursive;
  o.rows = std::move(enumeration);
  return o;
}

OrderSpec lexmin_order(const ConeSpec& spec, std::optional<std::uint64_t> shuffle_seed) {
  std::vector<int> tau(spec.d);
  std::iota(tau.begin(), tau.end(), 0);
  if (shuffle_seed) {
    SplitMix64 rng(*shuffle_seed);
    shuffle_fisher_yates(tau, rng);
  }
  std::vector<std::vector<int>> dense(spec.m);
  for (int r = 0; r < spec.m; ++r) dense[r] = spec.dense_row(r);
  std::vector<int> ids(spec.m);
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&](int x, int y) {
    for (int k = 0; k < spec.d; ++k) {
      int a = dense[x][tau[k]], b = dense[y][tau[k]];
      if (a != b) return a < b;
    }
    return x < y;
  });
  OrderSpec o;
  o.kind = OrderKind::kLexMin;
  o.shuffle_seed = shuffle_seed;
  o.rows = std::move(ids);
  return o;
}

OrderSpec dynamic_order(OrderKind kind) {
  if (kind != OrderKind::kMaxCut && kind != OrderKind::kMinCut)
    throw std::invalid_argument("dynamic_order expects maxcut or mincut");
  OrderSpec o;
  o.kind = kind;
  return o;
}

}  // namespace subcone
