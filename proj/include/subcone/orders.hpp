#pragma once

// Insertion-order strategies for the DD iteration. Static kinds realize a
// full permutation of the inequality rows up front; dynamic kinds pick the
// next row from the state of the computation (see dynamic_next in dd.hpp).

#include <cstdint>
#include <optional>
#include <vector>

#include "subcone/cone.hpp"

namespace subcone {

enum class OrderKind { kLexMin, kTOpt, kRecursive, kMaxCut, kMinCut };

struct OrderSpec {
  OrderKind kind = OrderKind::kTOpt;
  std::optional<std::uint64_t> shuffle_seed;  // lex-min only
  std::vector<int> rows;                      // realized permutation (static kinds)

  bool is_dynamic() const { return kind == OrderKind::kMaxCut || kind == OrderKind::kMinCut; }
};

const char* order_kind_name(OrderKind k);
std::optional<OrderKind> order_kind_from_name(std::string_view name);

// Tail-optimal order: sort by the relation "smaller |K| priority first,
// ties by the element string i j K", then reverse. The |K| priority list
// interleaves 0, n-2, 1, n-3, ... until exhausted.
OrderSpec topt_order(const ConeSpec& spec);

// Subsets of K in the recursive enumeration: K itself first, then for each
// element in decreasing order the enumeration of K minus that element,
// first occurrences only.
std::vector<std::uint32_t> rec_enumerate(std::uint32_t K);

// Pairs ij lexicographically, (i,j|K) for K in rec_enumerate(X \ ij),
// whole list reversed. The (0,j|K) block forms the end segment.
OrderSpec recursive_order(const ConeSpec& spec);

// Rows sorted lexicographically by their coefficient vectors, optionally
// under a seed-shuffled coordinate order.
OrderSpec lexmin_order(const ConeSpec& spec, std::optional<std::uint64_t> shuffle_seed = {});

OrderSpec dynamic_order(OrderKind kind);

// Comparison relation underlying the tail-optimal order (exposed for tests).
bool topt_precedes(int n, const Triplet& a, const Triplet& b);

template <class Z>
struct DdState;

// Dynamic policy: the unprocessed row cutting off the most (max-cut) or
// fewest (min-cut) rays of the current cone; ties by smallest row index.
template <class Z>
int dynamic_next(const DdState<Z>& st, const std::vector<int>& remaining, OrderKind kind,
                 int threads = 1);

}  // namespace subcone
