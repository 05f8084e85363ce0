#include <doctest.h>

#include <numeric>

#include "subcone/cone.hpp"
#include "subcone/dd.hpp"
#include "subcone/linalg.hpp"
#include "subcone/system.hpp"

using namespace subcone;

namespace {

Mat<Int128> identity(int d) {
  Mat<Int128> m(d, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1;
  return m;
}

template <class Z>
bool is_zero_product(const Mat<Z>& A, const Mat<Z>& B) {
  for (int i = 0; i < A.nr; ++i)
    for (int j = 0; j < B.nc; ++j) {
      Z acc = 0;
      for (int k = 0; k < A.nc; ++k) acc += A.at(i, k) * B.at(k, j);
      if (sgn_z(acc) != 0) return false;
    }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("checked 128-bit scalars") {
  Int128 big = 1;
  for (int k = 0; k < 126; ++k) big = big + big;
  CHECK_THROWS_AS(big + big, OverflowError);
  CHECK_THROWS_AS(big * Int128(4), OverflowError);
  CHECK(z_str(Int128(-12345)) == "-12345");
  CHECK(z_str(z_parse<Int128>("170141183460469231731687303715884105727")) ==
        "170141183460469231731687303715884105727");
  CHECK_THROWS_AS(z_parse<Int128>("170141183460469231731687303715884105728"), OverflowError);
  CHECK_THROWS_AS(z_parse<Int128>("12x"), FormatError);
  CHECK(gcd_z(Int128(-12), Int128(18)) == Int128(6));
  CHECK(z_str(z_parse<mpz_class>("-98765432109876543210987654321")) ==
        "-98765432109876543210987654321");
}

TEST_CASE("rank") {
  CHECK(rank_ff(identity(7)) == 7);

  // duplicate rows change nothing
  Mat<Int128> M(4, 3);
  int vals[4][3] = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}, {1, 3, 4}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) M.at(i, j) = vals[i][j];
  CHECK(rank_ff(M) == 2);

  // big-integer backend agrees
  Mat<mpz_class> Mb(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) Mb.at(i, j) = vals[i][j];
  CHECK(rank_ff(Mb) == 2);
}

TEST_CASE("support of f_X at n=5 has rank d-1") {
  ConeSpec spec = build_cone(5);
  IneqSystem<Int128> sys = system_of<Int128>(spec);
  std::vector<Int128> fx = f_j<Int128>(spec, spec.full_mask());
  std::vector<int> sup = support_rows(sys, std::span<const Int128>(fx));
  CHECK(rank_ff(sys.dense_submatrix(sup)) == 25);
}

TEST_CASE("kernel vector") {
  // rank-d matrix is rejected
  CHECK_THROWS_AS(kernel_vector(identity(4)), std::invalid_argument);

  Mat<Int128> A(2, 3);
  // kernel of {x+y+z = 0, x-z = 0} is (1,-2,1)
  A.at(0, 0) = 1; A.at(0, 1) = 1; A.at(0, 2) = 1;
  A.at(1, 0) = 1; A.at(1, 1) = 0; A.at(1, 2) = -1;
  std::vector<Int128> k = kernel_vector(A);
  CHECK(k == std::vector<Int128>{1, -2, 1});

  // duplicate-row padding does not change the result
  Mat<Int128> B(4, 3);
  for (int j = 0; j < 3; ++j) {
    B.at(0, j) = A.at(0, j);
    B.at(1, j) = A.at(1, j);
    B.at(2, j) = A.at(0, j);
    B.at(3, j) = A.at(1, j);
  }
  CHECK(kernel_vector(B) == k);
}

TEST_CASE("nullspace basis") {
  // single reduced row with up to 4 nonzeros: nullspace has dimension d-1
  ConeSpec s4 = build_cone(4);
  IneqSystem<Int128> sys = system_of<Int128>(s4);
  std::vector<int> one{0};
  Mat<Int128> row = sys.dense_submatrix(one);
  Mat<Int128> basis = nullspace_basis(row);
  CHECK(basis.nc == s4.d - 1);
  CHECK(is_zero_product(row, basis));
  CHECK(rank_ff(basis) == s4.d - 1);
}

TEST_CASE("nullspace of the unreduced matrix is the modular space") {
  // oracle: modular functions m(A) = z + sum_{i in A} a_i span an
  // (n+1)-dimensional space annihilated by every elementary row
  const int n = 4;
  std::vector<Triplet> ts = elementary_triplets(n);
  Mat<Int128> M((int)ts.size(), 1 << n);
  for (size_t r = 0; r < ts.size(); ++r) {
    const Triplet& t = ts[r];
    std::uint32_t ik = (1u << t.i) | t.K, jk = (1u << t.j) | t.K;
    M.at((int)r, (int)ik) += 1;
    M.at((int)r, (int)jk) += 1;
    M.at((int)r, (int)t.K) -= 1;
    M.at((int)r, (int)(ik | jk)) -= 1;
  }
  Mat<Int128> basis = nullspace_basis(M);
  CHECK(basis.nc == n + 1);
  CHECK(is_zero_product(M, basis));

  // the n+1 modular generators lie in the span: stacking them onto the
  // basis does not raise the rank
  Mat<Int128> stacked(basis.nc + n + 1, 1 << n);
  for (int c = 0; c < basis.nc; ++c)
    for (int r = 0; r < basis.nr; ++r) stacked.at(c, r) = basis.at(r, c);
  for (int g = 0; g <= n; ++g)
    for (std::uint32_t a = 0; a < (1u << n); ++a) {
      if (g == n)
        stacked.at(basis.nc + g, (int)a) = 1;  // constant function
      else
        stacked.at(basis.nc + g, (int)a) = (int)((a >> g) & 1);
    }
  CHECK(rank_ff(stacked) == n + 1);
}

TEST_CASE("primitive normalization") {
  std::vector<Int128> v{2, 4, 6};
  normalize_primitive(v);
  CHECK(v == std::vector<Int128>{1, 2, 3});

  std::vector<Int128> w{-1, 0, 2};
  normalize_primitive(w);
  CHECK(w == std::vector<Int128>{1, 0, -2});

  std::vector<Int128> u{0, -4, 6};
  normalize_primitive(u);
  std::vector<Int128> u2 = u;
  normalize_primitive(u2);
  CHECK(u == u2);  // idempotent

  std::vector<Int128> z{0, 0};
  CHECK_THROWS_AS(normalize_primitive(z), std::invalid_argument);
}

TEST_CASE("initial DD pair is a simplicial cone") {
  ConeSpec spec = build_cone(3);
  IneqSystem<Int128> sys = system_of<Int128>(spec);
  std::vector<int> order(spec.m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> remaining;
  DdState<Int128> st = initial_dd_pair(sys, order, &remaining);
  CHECK(st.rays.size() == 4);
  CHECK(st.processed.size() == 4);
  CHECK(remaining.size() == 2);

  // every ray on exactly d-1 of the chosen facets, and M_0 R_0 is a
  // diagonal positive matrix up to ray order
  for (const DdRay<Int128>& r : st.rays) {
    CHECK(r.weight() == 3);
    int positive = 0;
    for (int k = 0; k < 4; ++k) {
      Int128 p = sys.dot(st.processed[k], std::span<const Int128>(r.x));
      CHECK(sgn_z(p) >= 0);
      if (sgn_z(p) > 0) ++positive;
    }
    CHECK(positive == 1);
  }
}

TEST_SUITE_END();
