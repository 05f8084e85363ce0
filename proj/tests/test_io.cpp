#include <doctest.h>

#include <sstream>

#include "subcone/io.hpp"

using namespace subcone;

TEST_SUITE_BEGIN("io");

TEST_CASE("matrix file round-trips bit-exactly") {
  ConeSpec spec = build_cone(5);
  std::ostringstream first;
  write_matrix_file(first, spec);
  CHECK(first.str().substr(0, 8) == "26 80 5\n");

  std::istringstream in(first.str());
  MatrixFile f = read_matrix_file(in);
  CHECK(f.d == 26);
  CHECK(f.m == 80);
  CHECK(f.n == 5);
  for (int r = 0; r < f.m; ++r) {
    CHECK(f.rows[r] == spec.dense_row(r));
    CHECK(f.labels[r] == spec.triplets[r]);
  }

  ConeSpec s3 = build_cone(3);
  std::ostringstream o3;
  write_matrix_file(o3, s3);
  std::istringstream i3(o3.str());
  MatrixFile f3 = read_matrix_file(i3);
  CHECK(f3.m == 6);
  for (const auto& row : f3.rows) CHECK(row.size() == 4);
}

TEST_CASE("malformed matrix input is rejected") {
  std::istringstream bad1("not a header\n");
  CHECK_THROWS_AS(read_matrix_file(bad1), FormatError);
  std::istringstream bad2("4 2 3\n1 0 0 0\n");
  CHECK_THROWS_AS(read_matrix_file(bad2), FormatError);
  std::istringstream bad3("4 1 3\n1 0 x 0\n0 1 2\n");
  CHECK_THROWS_AS(read_matrix_file(bad3), FormatError);
}

TEST_CASE("ray files: text and binary round trips") {
  std::vector<std::vector<Int128>> rays{{Int128(1), Int128(0), Int128(-3)},
                                        {Int128(70000), Int128(2), Int128(5)}};
  std::ostringstream os;
  write_rays(os, rays);
  std::istringstream is(os.str());
  CHECK(read_rays<Int128>(is, 3) == rays);

  // a second write of what was read reproduces the bytes
  std::ostringstream os2;
  write_rays(os2, rays);
  CHECK(os2.str() == os.str());

  std::ostringstream bs(std::ios::binary);
  write_rays_binary(bs, rays, 3);
  std::string blob = bs.str();
  CHECK(blob.substr(0, 5) == "SDDR1");
  CHECK((unsigned char)blob[5] == 4);  // 70000 needs four bytes
  std::istringstream bin(blob, std::ios::binary);
  CHECK(read_rays_binary<Int128>(bin) == rays);

  std::istringstream badmagic("SDDRX junk", std::ios::binary);
  CHECK_THROWS_AS(read_rays_binary<Int128>(badmagic), FormatError);
}

TEST_CASE("binary width covers extreme values") {
  std::vector<std::vector<Int128>> rays{{Int128(-128), Int128(127)}};
  std::ostringstream bs(std::ios::binary);
  write_rays_binary(bs, rays, 2);
  CHECK((unsigned char)bs.str()[5] == 1);
  std::istringstream bin(bs.str(), std::ios::binary);
  CHECK(read_rays_binary<Int128>(bin) == rays);

  std::vector<std::vector<mpz_class>> big{{mpz_class("123456789012345678901234567890"), mpz_class(-7)}};
  std::ostringstream bs2(std::ios::binary);
  write_rays_binary(bs2, big, 2);
  CHECK((unsigned char)bs2.str()[5] == 16);
  std::istringstream bin2(bs2.str(), std::ios::binary);
  CHECK(read_rays_binary<mpz_class>(bin2) == big);
}

TEST_CASE("DD pair round trip and the empty-negative-class step") {
  ConeSpec spec = build_cone(3);
  IneqSystem<Int128> sys = system_of<Int128>(spec);
  OrderSpec ord = topt_order(spec);
  RunResult<Int128> run = run_dd(sys, ord);

  DdPair<Int128> pair;
  pair.d = spec.d;
  for (int rid : run.state.processed) pair.rows.push_back(sys.dense_row(rid));
  for (const auto& r : run.state.rays) pair.rays.push_back(r.x);

  std::ostringstream os;
  write_pair(os, pair);
  std::istringstream is(os.str());
  DdPair<Int128> back = read_pair<Int128>(is);
  CHECK(back.d == pair.d);
  CHECK(back.rows == pair.rows);
  CHECK(back.rays == pair.rays);

  // re-offering an already processed row keeps the ray set
  DdPair<Int128> next = pipe_dd_step(back, pair.rows[0]);
  CHECK(next.rays == pair.rays);
  CHECK(next.rows.size() == pair.rows.size() + 1);

  std::istringstream bad("3 1 1\n1 0 0\n");
  CHECK_THROWS_AS(read_pair<Int128>(bad), FormatError);
}

TEST_CASE("orbit pool files carry optional size and weight annotations") {
  std::vector<PoolLine<Int128>> pool;
  pool.push_back({{Int128(0), Int128(1), Int128(1)}, std::pair<size_t, size_t>{12, 4}});
  pool.push_back({{Int128(1), Int128(1), Int128(2)}, std::nullopt});
  std::ostringstream os;
  write_pool(os, pool);
  CHECK(os.str() == "0 1 1 # 12 4\n1 1 2\n");
  std::istringstream is(os.str());
  std::vector<PoolLine<Int128>> back = read_pool<Int128>(is, 3);
  REQUIRE(back.size() == 2);
  CHECK(back[0].canonical == pool[0].canonical);
  REQUIRE(back[0].size_weight.has_value());
  CHECK(back[0].size_weight->first == 12);
  CHECK(back[0].size_weight->second == 4);
  CHECK_FALSE(back[1].size_weight.has_value());
}

TEST_CASE("csv and estimate report formats") {
  Histogram h;
  h[3] = 2;
  h[4] = 3;
  std::ostringstream os;
  write_histogram_csv(os, h, "weight");
  CHECK(os.str() == "weight,count\n3,2\n4,3\n");

  std::ostringstream ts;
  write_trajectory_csv(ts, {{4, 4}, {5, 5}});
  CHECK(ts.str() == "inequalities,rays\n4,4\n5,5\n");

  CaptureEstimate e = capture_recapture(100, 10, 5);
  std::ostringstream rs;
  write_estimate_report(rs, e);
  CHECK(rs.str().find("estimated_orbits: 200") != std::string::npos);
}

TEST_SUITE_END();
