#include <doctest.h>

#include <algorithm>

#include "subcone/rng.hpp"
#include "subcone/stats.hpp"

using namespace subcone;

TEST_SUITE_BEGIN("stats");

TEST_CASE("histograms ignore input order") {
  std::vector<int> weights{10, 12, 10, 20, 12, 12};
  Histogram a = histogram_of(weights);
  SplitMix64 rng(5);
  shuffle_fisher_yates(weights, rng);
  Histogram b = histogram_of(weights);
  CHECK(a == b);
  CHECK(histogram_total(a) == 6);
  CHECK(a.at(12) == 3);
  CHECK(histogram_min(a) == 10);
  CHECK(histogram_max(a) == 20);
}

TEST_CASE("capture-recapture reproduces the published arithmetic") {
  CaptureEstimate e = capture_recapture(260e6, 2797684, 154170);
  CHECK(e.defined);
  CHECK(e.overlap_fraction == doctest::Approx(0.0551).epsilon(0.01));
  CHECK(e.estimated_orbits == doctest::Approx(4.7e9).epsilon(0.02));

  // ray estimate scales by the mean orbit size of the sampled pool
  CaptureEstimate r = capture_recapture(260e6, 2797684, 154170, 1383.0);
  CHECK(r.estimated_rays == doctest::Approx(6.5e12).epsilon(0.02));
}

TEST_CASE("full overlap collapses the estimate to the pool size") {
  CaptureEstimate e = capture_recapture(1000, 400, 400);
  CHECK(e.defined);
  CHECK(e.estimated_orbits == doctest::Approx(1000));
}

TEST_CASE("zero overlap leaves the estimate undefined") {
  CaptureEstimate e = capture_recapture(1000, 400, 0);
  CHECK_FALSE(e.defined);
  CHECK_THROWS_AS(capture_recapture(10, 5, 7), std::invalid_argument);
}

TEST_CASE("mean of an orbit-size histogram") {
  Histogram h;
  h[48] = 5;
  h[24] = 1;
  h[2] = 1;
  CHECK(histogram_mean(h) == doctest::Approx((48.0 * 5 + 24 + 2) / 7));
}

TEST_SUITE_END();
