#pragma once

// Weight and orbit-size distributions plus the capture-recapture estimate
// of the total orbit count from an independent probe sample.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace subcone {

// bucket -> count; insertion order never matters
using Histogram = std::map<long long, std::size_t>;

template <class Buckets>
Histogram histogram_of(const Buckets& values) {
  Histogram h;
  for (auto v : values) ++h[(long long)v];
  return h;
}

inline std::size_t histogram_total(const Histogram& h) {
  std::size_t t = 0;
  for (const auto& [k, c] : h) t += c;
  return t;
}

inline long long histogram_min(const Histogram& h) { return h.begin()->first; }
inline long long histogram_max(const Histogram& h) { return h.rbegin()->first; }

inline double histogram_mean(const Histogram& h) {
  double s = 0, n = 0;
  for (const auto& [k, c] : h) {
    s += double(k) * double(c);
    n += double(c);
  }
  if (n == 0) throw std::invalid_argument("mean of an empty histogram");
  return s / n;
}

struct CaptureEstimate {
  double pool_size = 0;
  double probe_orbits = 0;
  double overlap = 0;
  double overlap_fraction = 0;
  bool defined = false;
  double estimated_orbits = 0;
  double mean_orbit_size = 0;
  double estimated_rays = 0;
};

// pool / (overlap / probe); the ray estimate scales by the mean orbit size
// observed in the sampled pool.
inline CaptureEstimate capture_recapture(double pool_size, double probe_orbits, double overlap,
                                         double mean_orbit_size = 0) {
  if (overlap > probe_orbits || probe_orbits <= 0 || pool_size < 0)
    throw std::invalid_argument("capture_recapture: overlap must not exceed the probe");
  CaptureEstimate e;
  e.pool_size = pool_size;
  e.probe_orbits = probe_orbits;
  e.overlap = overlap;
  e.overlap_fraction = overlap / probe_orbits;
  e.mean_orbit_size = mean_orbit_size;
  if (e.overlap_fraction == 0) {
    e.defined = false;  // nothing recaptured, no finite estimate
    return e;
  }
  e.defined = true;
  e.estimated_orbits = pool_size / e.overlap_fraction;
  if (mean_orbit_size > 0) e.estimated_rays = e.estimated_orbits * mean_orbit_size;
  return e;
}

}  // namespace subcone
