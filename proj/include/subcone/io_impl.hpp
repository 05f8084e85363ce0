#pragma once

#include <array>
#include <cstring>
#include <numeric>

namespace subcone {

namespace detail {
inline bool fits_16_bytes(const Int128&) { return true; }
inline bool fits_16_bytes(const mpz_class& v) {
  static const mpz_class hi = mpz_class(1) << 127;
  return v >= -hi && v < hi;
}
}  // namespace detail

template <class Z>
void write_rays_binary(std::ostream& os, const std::vector<std::vector<Z>>& rays, int d) {
  // width: smallest of 1/2/4/8/16 bytes covering every coordinate
  int width = 1;
  auto fits = [&](const Z& v, int w) {
    if (w >= 16) return detail::fits_16_bytes(v);
    Z lo = Z(-1), hi = Z(1);
    for (int k = 0; k < 8 * w - 1; ++k) {
      lo = lo + lo;
      hi = hi + hi;
    }
    return !(v < lo) && v < hi;
  };
  for (const auto& r : rays)
    for (const Z& v : r)
      while (!fits(v, width)) {
        if (width >= 16) throw OverflowError("coordinate does not fit 16-byte SDDR1 storage");
        width *= 2;
      }

  os.write("SDDR1", 5);
  unsigned char w8 = (unsigned char)width;
  os.write((const char*)&w8, 1);
  std::uint32_t d32 = (std::uint32_t)d;
  std::uint64_t cnt = (std::uint64_t)rays.size();
  unsigned char hdr[12];
  for (int k = 0; k < 4; ++k) hdr[k] = (unsigned char)(d32 >> (8 * k));
  for (int k = 0; k < 8; ++k) hdr[4 + k] = (unsigned char)(cnt >> (8 * k));
  os.write((const char*)hdr, 12);

  std::vector<unsigned char> buf;
  buf.reserve(size_t(width) * d);
  for (const auto& r : rays) {
    buf.clear();
    for (const Z& v : r) {
      // two's complement little-endian of the given width
      bool neg = sgn_z(v) < 0;
      Z mag = neg ? -(v + Z(1)) : v;  // avoids overflow at the type minimum
      for (int k = 0; k < width; ++k) {
        Z byte = mag % Z(256);
        unsigned char b = (unsigned char)z_to_ll(byte);
        if (neg) b = (unsigned char)~b;
        buf.push_back(b);
        mag = mag / Z(256);
      }
    }
    os.write((const char*)buf.data(), (std::streamsize)buf.size());
  }
}

template <class Z>
std::vector<std::vector<Z>> read_rays_binary(std::istream& is) {
  char magic[5];
  if (!is.read(magic, 5) || std::memcmp(magic, "SDDR1", 5) != 0)
    throw FormatError("bad SDDR1 magic");
  unsigned char w8;
  if (!is.read((char*)&w8, 1)) throw FormatError("truncated SDDR1 header");
  int width = w8;
  if (width != 1 && width != 2 && width != 4 && width != 8 && width != 16)
    throw FormatError("unsupported SDDR1 width");
  unsigned char hdr[12];
  if (!is.read((char*)hdr, 12)) throw FormatError("truncated SDDR1 header");
  std::uint32_t d = 0;
  std::uint64_t cnt = 0;
  for (int k = 3; k >= 0; --k) d = (d << 8) | hdr[k];
  for (int k = 7; k >= 0; --k) cnt = (cnt << 8) | hdr[4 + k];
  if (d == 0) throw FormatError("SDDR1 with zero dimension");

  std::vector<std::vector<Z>> rays;
  rays.reserve(cnt);
  std::vector<unsigned char> buf(size_t(width) * d);
  for (std::uint64_t i = 0; i < cnt; ++i) {
    if (!is.read((char*)buf.data(), (std::streamsize)buf.size()))
      throw FormatError("truncated SDDR1 payload");
    std::vector<Z> x(d);
    for (std::uint32_t c = 0; c < d; ++c) {
      const unsigned char* p = buf.data() + size_t(c) * width;
      bool neg = p[width - 1] & 0x80;
      Z acc = 0;
      for (int k = width - 1; k >= 0; --k) {
        unsigned char b = neg ? (unsigned char)~p[k] : p[k];
        acc = acc * 256 + Z(b);
      }
      x[c] = neg ? -(acc + Z(1)) : acc;
    }
    rays.push_back(std::move(x));
  }
  return rays;
}

template <class Z>
DdPair<Z> pipe_dd_step(const DdPair<Z>& pair, const std::vector<Z>& new_row,
                       const DdOptions& opt) {
  IneqSystem<Z> sys;
  sys.cols = pair.d;
  for (const auto& r : pair.rows) sys.add_dense_row(r);
  sys.add_dense_row(new_row);

  DdState<Z> st;
  st.sys = &sys;
  st.processed.resize(pair.rows.size());
  std::iota(st.processed.begin(), st.processed.end(), 0);
  st.rays.reserve(pair.rays.size());
  for (const auto& x : pair.rays) {
    DdRay<Z> r;
    r.x = x;
    r.inc = BitVec(pair.rows.size());
    for (size_t k = 0; k < pair.rows.size(); ++k)
      if (sgn_z(sys.dot((int)k, std::span<const Z>(x))) == 0) r.inc.set(k);
    st.rays.push_back(std::move(r));
  }
  std::sort(st.rays.begin(), st.rays.end(),
            [](const DdRay<Z>& a, const DdRay<Z>& b) { return coords_less(a.x, b.x); });
  st.rebuild_rowbits();

  dd_step(st, (int)pair.rows.size(), opt);

  DdPair<Z> out;
  out.d = pair.d;
  out.rows = pair.rows;
  out.rows.push_back(new_row);
  out.rays.reserve(st.rays.size());
  for (const DdRay<Z>& r : st.rays) out.rays.push_back(r.x);
  return out;
}

}  // namespace subcone
