#pragma once

// Text and binary formats of the toolkit. Everything round-trips
// bit-exactly: a file written from the in-memory object reads back equal,
// and rewriting what was read reproduces the bytes.
//
//   matrix file    "d m n" header, m rows of d integers, m label lines
//                  "i j K-mask"
//   ray file       one ray per line, d space-separated integers; lines
//                  starting with '#' are comments
//   SDDR1 binary   magic "SDDR1", u8 bytes-per-coordinate, u32 d,
//                  u64 count, then count*d little-endian signed integers
//   DD pair        "d m r" header, m inequality rows, r rays; pipe steps
//                  read one extra row after the pair and emit the next pair
//   orbit pool     one canonical ray per line, optional "# size weight"
//                  annotation, sorted lexicographically
//   probe journal  "canonical-ray | weight | #neighbors | #new-orbits"

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "subcone/cone.hpp"
#include "subcone/dd.hpp"
#include "subcone/orders.hpp"
#include "subcone/stats.hpp"

namespace subcone {

// ---- low-level helpers ----------------------------------------------------

std::vector<std::string> split_tokens(const std::string& line);

template <class Z>
std::string coords_line(const std::vector<Z>& x) {
  std::string s;
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) s.push_back(' ');
    s += z_str(x[i]);
  }
  return s;
}

template <class Z>
std::vector<Z> parse_coords(const std::string& line, int expect = -1) {
  std::vector<std::string> toks = split_tokens(line);
  std::vector<Z> x;
  x.reserve(toks.size());
  for (const std::string& t : toks) {
    if (t[0] == '#') break;
    x.push_back(z_parse<Z>(t));
  }
  if (expect >= 0 && (int)x.size() != expect)
    throw FormatError("expected " + std::to_string(expect) + " coordinates, got " +
                      std::to_string(x.size()));
  return x;
}

// ---- matrix + order files ---------------------------------------------------

void write_matrix_file(std::ostream& os, const ConeSpec& spec);
struct MatrixFile {
  int d = 0, m = 0, n = 0;
  std::vector<std::vector<int>> rows;
  std::vector<Triplet> labels;
};
MatrixFile read_matrix_file(std::istream& is);

void write_order_file(std::ostream& os, const ConeSpec& spec, const OrderSpec& order);
std::vector<Triplet> read_order_file(std::istream& is);

// ---- ray files --------------------------------------------------------------

template <class Z>
void write_rays(std::ostream& os, const std::vector<std::vector<Z>>& rays) {
  for (const auto& r : rays) os << coords_line(r) << '\n';
}

template <class Z>
std::vector<std::vector<Z>> read_rays(std::istream& is, int expect_d = -1) {
  std::vector<std::vector<Z>> rays;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    rays.push_back(parse_coords<Z>(line, expect_d));
  }
  return rays;
}

template <class Z>
void write_rays_binary(std::ostream& os, const std::vector<std::vector<Z>>& rays, int d);
template <class Z>
std::vector<std::vector<Z>> read_rays_binary(std::istream& is);

// ---- DD pair (pipe mode) ----------------------------------------------------

template <class Z>
struct DdPair {
  int d = 0;
  std::vector<std::vector<Z>> rows;
  std::vector<std::vector<Z>> rays;
};

template <class Z>
void write_pair(std::ostream& os, const DdPair<Z>& pair) {
  os << pair.d << ' ' << pair.rows.size() << ' ' << pair.rays.size() << '\n';
  for (const auto& r : pair.rows) os << coords_line(r) << '\n';
  for (const auto& r : pair.rays) os << coords_line(r) << '\n';
}

template <class Z>
DdPair<Z> read_pair(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing DD pair header");
  std::vector<std::string> toks = split_tokens(line);
  if (toks.size() != 3) throw FormatError("DD pair header must be 'd m r'");
  DdPair<Z> pair;
  long long m = 0, r = 0;
  try {
    pair.d = (int)z_to_ll(z_parse<Z>(toks[0]));
    m = z_to_ll(z_parse<Z>(toks[1]));
    r = z_to_ll(z_parse<Z>(toks[2]));
  } catch (const std::exception&) {
    throw FormatError("DD pair header must be 'd m r'");
  }
  if (pair.d <= 0 || m < 0 || r < 0) throw FormatError("bad DD pair header values");
  auto read_line = [&]() -> std::string {
    std::string l;
    while (std::getline(is, l))
      if (!l.empty() && l[0] != '#') return l;
    throw FormatError("unexpected end of DD pair input");
  };
  for (long long k = 0; k < m; ++k) pair.rows.push_back(parse_coords<Z>(read_line(), pair.d));
  for (long long k = 0; k < r; ++k) pair.rays.push_back(parse_coords<Z>(read_line(), pair.d));
  return pair;
}

// One extra row after the pair; returns the next pair.
template <class Z>
DdPair<Z> pipe_dd_step(const DdPair<Z>& pair, const std::vector<Z>& new_row,
                       const DdOptions& opt = {});

// ---- orbit pool + probe journal ----------------------------------------------

template <class Z>
struct PoolLine {
  std::vector<Z> canonical;
  std::optional<std::pair<size_t, size_t>> size_weight;
};

template <class Z>
void write_pool(std::ostream& os, const std::vector<PoolLine<Z>>& pool) {
  for (const auto& e : pool) {
    os << coords_line(e.canonical);
    if (e.size_weight) os << " # " << e.size_weight->first << ' ' << e.size_weight->second;
    os << '\n';
  }
}

template <class Z>
std::vector<PoolLine<Z>> read_pool(std::istream& is, int expect_d = -1) {
  std::vector<PoolLine<Z>> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    PoolLine<Z> e;
    size_t hash = line.find('#');
    e.canonical = parse_coords<Z>(line.substr(0, hash), expect_d);
    if (hash != std::string::npos) {
      std::vector<std::string> toks = split_tokens(line.substr(hash + 1));
      if (toks.size() == 2)
        e.size_weight = {(size_t)std::stoull(toks[0]), (size_t)std::stoull(toks[1])};
    }
    out.push_back(std::move(e));
  }
  return out;
}

// ---- CSV + estimate report ----------------------------------------------------

void write_histogram_csv(std::ostream& os, const Histogram& h, const std::string& key_name);
void write_trajectory_csv(std::ostream& os, const std::vector<std::pair<int, size_t>>& t);
void write_estimate_report(std::ostream& os, const CaptureEstimate& e);

// ---- run manifest --------------------------------------------------------------

struct RunManifest {
  std::string command;
  int n = 0;
  std::string order;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> budgets;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  int threads = 1;
  std::string backend;
  double wall_clock_s = 0;
};

void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace subcone

#include "subcone/io_impl.hpp"
