#include "subcone/io.hpp"

#include <fstream>

#include <json.hpp>

namespace subcone {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

void write_matrix_file(std::ostream& os, const ConeSpec& spec) {
  os << spec.d << ' ' << spec.m << ' ' << spec.n << '\n';
  for (int r = 0; r < spec.m; ++r) {
    std::vector<int> row = spec.dense_row(r);
    for (int c = 0; c < spec.d; ++c) {
      if (c) os << ' ';
      os << row[c];
    }
    os << '\n';
  }
  for (const Triplet& t : spec.triplets) os << t.i << ' ' << t.j << ' ' << t.K << '\n';
}

MatrixFile read_matrix_file(std::istream& is) {
  MatrixFile f;
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing matrix header");
  std::vector<std::string> toks = split_tokens(line);
  if (toks.size() != 3) throw FormatError("matrix header must be 'd m n'");
  try {
    f.d = std::stoi(toks[0]);
    f.m = std::stoi(toks[1]);
    f.n = std::stoi(toks[2]);
  } catch (const std::exception&) {
    throw FormatError("matrix header must be 'd m n'");
  }
  if (f.d <= 0 || f.m <= 0 || f.n <= 0) throw FormatError("bad matrix header values");
  auto next_line = [&]() -> std::string {
    std::string l;
    while (std::getline(is, l))
      if (!l.empty() && l[0] != '#') return l;
    throw FormatError("unexpected end of matrix file");
  };
  for (int r = 0; r < f.m; ++r) {
    std::vector<std::string> row = split_tokens(next_line());
    if ((int)row.size() != f.d) throw FormatError("matrix row with wrong width");
    std::vector<int> v(f.d);
    try {
      for (int c = 0; c < f.d; ++c) v[c] = std::stoi(row[c]);
    } catch (const std::exception&) {
      throw FormatError("malformed matrix entry");
    }
    f.rows.push_back(std::move(v));
  }
  for (int r = 0; r < f.m; ++r) {
    std::vector<std::string> lab = split_tokens(next_line());
    if (lab.size() != 3) throw FormatError("matrix label must be 'i j K'");
    try {
      f.labels.push_back(
          {std::stoi(lab[0]), std::stoi(lab[1]), (std::uint32_t)std::stoul(lab[2])});
    } catch (const std::exception&) {
      throw FormatError("malformed matrix label");
    }
  }
  return f;
}

void write_order_file(std::ostream& os, const ConeSpec& spec, const OrderSpec& order) {
  for (int rid : order.rows) {
    const Triplet& t = spec.triplets[rid];
    os << t.i << ' ' << t.j << ' ' << t.K << '\n';
  }
}

std::vector<Triplet> read_order_file(std::istream& is) {
  std::vector<Triplet> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> toks = split_tokens(line);
    if (toks.size() != 3) throw FormatError("order line must be 'i j K'");
    try {
      out.push_back({std::stoi(toks[0]), std::stoi(toks[1]), (std::uint32_t)std::stoul(toks[2])});
    } catch (const std::exception&) {
      throw FormatError("malformed order line");
    }
  }
  return out;
}

void write_histogram_csv(std::ostream& os, const Histogram& h, const std::string& key_name) {
  os << key_name << ",count\n";
  for (const auto& [k, c] : h) os << k << ',' << c << '\n';
}

void write_trajectory_csv(std::ostream& os, const std::vector<std::pair<int, size_t>>& t) {
  os << "inequalities,rays\n";
  for (const auto& [i, r] : t) os << i << ',' << r << '\n';
}

void write_estimate_report(std::ostream& os, const CaptureEstimate& e) {
  auto emit = [&](const char* key, double v) {
    std::ostringstream ss;
    ss.precision(15);
    ss << v;
    os << key << ": " << ss.str() << '\n';
  };
  emit("pool_size", e.pool_size);
  emit("probe_orbits", e.probe_orbits);
  emit("overlap", e.overlap);
  emit("overlap_fraction", e.overlap_fraction);
  os << "defined: " << (e.defined ? "yes" : "no") << '\n';
  if (e.defined) {
    emit("estimated_orbits", e.estimated_orbits);
    if (e.mean_orbit_size > 0) {
      emit("mean_orbit_size", e.mean_orbit_size);
      emit("estimated_rays", e.estimated_rays);
    }
  }
}

#ifndef SUBCONE_GIT_DESC
#define SUBCONE_GIT_DESC "unknown"
#endif

void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  if (m.n) j["n"] = m.n;
  if (!m.order.empty()) j["order"] = m.order;
  if (m.seed) j["seed"] = *m.seed;
  if (!m.budgets.empty()) {
    nlohmann::json b;
    for (const auto& [k, v] : m.budgets) b[k] = v;
    j["budgets"] = b;
  }
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["threads"] = m.threads;
  j["backend"] = m.backend;
  j["git_describe"] = SUBCONE_GIT_DESC;
  j["wall_clock_s"] = m.wall_clock_s;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write manifest: " + path);
  os << j.dump(2) << '\n';
}

}  // namespace subcone
