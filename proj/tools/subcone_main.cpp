// Command-line surface of the toolkit. Subcommands wrap the library
// operations one-to-one and exchange data through the text formats in
// io.hpp, so any reported number can be re-derived from a manifest.
//
// Exit codes: 0 success, 1 verification failure, 2 budget exhausted
// (partial outputs kept), 3 malformed input, 4 overflow detected.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "subcone/explore.hpp"
#include "subcone/io.hpp"
#include "subcone/neighbors.hpp"

using namespace subcone;

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitBudget = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitOverflow = 4;

struct GlobalArgs {
  std::string backend = "checked";
  int threads = 0;  // 0 = hardware
  std::string manifest;
};

int effective_threads(int requested) {
  if (const char* env = std::getenv("SUBCONE_THREADS")) return std::max(1, std::atoi(env));
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? (int)hw : 1;
}

size_t env_budget(const char* name, size_t fallback) {
  if (const char* env = std::getenv(name)) return (size_t)std::strtoull(env, nullptr, 10);
  return fallback;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void emit_manifest(const GlobalArgs& g, RunManifest m, const Stopwatch& sw) {
  m.wall_clock_s = sw.seconds();
  m.backend = g.backend;
  std::string path = g.manifest;
  if (path.empty()) {
    if (m.outputs.empty()) return;  // nowhere sensible to put it
    path = m.outputs.front() + ".manifest.json";
  }
  write_manifest(path, m);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open input file: " + path);
  return is;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  return os;
}

bool looks_binary(std::istream& is) {
  char magic[5] = {0};
  is.read(magic, 5);
  is.clear();
  is.seekg(0);
  return std::memcmp(magic, "SDDR1", 5) == 0;
}

template <class Z>
std::vector<std::vector<Z>> read_rays_any(const std::string& path, int expect_d) {
  std::ifstream is = open_input(path);
  if (looks_binary(is)) return read_rays_binary<Z>(is);
  return read_rays<Z>(is, expect_d);
}

OrderSpec make_order(const ConeSpec& spec, const std::string& kind,
                     std::optional<std::uint64_t> seed) {
  std::optional<OrderKind> k = order_kind_from_name(kind);
  if (!k) throw FormatError("unknown order kind: " + kind);
  switch (*k) {
    case OrderKind::kTOpt: return topt_order(spec);
    case OrderKind::kRecursive: return recursive_order(spec);
    case OrderKind::kLexMin: return lexmin_order(spec, seed);
    default: return dynamic_order(*k);
  }
}

Triplet parse_triplet(const std::string& text) {
  std::vector<std::string> toks = split_tokens(text);
  if (toks.size() != 3) throw FormatError("triplet must be 'i j K-mask': " + text);
  try {
    return {std::stoi(toks[0]), std::stoi(toks[1]), (std::uint32_t)std::stoul(toks[2])};
  } catch (const std::exception&) {
    throw FormatError("malformed triplet: " + text);
  }
}

// ---------------------------------------------------------------------------

struct DdArgs {
  int n = 0;
  std::string order = "topt";
  std::optional<std::uint64_t> seed;
  size_t stop_after = 0;
  std::vector<std::string> skip_rows;
  std::string adjacency = "halfgraph";
  std::string out;
  std::string trajectory;
  size_t max_rays = 0;
  bool emit_pair = false;
  bool binary = false;
};

AdjTest adjacency_from_name(const std::string& name) {
  if (name == "halfgraph") return AdjTest::kHalfGraph;
  if (name == "combinatorial") return AdjTest::kCombinatorial;
  if (name == "algebraic") return AdjTest::kAlgebraic;
  throw FormatError("unknown adjacency test: " + name);
}

template <class Z>
int cmd_dd(const GlobalArgs& g, const DdArgs& a) {
  Stopwatch sw;
  ConeSpec spec = build_cone(a.n);
  IneqSystem<Z> sys = system_of<Z>(spec);
  OrderSpec ord = make_order(spec, a.order, a.seed);

  std::vector<int> skips;
  for (const std::string& s : a.skip_rows) {
    int rid = spec.row_of(parse_triplet(s));
    if (rid < 0) throw FormatError("skip row is not an elementary triplet: " + s);
    skips.push_back(rid);
  }

  DdOptions opt;
  opt.test = adjacency_from_name(a.adjacency);
  opt.threads = effective_threads(g.threads);
  opt.max_rays = env_budget("SUBCONE_MAX_RAYS", a.max_rays);

  RunResult<Z> run = run_dd(sys, ord, opt, a.stop_after, skips);

  {
    std::ofstream os = open_output(a.out);
    if (a.emit_pair) {
      DdPair<Z> pair;
      pair.d = spec.d;
      for (int rid : run.state.processed) pair.rows.push_back(sys.dense_row(rid));
      for (const auto& r : run.state.rays) pair.rays.push_back(r.x);
      write_pair(os, pair);
    } else {
      std::vector<std::vector<Z>> coords;
      coords.reserve(run.state.rays.size());
      for (const auto& r : run.state.rays) coords.push_back(r.x);
      if (a.binary)
        write_rays_binary(os, coords, spec.d);
      else
        write_rays(os, coords);
    }
  }
  if (!a.trajectory.empty()) {
    std::ofstream os = open_output(a.trajectory);
    write_trajectory_csv(os, run.trajectory);
  }

  RunManifest m;
  m.command = "dd";
  m.n = a.n;
  m.order = a.order;
  m.seed = a.seed;
  m.threads = effective_threads(g.threads);
  if (a.stop_after) m.budgets.push_back({"stop_after", std::to_string(a.stop_after)});
  if (opt.max_rays) m.budgets.push_back({"max_rays", std::to_string(opt.max_rays)});
  for (const std::string& s : a.skip_rows) m.budgets.push_back({"skip_row", s});
  m.outputs.push_back(a.out);
  if (!a.trajectory.empty()) m.outputs.push_back(a.trajectory);
  emit_manifest(g, m, sw);

  std::cerr << "rays: " << run.state.rays.size() << " after " << run.state.processed.size()
            << " of " << spec.m << " inequalities\n";
  return run.partial ? kExitBudget : 0;
}

struct MatrixArgs {
  int n = 0;
  std::string out;
  std::string order_out;
  std::string order = "topt";
  std::optional<std::uint64_t> seed;
};

int cmd_matrix(const GlobalArgs& g, const MatrixArgs& a) {
  Stopwatch sw;
  ConeSpec spec = build_cone(a.n);
  {
    std::ofstream os = open_output(a.out);
    write_matrix_file(os, spec);
  }
  if (!a.order_out.empty()) {
    OrderSpec ord = make_order(spec, a.order, a.seed);
    if (ord.is_dynamic()) throw FormatError("dynamic orders have no static export");
    std::ofstream os = open_output(a.order_out);
    write_order_file(os, spec, ord);
  }
  RunManifest m;
  m.command = "matrix";
  m.n = a.n;
  m.order = a.order;
  m.seed = a.seed;
  m.outputs.push_back(a.out);
  if (!a.order_out.empty()) m.outputs.push_back(a.order_out);
  emit_manifest(g, m, sw);
  return 0;
}

template <class Z>
int cmd_ddstep(const GlobalArgs& g) {
  DdOptions opt;
  opt.threads = effective_threads(g.threads);
  DdPair<Z> pair = read_pair<Z>(std::cin);
  std::string line;
  std::optional<std::vector<Z>> row;
  while (std::getline(std::cin, line)) {
    if (line.empty() || line[0] == '#') continue;
    row = parse_coords<Z>(line, pair.d);
    break;
  }
  if (!row) throw FormatError("missing inequality row after the DD pair");
  DdPair<Z> next = pipe_dd_step(pair, *row, opt);
  write_pair(std::cout, next);
  return 0;
}

struct NeighborArgs {
  int n = 0;
  std::string rays_in;
  size_t index = 0;
  std::string out;
  std::string order = "topt";
  int depth = 1;
  size_t max_rays = 0;
};

template <class Z>
int cmd_neighbors(const GlobalArgs& g, const NeighborArgs& a) {
  Stopwatch sw;
  ConeSpec spec = build_cone(a.n);
  IneqSystem<Z> sys = system_of<Z>(spec);
  std::vector<std::vector<Z>> rays = read_rays_any<Z>(a.rays_in, spec.d);
  if (a.index >= rays.size()) throw FormatError("ray index out of range");

  NeighborOptions opt;
  opt.threads = effective_threads(g.threads);
  opt.depth = a.depth;
  opt.max_rays = env_budget("SUBCONE_MAX_RAYS", a.max_rays);
  NeighborResult<Z> res = neighbors(sys, rays[a.index], make_order(spec, a.order, {}), opt);

  {
    std::ofstream os = open_output(a.out);
    write_rays(os, res.rays);
  }
  RunManifest m;
  m.command = "neighbors";
  m.n = a.n;
  m.order = a.order;
  m.threads = opt.threads;
  m.inputs.push_back(a.rays_in);
  m.outputs.push_back(a.out);
  m.budgets.push_back({"index", std::to_string(a.index)});
  m.budgets.push_back({"depth", std::to_string(a.depth)});
  emit_manifest(g, m, sw);
  std::cerr << "neighbors: " << res.rays.size() << "\n";
  return res.partial ? kExitBudget : 0;
}

struct OrbitArgs {
  std::string action;  // canonicalize | expand
  int n = 0;
  std::string in;
  std::string out;
  bool annotate = false;
};

template <class Z>
int cmd_orbits(const GlobalArgs& g, const OrbitArgs& a) {
  Stopwatch sw;
  ConeSpec spec = build_cone(a.n);
  IneqSystem<Z> sys = system_of<Z>(spec);
  SymmetryTable tab = build_symmetry_table(spec);
  std::vector<std::vector<Z>> rays = read_rays_any<Z>(a.in, spec.d);

  std::ofstream os = open_output(a.out);
  size_t lines = 0;
  if (a.action == "canonicalize") {
    std::map<std::vector<Z>, size_t, bool (*)(const std::vector<Z>&, const std::vector<Z>&)>
        canon(coords_less<Z>);
    for (const auto& r : rays) canon.emplace(canonical_coords(tab, r), 0);
    std::vector<PoolLine<Z>> pool;
    for (auto& [c, dummy] : canon) {
      PoolLine<Z> line;
      line.canonical = c;
      if (a.annotate) {
        size_t size = orbit_expand(tab, c).size();
        size_t weight = ray_weight(sys, c);
        line.size_weight = {size, weight};
      }
      pool.push_back(std::move(line));
    }
    write_pool(os, pool);
    lines = pool.size();
  } else if (a.action == "expand") {
    std::vector<std::vector<Z>> all;
    for (const auto& r : rays)
      for (auto& img : orbit_expand(tab, r)) all.push_back(std::move(img));
    std::sort(all.begin(), all.end(), coords_less<Z>);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    write_rays(os, all);
    lines = all.size();
  } else {
    throw FormatError("orbits action must be canonicalize or expand");
  }

  RunManifest m;
  m.command = "orbits " + a.action;
  m.n = a.n;
  m.inputs.push_back(a.in);
  m.outputs.push_back(a.out);
  emit_manifest(g, m, sw);
  std::cerr << "orbits " << a.action << ": " << lines << " lines\n";
  return 0;
}

struct BfsArgs {
  int n = 0;
  std::string seeds;
  std::string pool_out;
  std::string journal;
  std::string order = "topt";
  size_t max_probes = 0;
  size_t max_weight = 0;
  int depth = 1;
  bool resume = false;
};

template <class Z>
int cmd_bfs(const GlobalArgs& g, const BfsArgs& a) {
  Stopwatch sw;
  ConeSpec spec = build_cone(a.n);
  IneqSystem<Z> sys = system_of<Z>(spec);
  SymmetryTable tab = build_symmetry_table(spec);
  std::vector<std::vector<Z>> seeds = read_rays_any<Z>(a.seeds, spec.d);

  // resumable campaigns: reload the pool, mark probed entries from the journal
  std::vector<std::pair<std::vector<Z>, bool>> preload;
  if (a.resume) {
    std::ifstream pis(a.pool_out, std::ios::binary);
    if (pis) {
      std::set<std::string> done;
      if (!a.journal.empty()) {
        std::ifstream jis(a.journal);
        std::string line;
        while (std::getline(jis, line)) {
          size_t bar = line.find('|');
          if (bar == std::string::npos) continue;
          std::string key = line.substr(0, bar);
          while (!key.empty() && key.back() == ' ') key.pop_back();
          done.insert(key);
        }
      }
      for (const auto& e : read_pool<Z>(pis, spec.d))
        preload.push_back({e.canonical, done.count(coords_line(e.canonical)) > 0});
    }
  }

  BfsBudget budget;
  budget.max_probes = env_budget("SUBCONE_MAX_PROBES", a.max_probes);
  budget.max_weight = a.max_weight;

  NeighborOptions opt;
  opt.threads = effective_threads(g.threads);
  opt.depth = a.depth;

  std::ofstream journal;
  if (!a.journal.empty()) {
    journal.open(a.journal, a.resume ? std::ios::app : std::ios::out);
    if (!journal) throw std::runtime_error("cannot open journal: " + a.journal);
  }
  auto on_probe = [&](const ProbeLog& log) {
    if (!journal.is_open()) return;
    journal << log.canonical << " | " << log.weight << " | " << log.neighbor_count << " | "
            << log.new_orbits << '\n';
    journal.flush();
  };

  BfsResult<Z> res = orbit_bfs(sys, tab, seeds, make_order(spec, a.order, {}), opt, budget,
                               on_probe, preload.empty() ? nullptr : &preload);

  {
    std::ofstream os = open_output(a.pool_out);
    std::vector<PoolLine<Z>> pool;
    for (const auto& [c, e] : res.pool) {
      PoolLine<Z> line;
      line.canonical = c;
      line.size_weight = {e.size, e.weight};
      pool.push_back(std::move(line));
    }
    write_pool(os, pool);
  }

  RunManifest m;
  m.command = "bfs";
  m.n = a.n;
  m.order = a.order;
  m.threads = opt.threads;
  m.inputs.push_back(a.seeds);
  m.outputs.push_back(a.pool_out);
  if (!a.journal.empty()) m.outputs.push_back(a.journal);
  if (budget.max_probes) m.budgets.push_back({"max_probes", std::to_string(budget.max_probes)});
  if (budget.max_weight) m.budgets.push_back({"max_weight", std::to_string(budget.max_weight)});
  emit_manifest(g, m, sw);

  std::cerr << "orbits: " << res.pool.size() << (res.closed ? " (closed)" : " (open)") << "\n";
  return res.closed ? 0 : kExitBudget;
}

struct HarvestArgs {
  int n = 0;
  std::string order = "topt";
  size_t stop_after = 0;
  std::string rows = "next";  // next | all
  bool cstar = false;
  bool include_members = true;
  std::string out;
};

template <class Z>
int cmd_harvest(const GlobalArgs& g, const HarvestArgs& a) {
  Stopwatch sw;
  ConeSpec spec = build_cone(a.n);
  IneqSystem<Z> sys = system_of<Z>(spec);
  OrderSpec ord = make_order(spec, a.order, {});

  DdOptions opt;
  opt.threads = effective_threads(g.threads);
  RunResult<Z> run = run_dd(sys, ord, opt, a.stop_after);

  std::vector<int> candidates;
  {
    std::vector<bool> done(spec.m, false);
    for (int rid : run.state.processed) done[rid] = true;
    if (a.rows == "all") {
      for (int r = 0; r < spec.m; ++r)
        if (!done[r]) candidates.push_back(r);
    } else {
      for (int rid : ord.rows)
        if (!done[rid]) {
          candidates.push_back(rid);
          break;
        }
    }
  }

  std::vector<std::vector<Z>> out;
  if (a.include_members)
    for (const auto& r : run.state.rays)
      if (in_cone(sys, std::span<const Z>(r.x))) out.push_back(r.x);
  for (int rid : candidates)
    for (auto& x : harvest_step(run.state, rid, sys, opt, a.cstar)) out.push_back(std::move(x));
  std::sort(out.begin(), out.end(), coords_less<Z>);
  out.erase(std::unique(out.begin(), out.end()), out.end());

  {
    std::ofstream os = open_output(a.out);
    write_rays(os, out);
  }
  RunManifest m;
  m.command = "harvest";
  m.n = a.n;
  m.order = a.order;
  m.threads = opt.threads;
  m.budgets.push_back({"stop_after", std::to_string(a.stop_after)});
  m.budgets.push_back({"rows", a.rows});
  m.outputs.push_back(a.out);
  emit_manifest(g, m, sw);
  std::cerr << "harvested rays: " << out.size() << "\n";
  return 0;
}

struct StatsArgs {
  std::string action;  // weights | orbit-sizes
  int n = 0;
  std::string in;
  std::string out;
};

template <class Z>
int cmd_stats(const GlobalArgs& g, const StatsArgs& a) {
  Stopwatch sw;
  Histogram h;
  if (a.action == "weights") {
    ConeSpec spec = build_cone(a.n);
    IneqSystem<Z> sys = system_of<Z>(spec);
    std::vector<std::vector<Z>> rays = read_rays_any<Z>(a.in, spec.d);
    std::vector<size_t> weights(rays.size());
    parallel_for_index(rays.size(), effective_threads(g.threads),
                       [&](int, size_t i) { weights[i] = ray_weight(sys, rays[i]); });
    h = histogram_of(weights);
  } else if (a.action == "orbit-sizes") {
    std::ifstream is = open_input(a.in);
    std::vector<size_t> sizes;
    for (const auto& e : read_pool<Z>(is)) {
      if (!e.size_weight) throw FormatError("pool line without a size annotation");
      sizes.push_back(e.size_weight->first);
    }
    h = histogram_of(sizes);
  } else {
    throw FormatError("stats action must be weights or orbit-sizes");
  }
  {
    std::ofstream os = open_output(a.out);
    write_histogram_csv(os, h, a.action == "weights" ? "weight" : "orbit_size");
  }
  RunManifest m;
  m.command = "stats " + a.action;
  m.n = a.n;
  m.inputs.push_back(a.in);
  m.outputs.push_back(a.out);
  emit_manifest(g, m, sw);
  return 0;
}

struct EstimateArgs {
  double pool_size = 0;
  double probe = 0;
  double overlap = 0;
  double mean_orbit_size = 0;
  std::string sizes_csv;
  std::string out;
};

int cmd_estimate(const GlobalArgs& g, const EstimateArgs& a) {
  Stopwatch sw;
  double mean = a.mean_orbit_size;
  if (!a.sizes_csv.empty()) {
    std::ifstream is = open_input(a.sizes_csv);
    std::string line;
    if (!std::getline(is, line)) throw FormatError("empty orbit-size csv");
    Histogram h;
    while (std::getline(is, line)) {
      size_t comma = line.find(',');
      if (comma == std::string::npos) throw FormatError("malformed csv line: " + line);
      try {
        h[std::stoll(line.substr(0, comma))] += std::stoull(line.substr(comma + 1));
      } catch (const std::exception&) {
        throw FormatError("malformed csv line: " + line);
      }
    }
    mean = histogram_mean(h);
  }
  CaptureEstimate e = capture_recapture(a.pool_size, a.probe, a.overlap, mean);
  if (!a.out.empty()) {
    std::ofstream os = open_output(a.out);
    write_estimate_report(os, e);
  } else {
    write_estimate_report(std::cout, e);
  }
  RunManifest m;
  m.command = "estimate";
  if (!a.sizes_csv.empty()) m.inputs.push_back(a.sizes_csv);
  if (!a.out.empty()) m.outputs.push_back(a.out);
  emit_manifest(g, m, sw);
  return e.defined ? 0 : kExitVerifyFail;
}

struct VerifyArgs {
  int n = 0;
  std::string in;
};

template <class Z>
int cmd_verify(const GlobalArgs& g, const VerifyArgs& a) {
  Stopwatch sw;
  ConeSpec spec = build_cone(a.n);
  IneqSystem<Z> sys = system_of<Z>(spec);
  std::vector<std::vector<Z>> rays = read_rays_any<Z>(a.in, spec.d);
  std::vector<char> ok(rays.size(), 0);
  parallel_for_index(rays.size(), effective_threads(g.threads),
                     [&](int, size_t i) { ok[i] = verify_extremal(sys, rays[i]) ? 1 : 0; });
  size_t bad = 0;
  for (size_t i = 0; i < rays.size(); ++i)
    if (!ok[i]) {
      ++bad;
      if (bad <= 10) std::cerr << "not extremal: line " << (i + 1) << "\n";
    }
  RunManifest m;
  m.command = "verify";
  m.n = a.n;
  m.inputs.push_back(a.in);
  emit_manifest(g, m, sw);
  std::cerr << "verified: " << (rays.size() - bad) << "/" << rays.size() << "\n";
  return bad == 0 ? 0 : kExitVerifyFail;
}

struct SampleArgs {
  int n = 0;
  std::uint64_t seed = 1;
  size_t attempts = 1000;
  std::string near_rays;
  size_t near_index = 0;
  std::string out;
};

template <class Z>
int cmd_sample(const GlobalArgs& g, const SampleArgs& a) {
  Stopwatch sw;
  ConeSpec spec = build_cone(a.n);
  IneqSystem<Z> sys = system_of<Z>(spec);
  std::optional<std::vector<int>> near;
  if (!a.near_rays.empty()) {
    std::vector<std::vector<Z>> rays = read_rays_any<Z>(a.near_rays, spec.d);
    if (a.near_index >= rays.size()) throw FormatError("near-ray index out of range");
    near = support_rows(sys, std::span<const Z>(rays[a.near_index]));
  }
  SampleStats stats;
  std::vector<std::vector<Z>> found =
      random_extremal_sample(sys, a.seed, a.attempts, &stats, near ? &*near : nullptr);
  {
    std::ofstream os = open_output(a.out);
    write_rays(os, found);
  }
  RunManifest m;
  m.command = "sample";
  m.n = a.n;
  m.seed = a.seed;
  m.budgets.push_back({"attempts", std::to_string(a.attempts)});
  if (!a.near_rays.empty()) m.inputs.push_back(a.near_rays);
  m.outputs.push_back(a.out);
  emit_manifest(g, m, sw);
  std::cerr << "hits: " << stats.hits << "/" << stats.attempts << ", distinct rays: "
            << found.size() << "\n";
  return 0;
}

struct ConvertArgs {
  int n = 0;
  std::string in;
  std::string out;
  bool to_binary = false;
};

template <class Z>
int cmd_convert(const GlobalArgs& g, const ConvertArgs& a) {
  Stopwatch sw;
  ConeSpec spec = build_cone(a.n);
  std::vector<std::vector<Z>> rays = read_rays_any<Z>(a.in, spec.d);
  {
    std::ofstream os = open_output(a.out);
    if (a.to_binary)
      write_rays_binary(os, rays, spec.d);
    else
      write_rays(os, rays);
  }
  RunManifest m;
  m.command = "convert";
  m.n = a.n;
  m.inputs.push_back(a.in);
  m.outputs.push_back(a.out);
  emit_manifest(g, m, sw);
  return 0;
}

template <class F>
int with_backend(const GlobalArgs& g, F&& f) {
  if (g.backend == "checked") return f.template operator()<Int128>();
  if (g.backend == "big") return f.template operator()<mpz_class>();
  throw FormatError("backend must be 'checked' or 'big'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact enumeration toolkit for the extremal rays of the submodular cone"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--backend", g.backend, "integer backend: checked (128-bit) or big (GMP)")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
  app.add_option("--manifest", g.manifest, "manifest path (default: <output>.manifest.json)");

  MatrixArgs ma;
  CLI::App* matrix = app.add_subcommand("matrix", "write the inequality matrix file");
  matrix->add_option("-n,--base", ma.n, "base-set size")->required();
  matrix->add_option("-o,--out", ma.out, "matrix file")->required();
  matrix->add_option("--order-out", ma.order_out, "also export the insertion order");
  matrix->add_option("--order", ma.order, "order kind for --order-out")->capture_default_str();
  matrix->add_option("--seed", ma.seed, "coordinate shuffle seed (lexmin)");

  DdArgs da;
  CLI::App* dd = app.add_subcommand("dd", "run the double description iteration");
  dd->add_option("-n,--base", da.n, "base-set size")->required();
  dd->add_option("--order", da.order, "topt | recursive | lexmin | maxcut | mincut")
      ->capture_default_str();
  dd->add_option("--seed", da.seed, "coordinate shuffle seed (lexmin)");
  dd->add_option("--stop-after", da.stop_after, "stop after this many inequalities");
  dd->add_option("--skip-row", da.skip_rows, "triplet 'i j K-mask' to leave out (repeatable)");
  dd->add_option("--adjacency", da.adjacency, "halfgraph | combinatorial | algebraic")
      ->capture_default_str();
  dd->add_option("-o,--out", da.out, "ray file")->required();
  dd->add_option("--trajectory", da.trajectory, "per-iteration size CSV");
  dd->add_option("--max-rays", da.max_rays, "abort when an iteration would exceed this");
  dd->add_flag("--emit-pair", da.emit_pair, "write the DD pair instead of the ray list");
  dd->add_flag("--binary", da.binary, "write rays in the compact binary format");

  CLI::App* ddstep = app.add_subcommand(
      "ddstep", "one DD iteration as a pipe: pair + row on stdin, next pair on stdout");

  NeighborArgs na;
  CLI::App* nb = app.add_subcommand("neighbors", "enumerate the neighbors of a ray");
  nb->add_option("-n,--base", na.n, "base-set size")->required();
  nb->add_option("-i,--rays", na.rays_in, "ray file with the probe ray")->required();
  nb->add_option("--index", na.index, "which ray of the file to probe")->capture_default_str();
  nb->add_option("-o,--out", na.out, "neighbor ray file")->required();
  nb->add_option("--order", na.order, "insertion order for the sub-enumeration")
      ->capture_default_str();
  nb->add_option("--depth", na.depth, "recursive adjacency decomposition depth")
      ->capture_default_str();
  nb->add_option("--max-rays", na.max_rays, "sub-enumeration ray budget");

  OrbitArgs oa;
  CLI::App* orbits = app.add_subcommand("orbits", "canonicalize or expand ray orbits");
  orbits->add_option("action", oa.action, "canonicalize | expand")->required();
  orbits->add_option("-n,--base", oa.n, "base-set size")->required();
  orbits->add_option("-i,--in", oa.in, "ray file")->required();
  orbits->add_option("-o,--out", oa.out, "output file")->required();
  orbits->add_flag("--annotate", oa.annotate, "append '# size weight' to canonicalized lines");

  BfsArgs ba;
  CLI::App* bfs = app.add_subcommand("bfs", "orbit-frontier search by repeated neighbor probes");
  bfs->add_option("-n,--base", ba.n, "base-set size")->required();
  bfs->add_option("--seeds", ba.seeds, "ray file with the starting rays")->required();
  bfs->add_option("--pool", ba.pool_out, "orbit pool output file")->required();
  bfs->add_option("--journal", ba.journal, "append-only probe journal");
  bfs->add_option("--order", ba.order, "insertion order for the probe enumerations")
      ->capture_default_str();
  bfs->add_option("--max-probes", ba.max_probes, "probe budget (0 = run to closure)");
  bfs->add_option("--max-weight", ba.max_weight, "never probe rays heavier than this");
  bfs->add_option("--depth", ba.depth, "recursive adjacency decomposition depth")
      ->capture_default_str();
  bfs->add_flag("--resume", ba.resume, "reload the pool and journal before searching");

  HarvestArgs ha;
  CLI::App* harvest = app.add_subcommand(
      "harvest", "collect rays of the full cone from an intermediate DD state");
  harvest->add_option("-n,--base", ha.n, "base-set size")->required();
  harvest->add_option("--order", ha.order, "insertion order")->capture_default_str();
  harvest->add_option("--stop-after", ha.stop_after, "intermediate state to harvest from")
      ->required();
  harvest->add_option("--rows", ha.rows, "next | all: cutting rows to try")
      ->capture_default_str();
  harvest->add_flag("--cstar", ha.cstar, "state is a C*-type cone: all pairs adjacent");
  harvest->add_option("-o,--out", ha.out, "ray file")->required();

  StatsArgs sa;
  CLI::App* stats = app.add_subcommand("stats", "weight or orbit-size histograms as CSV");
  stats->add_option("action", sa.action, "weights | orbit-sizes")->required();
  stats->add_option("-n,--base", sa.n, "base-set size (weights)");
  stats->add_option("-i,--in", sa.in, "ray file or orbit pool")->required();
  stats->add_option("-o,--out", sa.out, "CSV output")->required();

  EstimateArgs ea;
  CLI::App* estimate = app.add_subcommand("estimate", "capture-recapture orbit estimate");
  estimate->add_option("--pool-size", ea.pool_size, "orbits in the pool")->required();
  estimate->add_option("--probe", ea.probe, "orbits in the probe sample")->required();
  estimate->add_option("--overlap", ea.overlap, "probe orbits already in the pool")->required();
  estimate->add_option("--mean-orbit-size", ea.mean_orbit_size, "for the ray estimate");
  estimate->add_option("--sizes", ea.sizes_csv, "orbit-size CSV to derive the mean from");
  estimate->add_option("-o,--out", ea.out, "report file (default: stdout)");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "check extremality of every ray in a file");
  verify->add_option("-n,--base", va.n, "base-set size")->required();
  verify->add_option("-i,--in", va.in, "ray file")->required();

  SampleArgs sga;
  CLI::App* sample = app.add_subcommand("sample", "random rank-(d-1) extremal sampling");
  sample->add_option("-n,--base", sga.n, "base-set size")->required();
  sample->add_option("--seed", sga.seed, "RNG seed")->capture_default_str();
  sample->add_option("--attempts", sga.attempts, "number of attempts")->capture_default_str();
  sample->add_option("--near", sga.near_rays, "restrict to the support of a ray in this file");
  sample->add_option("--near-index", sga.near_index, "ray index within --near");
  sample->add_option("-o,--out", sga.out, "ray file")->required();

  ConvertArgs ca;
  CLI::App* convert = app.add_subcommand("convert", "convert rays between text and binary");
  convert->add_option("-n,--base", ca.n, "base-set size")->required();
  convert->add_option("-i,--in", ca.in, "input ray file")->required();
  convert->add_option("-o,--out", ca.out, "output ray file")->required();
  convert->add_flag("--to-binary", ca.to_binary, "write the compact binary format");

  CLI11_PARSE(app, argc, argv);

  try {
    if (matrix->parsed()) return cmd_matrix(g, ma);
    if (dd->parsed())
      return with_backend(g, [&]<class Z>() { return cmd_dd<Z>(g, da); });
    if (ddstep->parsed())
      return with_backend(g, [&]<class Z>() { return cmd_ddstep<Z>(g); });
    if (nb->parsed())
      return with_backend(g, [&]<class Z>() { return cmd_neighbors<Z>(g, na); });
    if (orbits->parsed())
      return with_backend(g, [&]<class Z>() { return cmd_orbits<Z>(g, oa); });
    if (bfs->parsed())
      return with_backend(g, [&]<class Z>() { return cmd_bfs<Z>(g, ba); });
    if (harvest->parsed())
      return with_backend(g, [&]<class Z>() { return cmd_harvest<Z>(g, ha); });
    if (stats->parsed())
      return with_backend(g, [&]<class Z>() { return cmd_stats<Z>(g, sa); });
    if (estimate->parsed()) return cmd_estimate(g, ea);
    if (verify->parsed())
      return with_backend(g, [&]<class Z>() { return cmd_verify<Z>(g, va); });
    if (sample->parsed())
      return with_backend(g, [&]<class Z>() { return cmd_sample<Z>(g, sga); });
    if (convert->parsed())
      return with_backend(g, [&]<class Z>() { return cmd_convert<Z>(g, ca); });
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << " (rerun with --backend big)\n";
    return kExitOverflow;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return 0;
}
