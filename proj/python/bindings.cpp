// Python bindings for the main operations. Coordinates cross the boundary
// as Python ints (exact, arbitrary precision on the Python side).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subcone/explore.hpp"
#include "subcone/io.hpp"
#include "subcone/neighbors.hpp"

namespace py = pybind11;
using namespace subcone;

namespace {

py::int_ to_py(const Int128& v) {
  // via the decimal string so values beyond long long stay exact
  return py::int_(py::module_::import("builtins").attr("int")(z_str(v)));
}

py::list rays_to_py(const std::vector<std::vector<Int128>>& rays) {
  py::list out;
  for (const auto& r : rays) {
    py::list row;
    for (const Int128& v : r) row.append(to_py(v));
    out.append(row);
  }
  return out;
}

std::vector<Int128> ray_from_py(const py::sequence& seq) {
  std::vector<Int128> out;
  out.reserve(py::len(seq));
  for (py::handle h : seq) out.push_back(z_parse<Int128>(py::str(h).cast<std::string>()));
  return out;
}

OrderSpec order_by_name(const ConeSpec& spec, const std::string& kind,
                        std::optional<std::uint64_t> seed) {
  std::optional<OrderKind> k = order_kind_from_name(kind);
  if (!k) throw std::invalid_argument("unknown order kind: " + kind);
  switch (*k) {
    case OrderKind::kTOpt: return topt_order(spec);
    case OrderKind::kRecursive: return recursive_order(spec);
    case OrderKind::kLexMin: return lexmin_order(spec, seed);
    default: return dynamic_order(*k);
  }
}

}  // namespace

PYBIND11_MODULE(_subcone, m) {
  m.doc() = "Exact enumeration of the extremal rays of the submodular cone";

  m.def("coordinates", [](int n) {
    py::list out;
    for (std::uint32_t a : enumerate_coordinates(n)) out.append(a);
    return out;
  });

  m.def("triplets", [](int n) {
    py::list out;
    for (const Triplet& t : elementary_triplets(n)) out.append(py::make_tuple(t.i, t.j, t.K));
    return out;
  });

  m.def("matrix", [](int n) {
    ConeSpec spec = build_cone(n);
    py::list out;
    for (int r = 0; r < spec.m; ++r) {
      py::list row;
      for (int v : spec.dense_row(r)) row.append(v);
      out.append(row);
    }
    return out;
  });

  m.def("order", [](int n, const std::string& kind, std::optional<std::uint64_t> seed) {
    ConeSpec spec = build_cone(n);
    OrderSpec o = order_by_name(spec, kind, seed);
    py::list out;
    for (int rid : o.rows) {
      const Triplet& t = spec.triplets[rid];
      out.append(py::make_tuple(t.i, t.j, t.K));
    }
    return out;
  }, py::arg("n"), py::arg("kind") = "topt", py::arg("seed") = std::nullopt);

  m.def("f_j", [](int n, std::uint32_t J) {
    ConeSpec spec = build_cone(n);
    std::vector<std::vector<Int128>> one{f_j<Int128>(spec, J)};
    return rays_to_py(one)[0];
  });

  m.def("f_j_weight", &f_j_weight);

  m.def(
      "run_dd",
      [](int n, const std::string& order, std::optional<std::uint64_t> seed, size_t stop_after,
         int threads) {
        ConeSpec spec = build_cone(n);
        IneqSystem<Int128> sys = system_of<Int128>(spec);
        DdOptions opt;
        opt.threads = threads;
        RunResult<Int128> run = run_dd(sys, order_by_name(spec, order, seed), opt, stop_after);
        std::vector<std::vector<Int128>> coords;
        for (const auto& r : run.state.rays) coords.push_back(r.x);
        py::dict out;
        out["rays"] = rays_to_py(coords);
        py::list traj;
        for (auto [i, c] : run.trajectory) traj.append(py::make_tuple(i, c));
        out["trajectory"] = traj;
        out["partial"] = run.partial;
        return out;
      },
      py::arg("n"), py::arg("order") = "topt", py::arg("seed") = std::nullopt,
      py::arg("stop_after") = 0, py::arg("threads") = 1);

  m.def("verify_extremal", [](int n, const py::sequence& ray) {
    ConeSpec spec = build_cone(n);
    IneqSystem<Int128> sys = system_of<Int128>(spec);
    return verify_extremal(sys, ray_from_py(ray));
  });

  m.def("weight", [](int n, const py::sequence& ray) {
    ConeSpec spec = build_cone(n);
    IneqSystem<Int128> sys = system_of<Int128>(spec);
    return ray_weight(sys, ray_from_py(ray));
  });

  m.def("canonicalize", [](int n, const py::list& rays) {
    ConeSpec spec = build_cone(n);
    SymmetryTable tab = build_symmetry_table(spec);
    std::set<std::vector<Int128>> canon;
    for (py::handle r : rays) canon.insert(canonical_coords(tab, ray_from_py(py::cast<py::sequence>(r))));
    std::vector<std::vector<Int128>> out(canon.begin(), canon.end());
    return rays_to_py(out);
  });

  m.def("orbit_size", [](int n, const py::sequence& ray) {
    ConeSpec spec = build_cone(n);
    SymmetryTable tab = build_symmetry_table(spec);
    return orbit_expand(tab, ray_from_py(ray)).size();
  });

  m.def(
      "neighbors",
      [](int n, const py::sequence& ray, const std::string& order, int threads) {
        ConeSpec spec = build_cone(n);
        IneqSystem<Int128> sys = system_of<Int128>(spec);
        NeighborOptions opt;
        opt.threads = threads;
        NeighborResult<Int128> res =
            neighbors(sys, ray_from_py(ray), order_by_name(spec, order, {}), opt);
        return rays_to_py(res.rays);
      },
      py::arg("n"), py::arg("ray"), py::arg("order") = "topt", py::arg("threads") = 1);

  m.def(
      "capture_recapture",
      [](double pool, double probe, double overlap, double mean_orbit_size) {
        CaptureEstimate e = capture_recapture(pool, probe, overlap, mean_orbit_size);
        py::dict out;
        out["defined"] = e.defined;
        out["overlap_fraction"] = e.overlap_fraction;
        out["estimated_orbits"] = e.estimated_orbits;
        out["estimated_rays"] = e.estimated_rays;
        return out;
      },
      py::arg("pool"), py::arg("probe"), py::arg("overlap"), py::arg("mean_orbit_size") = 0.0);
}
