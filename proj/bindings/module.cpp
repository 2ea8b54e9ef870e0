#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rangekit/approx.hpp"
#include "rangekit/core.hpp"
#include "rangekit/exact1d.hpp"
#include "rangekit/generate.hpp"
#include "rangekit/oracle.hpp"
#include "rangekit/spanner1d.hpp"

namespace py = pybind11;
using namespace rangekit;

namespace {

Instance build_instance(const std::vector<std::vector<double>>& points, int dimension,
                        double alpha) {
  return canonicalize(points, dimension, alpha);
}

py::dict solution_dict(const Solution& sol, const Instance& inst) {
  py::dict d;
  d["algorithm"] = sol.algorithm;
  d["cost"] = sol.cost;
  std::vector<double> ranges(inst.size(), 0.0);
  for (int k = 0; k < inst.size(); ++k) ranges[inst.input_index[k]] = sol.ranges.ranges[k];
  d["ranges"] = ranges;
  d["valid"] = sol.valid;
  if (sol.t)
    d["t"] = *sol.t;
  else
    d["t"] = py::none();
  py::dict params;
  for (const auto& [key, value] : sol.params) params[py::str(key)] = value;
  if (sol.fallback) params["fallback"] = 1.0;
  d["params"] = params;
  d["elapsed_ms"] = sol.elapsed_ms;
  return d;
}

py::dict run(const std::string& alg, const std::vector<std::vector<double>>& points,
             int dimension, double alpha, py::object t, py::object cap) {
  const Instance inst = build_instance(points, dimension, alpha);
  Solution sol;
  if (alg == "exact1d") {
    sol = solve_1d_quadratic(inst);
  } else if (alg == "exact1d-cubic") {
    sol = solve_1d_cubic(inst);
  } else if (alg == "spanner1d") {
    if (t.is_none()) throw BadParams("spanner1d requires t");
    sol = solve_1d_spanner(inst, t.cast<double>(),
                           cap.is_none() ? kSpannerDefaultCap : cap.cast<int>());
  } else if (alg == "approx") {
    sol = solve_approx(inst, cap.is_none() ? kApproxDefaultCap : cap.cast<int>());
  } else if (alg == "hub") {
    const Candidate cand = hub_solution(inst, euclidean_mst(inst));
    sol.algorithm = "hub";
    sol.cost = cand.cost;
    sol.ranges = cand.ranges;
    sol.valid = cand.valid;
    sol.params = cand.params;
  } else if (alg == "brute") {
    const auto res = brute_force_minrange(DistanceMatrix::from_instance(inst), alpha,
                                          cap.is_none() ? kBruteMinRangeCap : cap.cast<int>());
    sol.algorithm = "brute";
    sol.cost = res.cost;
    sol.ranges = res.ranges;
    sol.valid = true;
  } else if (alg == "brute-spanner") {
    if (t.is_none()) throw BadParams("brute-spanner requires t");
    const auto res = brute_force_spanner(inst, alpha, t.cast<double>(),
                                         cap.is_none() ? kBruteSpannerCap : cap.cast<int>());
    sol.algorithm = "brute-spanner";
    sol.cost = res.cost;
    sol.ranges = res.ranges;
    sol.valid = true;
    sol.t = t.cast<double>();
  } else {
    throw BadParams("unknown algorithm: " + alg);
  }
  return solution_dict(sol, inst);
}

bool check_valid(const std::vector<std::vector<double>>& points, int dimension,
                 const std::vector<double>& ranges, py::object t) {
  const Instance inst = build_instance(points, dimension, 1.0);
  RangeAssignment rho;
  rho.ranges.assign(inst.size(), 0.0);
  for (int k = 0; k < inst.size(); ++k) rho.ranges[k] = ranges[inst.input_index[k]];
  const DistanceMatrix m = DistanceMatrix::from_instance(inst);
  const CommGraph g = induced_graph(m, rho);
  if (!is_strongly_connected(g)) return false;
  if (!t.is_none()) return is_t_spanner(g, m, t.cast<double>());
  return true;
}

double assignment_cost(const std::vector<double>& ranges, double alpha) {
  RangeAssignment rho;
  rho.ranges = ranges;
  return cost(rho, alpha);
}

std::vector<std::vector<double>> gen_points(const std::string& dist, int n, int dim,
                                            uint64_t seed) {
  return generate_points(parse_distribution(dist), n, dim, seed);
}

}  // namespace

PYBIND11_MODULE(_rangekit, m) {
  m.doc() = "Minimum-cost range assignment solvers (exact 1D, 1D t-spanner, d>=2 approximation)";

  py::register_exception<Error>(m, "RangekitError");

  m.def("solve", &run, py::arg("alg"), py::arg("points"), py::arg("dimension"),
        py::arg("alpha") = 1.0, py::arg("t") = py::none(), py::arg("cap") = py::none(),
        "Solve an instance; returns a dict mirroring the CLI solution file");
  m.def("is_valid_assignment", &check_valid, py::arg("points"), py::arg("dimension"),
        py::arg("ranges"), py::arg("t") = py::none(),
        "Strong connectivity (and optional t-spanner) check of an assignment");
  m.def("cost", &assignment_cost, py::arg("ranges"), py::arg("alpha") = 1.0);
  m.def("forced_chain_cost", [](const std::vector<std::vector<double>>& points, double alpha) {
    return forced_chain_cost(build_instance(points, 1, alpha));
  }, py::arg("points"), py::arg("alpha") = 1.0);
  m.def("generate_points", &gen_points, py::arg("dist"), py::arg("n"), py::arg("dim"),
        py::arg("seed"), "Deterministic instance generation (uniform | clustered | collinear-noise)");
  m.def("mst_weight", [](const std::vector<std::vector<double>>& points, int dimension) {
    const Instance inst = build_instance(points, dimension, 1.0);
    return euclidean_mst(inst).total_weight();
  }, py::arg("points"), py::arg("dimension"));
}
