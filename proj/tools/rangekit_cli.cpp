// Command-line front end: instance generation, solving, verification
// and benchmarking over the stable JSON/CSV formats.
//
// Exit codes: 0 success, 1 bad input, 2 algorithm/instance
// incompatibility, 3 enumeration cap exceeded.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rangekit/approx.hpp"
#include "rangekit/core.hpp"
#include "rangekit/exact1d.hpp"
#include "rangekit/generate.hpp"
#include "rangekit/io.hpp"
#include "rangekit/oracle.hpp"
#include "rangekit/spanner1d.hpp"

namespace {

using namespace rangekit;

constexpr int kExitBadInput = 1;
constexpr int kExitIncompatible = 2;
constexpr int kExitCapExceeded = 3;

int env_cap(int fallback) {
  if (const char* env = std::getenv("RANGEKIT_CAP")) {
    try {
      return std::stoi(env);
    } catch (...) {
      return fallback;
    }
  }
  return fallback;
}

int resolve_cap(std::optional<int> flag, int def) { return flag ? *flag : env_cap(def); }

struct SolveSpec {
  std::string alg;
  std::string in;
  std::string out;
  std::optional<double> alpha;
  std::optional<double> t;
  std::optional<int> cap;
};

bool needs_t(const std::string& alg) { return alg == "spanner1d" || alg == "brute-spanner"; }

Solution dispatch(const std::string& alg, const Instance& inst, std::optional<double> t,
                  std::optional<int> cap_flag) {
  if (alg == "exact1d") return solve_1d_quadratic(inst);
  if (alg == "exact1d-cubic") return solve_1d_cubic(inst);
  if (alg == "spanner1d")
    return solve_1d_spanner(inst, *t, resolve_cap(cap_flag, kSpannerDefaultCap));
  if (alg == "approx") return solve_approx(inst, resolve_cap(cap_flag, kApproxDefaultCap));
  if (alg == "hub") {
    const Tree mst = euclidean_mst(inst);
    const Candidate cand = hub_solution(inst, mst);
    Solution sol;
    sol.algorithm = "hub";
    sol.cost = cand.cost;
    sol.ranges = cand.ranges;
    sol.valid = cand.valid;
    sol.params = cand.params;
    return sol;
  }
  if (alg == "brute") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = brute_force_minrange(DistanceMatrix::from_instance(inst), inst.alpha,
                                          resolve_cap(cap_flag, kBruteMinRangeCap));
    Solution sol;
    sol.algorithm = "brute";
    sol.cost = res.cost;
    sol.ranges = res.ranges;
    sol.valid = true;
    sol.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return sol;
  }
  if (alg == "brute-spanner") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto res =
        brute_force_spanner(inst, inst.alpha, *t, resolve_cap(cap_flag, kBruteSpannerCap));
    Solution sol;
    sol.algorithm = "brute-spanner";
    sol.cost = res.cost;
    sol.ranges = res.ranges;
    sol.valid = true;
    sol.t = *t;
    sol.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return sol;
  }
  throw BadParams("unknown algorithm: " + alg);
}

// Independent re-verification of a produced assignment (file order).
bool verify_ranges(const Instance& inst, const std::vector<double>& ranges_file_order,
                   std::optional<double> t) {
  RangeAssignment rho;
  rho.ranges.assign(inst.size(), 0.0);
  for (int k = 0; k < inst.size(); ++k) rho.ranges[k] = ranges_file_order[inst.input_index[k]];
  const DistanceMatrix m = DistanceMatrix::from_instance(inst);
  const CommGraph g = induced_graph(m, rho);
  if (!is_strongly_connected(g)) return false;
  if (t) return is_t_spanner(g, m, *t);
  return true;
}

int cmd_solve(const SolveSpec& spec) {
  InstanceFile file;
  try {
    file = read_instance_file(spec.in);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  if (spec.alpha) file.alpha = *spec.alpha;
  if (needs_t(spec.alg) && !spec.t) {
    std::cerr << "error: " << spec.alg << " requires --t\n";
    return kExitBadInput;
  }

  Instance inst;
  try {
    inst = canonicalize(file.points, file.dimension, file.alpha);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  Solution sol;
  try {
    sol = dispatch(spec.alg, inst, spec.t, spec.cap);
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIncompatible;
  } catch (const AlphaUnsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIncompatible;
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  SolutionFile out = solution_to_file(sol, inst);
  out.valid = verify_ranges(inst, out.ranges, sol.t);
  try {
    write_solution_file(spec.out, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  std::cout << "algorithm=" << out.algorithm << " cost=" << out.cost
            << " valid=" << (out.valid ? "true" : "false") << "\n";
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path,
               std::optional<double> t) {
  InstanceFile ifile;
  SolutionFile sfile;
  try {
    ifile = read_instance_file(instance_path);
    sfile = read_solution_file(solution_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  Instance inst;
  try {
    inst = canonicalize(ifile.points, ifile.dimension, ifile.alpha);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  if (static_cast<int>(sfile.ranges.size()) != inst.size()) {
    std::cerr << "error: range count does not match instance size\n";
    return kExitBadInput;
  }

  bool ok = true;
  RangeAssignment rho;
  rho.ranges.assign(inst.size(), 0.0);
  for (int k = 0; k < inst.size(); ++k) rho.ranges[k] = sfile.ranges[inst.input_index[k]];

  const double recomputed = cost(rho, inst.alpha);
  const bool cost_ok =
      std::abs(recomputed - sfile.cost) <= 1e-9 * std::max(1.0, std::abs(recomputed));
  std::cout << "cost: " << (cost_ok ? "pass" : "fail") << " (recomputed " << recomputed << ")\n";
  ok = ok && cost_ok;

  const DistanceMatrix m = DistanceMatrix::from_instance(inst);
  const CommGraph g = induced_graph(m, rho);
  const bool connected = is_strongly_connected(g);
  std::cout << "connectivity: " << (connected ? "pass" : "fail") << "\n";
  ok = ok && connected;

  if (t) {
    const bool spanner = is_t_spanner(g, m, *t);
    std::cout << "spanner(t=" << *t << "): " << (spanner ? "pass" : "fail") << "\n";
    ok = ok && spanner;
  }
  return ok ? 0 : 2;
}

int cmd_bench(const std::vector<std::string>& algs, const std::vector<int>& sizes,
              const std::vector<uint64_t>& seeds, const std::string& dist_name, int dim,
              double alpha, std::optional<double> t, std::optional<int> cap,
              const std::string& out_path) {
  PointDistribution dist;
  try {
    dist = parse_distribution(dist_name);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  std::ostringstream csv;
  csv << "alg,n,dim,alpha,t,seed,cost,valid,elapsed_ms,status\n";
  for (const std::string& alg : algs)
    for (int n : sizes)
      for (uint64_t seed : seeds) {
        csv << alg << "," << n << "," << dim << "," << alpha << ","
            << (t ? std::to_string(*t) : std::string("")) << "," << seed << ",";
        try {
          const auto pts = generate_points(dist, n, dim, seed);
          const Instance inst = canonicalize(pts, dim, alpha);
          const auto t0 = std::chrono::steady_clock::now();
          Solution sol = dispatch(alg, inst, t, cap);
          const double ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
          csv << sol.cost << "," << (sol.valid ? "true" : "false") << "," << ms << ",ok\n";
        } catch (const Error& e) {
          csv << ",,," << "error: " << e.what() << "\n";
        }
      }
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitBadInput;
    }
    out << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rangekit: minimum-cost range assignment solvers"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance file");
  std::string gen_dist = "uniform";
  int gen_n = 10, gen_dim = 2;
  uint64_t gen_seed = 0;
  double gen_alpha = 1.0;
  std::string gen_out;
  gen->add_option("--dist", gen_dist, "uniform | clustered | collinear-noise");
  gen->add_option("--n", gen_n, "number of points")->required();
  gen->add_option("--dim", gen_dim, "dimension (1-3)");
  gen->add_option("--seed", gen_seed, "64-bit seed");
  gen->add_option("--alpha", gen_alpha, "path-loss exponent");
  gen->add_option("--out", gen_out, "output file")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  SolveSpec spec;
  double solve_alpha = 0.0, solve_t = 0.0;
  int solve_cap = 0;
  solve->add_option("--alg", spec.alg,
                    "exact1d | exact1d-cubic | spanner1d | hub | approx | brute | brute-spanner")
      ->required();
  solve->add_option("--in", spec.in, "instance file")->required();
  solve->add_option("--out", spec.out, "solution file")->required();
  auto* alpha_opt = solve->add_option("--alpha", solve_alpha, "override the instance alpha");
  auto* t_opt = solve->add_option("--t", solve_t, "stretch bound for spanner algorithms");
  auto* cap_opt = solve->add_option("--cap", solve_cap, "enumeration cap override");

  // verify
  auto* verify = app.add_subcommand("verify", "Re-verify a solution file");
  std::string verify_instance, verify_solution;
  double verify_t = 0.0;
  verify->add_option("--instance", verify_instance, "instance file")->required();
  verify->add_option("--solution", verify_solution, "solution file")->required();
  auto* verify_t_opt = verify->add_option("--t", verify_t, "also check the t-spanner property");

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmark algorithms to CSV");
  std::vector<std::string> bench_algs;
  std::vector<int> bench_sizes;
  std::vector<uint64_t> bench_seeds{1};
  std::string bench_dist = "uniform", bench_out;
  int bench_dim = 1;
  double bench_alpha = 1.0, bench_t = 0.0;
  int bench_cap = 0;
  bench->add_option("--algs", bench_algs, "algorithms to run")->required()->delimiter(',');
  bench->add_option("--sizes", bench_sizes, "instance sizes")->delimiter(',');
  bench->add_option("--seeds", bench_seeds, "seeds")->delimiter(',');
  bench->add_option("--dist", bench_dist, "point distribution");
  bench->add_option("--dim", bench_dim, "dimension");
  bench->add_option("--alpha", bench_alpha, "path-loss exponent");
  auto* bench_t_opt = bench->add_option("--t", bench_t, "stretch bound");
  auto* bench_cap_opt = bench->add_option("--cap", bench_cap, "enumeration cap override");
  bench->add_option("--out", bench_out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (gen->parsed()) {
      InstanceFile file;
      file.dimension = gen_dim;
      file.alpha = gen_alpha;
      try {
        file.points = generate_points(parse_distribution(gen_dist), gen_n, gen_dim, gen_seed);
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
      }
      write_instance_file(gen_out, file);
      std::cout << "wrote " << gen_out << " (" << gen_n << " points)\n";
      return 0;
    }
    if (solve->parsed()) {
      if (*alpha_opt) spec.alpha = solve_alpha;
      if (*t_opt) spec.t = solve_t;
      if (*cap_opt) spec.cap = solve_cap;
      return cmd_solve(spec);
    }
    if (verify->parsed()) {
      std::optional<double> t;
      if (*verify_t_opt) t = verify_t;
      return cmd_verify(verify_instance, verify_solution, t);
    }
    if (bench->parsed()) {
      std::optional<double> t;
      std::optional<int> cap;
      if (*bench_t_opt) t = bench_t;
      if (*bench_cap_opt) cap = bench_cap;
      return cmd_bench(bench_algs, bench_sizes, bench_seeds, bench_dist, bench_dim, bench_alpha,
                       t, cap, bench_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
