#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rangekit/exact1d.hpp"
#include "rangekit/oracle.hpp"
#include "rangekit/spanner1d.hpp"

using namespace rangekit;
using namespace testutil;

namespace {

// Exhaustive subproblem oracle: enumerates left-right assignments over
// the window [i, j] and treats the key's external-path lengths as
// virtual arcs. Requires a t-spanning path in both directions for every
// consecutive pair inside the window.
double subproblem_oracle(const Instance& inst, double t, const SpannerKey& key) {
  const int i = key.i, j = key.j, w = j - i + 1;
  const double tol = inst.tolerance();
  std::vector<std::vector<double>> lcand(w), rcand(w);
  for (int m = 0; m < w; ++m) {
    lcand[m].push_back(0.0);
    rcand[m].push_back(0.0);
    for (int q = 0; q < w; ++q) {
      if (q < m) lcand[m].push_back(inst.x(i + m) - inst.x(i + q));
      if (q > m) rcand[m].push_back(inst.x(i + q) - inst.x(i + m));
    }
  }
  const double di_eff = key.di == kEmptyDelta ? key.fwd : key.di;

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> lpick(w, 0), rpick(w, 0);
  const auto evaluate = [&]() {
    std::vector<std::vector<double>> d(w, std::vector<double>(w, kInfLen));
    for (int a = 0; a < w; ++a) d[a][a] = 0.0;
    for (int a = 0; a < w; ++a)
      for (int b = 0; b < w; ++b) {
        if (a == b) continue;
        const double gap = std::abs(inst.x(i + a) - inst.x(i + b));
        const double reach = b > a ? rcand[a][rpick[a]] : lcand[a][lpick[a]];
        if (reach >= gap - tol) d[a][b] = std::min(d[a][b], gap);
      }
    if (std::isfinite(key.fwd)) d[0][w - 1] = std::min(d[0][w - 1], key.fwd);
    if (std::isfinite(key.bwd)) d[w - 1][0] = std::min(d[w - 1][0], key.bwd);
    if (std::isfinite(di_eff) && w > 1) d[0][1] = std::min(d[0][1], di_eff);
    for (int k = 0; k < w; ++k)
      for (int a = 0; a < w; ++a)
        for (int b = 0; b < w; ++b) d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);
    for (int a = 0; a + 1 < w; ++a) {
      const double gap = inst.x(i + a + 1) - inst.x(i + a);
      if (d[a][a + 1] > t * gap + tol) return;
      if (d[a + 1][a] > t * gap + tol) return;
    }
    double c = 0.0;
    for (int a = 0; a < w; ++a)
      c += pow_alpha(std::max(lcand[a][lpick[a]], rcand[a][rpick[a]]), inst.alpha);
    best = std::min(best, c);
  };

  // Odometer over all (left, right) candidate combinations.
  while (true) {
    evaluate();
    int pos = 0;
    for (; pos < 2 * w; ++pos) {
      auto& pick = pos < w ? lpick[pos] : rpick[pos - w];
      const auto& cand = pos < w ? lcand[pos] : rcand[pos - w];
      if (++pick < static_cast<int>(cand.size())) break;
      pick = 0;
    }
    if (pos == 2 * w) break;
  }
  return best;
}

}  // namespace

TEST_CASE("two points force mutual edges for any t") {
  for (double t : {1.0, 2.0, 1e9}) {
    const Solution sol = solve_1d_spanner(f2(), t);
    CHECK(sol.cost == doctest::Approx(10));
    CHECK(sol.valid);
  }
}

TEST_CASE("t = 1 forces the chain on F3") {
  const Solution sol = solve_1d_spanner(f3(), 1.0);
  CHECK(sol.cost == doctest::Approx(5));
  CHECK(sol.cost == doctest::Approx(forced_chain_cost(f3())));
  CHECK(sol.valid);
}

TEST_CASE("a vacuous stretch bound reduces to the plain 1D problem") {
  const Solution sol = solve_1d_spanner(f3(), 1e9);
  CHECK(sol.cost == doctest::Approx(5));
  CHECK(sol.cost == doctest::Approx(solve_1d_quadratic(f3()).cost));
}

TEST_CASE("spanner base-case subproblems") {
  const Instance two = f2();
  // Both external routes missing: pay both directions.
  {
    SpannerContext ctx(two, 2.0);
    CHECK(ctx.subproblem(ctx.make_key(0, 1, kInfLen, kInfLen, kEmptyDelta)) ==
          doctest::Approx(10));
  }
  // Forward route within stretch (4/5 <= 2), backward route not (20/5 > 2).
  {
    SpannerContext ctx(two, 2.0);
    CHECK(ctx.subproblem(ctx.make_key(0, 1, 4.0, 20.0, kEmptyDelta)) == doctest::Approx(5));
  }
}

TEST_CASE("spanner subproblem matches the exhaustive mini-solver on F3") {
  for (double t : {1.0, 1.5, 2.0, 5.0}) {
    for (double alpha : {1.0, 2.0}) {
      const Instance inst = f3(alpha);  // kept alive alongside the context
      SpannerContext ctx(inst, t);
      const SpannerKey root = ctx.make_key(0, 2, kInfLen, kInfLen, kEmptyDelta);
      CHECK(ctx.subproblem(root) == doctest::Approx(subproblem_oracle(inst, t, root)));
    }
  }
}

TEST_CASE("forced_chain_cost fixtures") {
  CHECK(forced_chain_cost(f3()) == doctest::Approx(5));
  CHECK(forced_chain_cost(f4()) == doctest::Approx(4));
  CHECK(forced_chain_cost(f2(2.0)) == doctest::Approx(50));
}

TEST_CASE("spanner solver equals the brute-force oracle on small instances") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const double alpha = 1.0 + (trial % 2);
    const Instance inst = random_1d(rng, n, alpha);
    for (double t : {1.0, 1.1, 1.5, 2.0, 5.0}) {
      const Solution sol = solve_1d_spanner(inst, t);
      const auto oracle = brute_force_spanner(inst, alpha, t);
      CAPTURE(n);
      CAPTURE(t);
      CAPTURE(alpha);
      CHECK(sol.cost == doctest::Approx(oracle.cost).epsilon(1e-9));
      CHECK(sol.valid);
    }
  }
}

TEST_CASE("spanner cost is monotone in t and dominates the unconstrained optimum") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const Instance inst = random_1d(rng, n);
    const double unconstrained = solve_1d_quadratic(inst).cost;
    double prev = std::numeric_limits<double>::infinity();
    for (double t : {1.0, 1.2, 1.5, 2.0, 4.0, 1e9}) {
      const double c = solve_1d_spanner(inst, t).cost;
      CHECK(c <= prev + 1e-9);
      CHECK(c >= unconstrained - 1e-9);
      prev = c;
    }
    CHECK(solve_1d_spanner(inst, 1e9).cost == doctest::Approx(unconstrained).epsilon(1e-9));
    CHECK(solve_1d_spanner(inst, 1.0).cost ==
          doctest::Approx(forced_chain_cost(inst)).epsilon(1e-9));
  }
}

TEST_CASE("spanner output always passes connectivity and the stretch check") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const Instance inst = random_1d(rng, n);
    for (double t : {1.0, 1.5, 3.0}) {
      const Solution sol = solve_1d_spanner(inst, t);
      REQUIRE(sol.lr.has_value());
      const CommGraph g = induced_graph_lr(inst, *sol.lr);
      CHECK(is_strongly_connected(g));
      CHECK(is_t_spanner(g, DistanceMatrix::from_instance(inst), t));
    }
  }
}

TEST_CASE("spanner solver enforces its cap") {
  std::mt19937_64 rng(103);
  const Instance inst = random_1d(rng, 30);
  CHECK_THROWS_AS(solve_1d_spanner(inst, 2.0, 25), TooLarge);
}
