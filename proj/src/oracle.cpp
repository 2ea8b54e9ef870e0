#include "rangekit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rangekit {

std::vector<std::vector<double>> candidate_range_sets(const DistanceMatrix& metric) {
  const int n = metric.size();
  std::vector<std::vector<double>> cand(n);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u)
      if (u != v) cand[v].push_back(metric(v, u));
    std::sort(cand[v].begin(), cand[v].end());
    cand[v].erase(std::unique(cand[v].begin(), cand[v].end()), cand[v].end());
  }
  return cand;
}

namespace {

// Odometer enumeration over per-point candidate indices, ascending per
// point, with branch-and-bound: partial cost plus the sum of remaining
// per-point minima is pruned against the incumbent. `leaf_ok` performs
// the validity check on complete vectors.
template <class LeafOk>
OracleResult enumerate_min(const std::vector<std::vector<double>>& cand, double alpha,
                           LeafOk&& leaf_ok) {
  const int n = static_cast<int>(cand.size());
  std::vector<std::vector<double>> cand_pow(n);
  for (int v = 0; v < n; ++v) {
    cand_pow[v].resize(cand[v].size());
    for (size_t c = 0; c < cand[v].size(); ++c) cand_pow[v][c] = pow_alpha(cand[v][c], alpha);
  }
  std::vector<double> suffix_min(n + 1, 0.0);
  for (int v = n - 1; v >= 0; --v) suffix_min[v] = suffix_min[v + 1] + cand_pow[v].front();

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(n, 0), best_pick;
  std::vector<double> partial(n + 1, 0.0);
  RangeAssignment rho;
  rho.ranges.assign(n, 0.0);

  int v = 0;
  while (v >= 0) {
    if (pick[v] >= static_cast<int>(cand[v].size())) {
      pick[v] = 0;
      --v;
      if (v >= 0) ++pick[v];
      continue;
    }
    const double so_far = partial[v] + cand_pow[v][pick[v]];
    if (so_far + suffix_min[v + 1] >= best) {
      // Candidates are ascending, so the whole remaining row is pruned.
      pick[v] = 0;
      --v;
      if (v >= 0) ++pick[v];
      continue;
    }
    if (v == n - 1) {
      for (int u = 0; u < n; ++u) rho.ranges[u] = cand[u][pick[u]];
      if (leaf_ok(rho)) {
        best = so_far;
        best_pick = pick;
      }
      ++pick[v];
      continue;
    }
    partial[v + 1] = so_far;
    ++v;
  }

  if (best_pick.empty()) throw Error("brute force found no valid assignment");
  OracleResult result;
  result.cost = best;
  result.ranges.ranges.resize(n);
  for (int u = 0; u < n; ++u) result.ranges.ranges[u] = cand[u][best_pick[u]];
  return result;
}

}  // namespace

OracleResult brute_force_minrange(const DistanceMatrix& metric, double alpha, int cap) {
  metric.validate();
  const int n = metric.size();
  if (n > cap) throw TooLarge("instance exceeds the brute-force cap");
  if (n == 1) return {0.0, RangeAssignment{{0.0}}};
  const auto cand = candidate_range_sets(metric);
  return enumerate_min(cand, alpha, [&](const RangeAssignment& rho) {
    return is_strongly_connected(induced_graph(metric, rho));
  });
}

OracleResult brute_force_spanner(const Instance& inst, double alpha, double t, int cap) {
  if (inst.dimension != 1) throw DimensionMismatch("spanner oracle requires a 1D instance");
  const int n = inst.size();
  if (n > cap) throw TooLarge("instance exceeds the brute-force cap");
  if (n == 1) return {0.0, RangeAssignment{{0.0}}};
  const DistanceMatrix metric = DistanceMatrix::from_instance(inst);
  const auto cand = candidate_range_sets(metric);
  return enumerate_min(cand, alpha, [&](const RangeAssignment& rho) {
    const CommGraph g = induced_graph(metric, rho);
    return is_strongly_connected(g) && is_t_spanner(g, metric, t);
  });
}

}  // namespace rangekit
