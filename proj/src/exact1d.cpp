#include "rangekit/exact1d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace rangekit {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<double> adjacent_gap_pow(const Instance& inst) {
  const int n = inst.size();
  std::vector<double> g(n - 1);
  for (int i = 0; i + 1 < n; ++i) g[i] = pow_alpha(inst.distance(i, i + 1), inst.alpha);
  return g;
}

// Expands the (k, k') backpointers into a left-right assignment.
// The pattern per subproblem rooted at i: points i..k-1 chain right,
// the hill k covers [i, k'] to both sides, points k+1..k'-1 chain left,
// then the nested subproblem at k'-1 is expanded with its artificial
// first right-range suppressed (its cost was subtracted in the DP, and
// connectivity across that gap is supplied by the hill).
template <class Dist>
LeftRightAssignment expand_choices(int n, const DpTable& dp, Dist&& dist) {
  LeftRightAssignment lr;
  lr.left.assign(n, 0.0);
  lr.right.assign(n, 0.0);
  int i = 0;
  bool suppress_first_right = false;
  while (true) {
    if (i == n - 2) {
      if (!suppress_first_right) lr.right[i] = std::max(lr.right[i], dist(i, i + 1));
      lr.left[n - 1] = std::max(lr.left[n - 1], dist(n - 2, n - 1));
      break;
    }
    const auto [k, kp] = dp.choice[i];
    for (int m = i; m < k; ++m) {
      if (m == i && suppress_first_right) continue;
      lr.right[m] = std::max(lr.right[m], dist(m, m + 1));
    }
    lr.left[k] = std::max(lr.left[k], dist(i, k));
    lr.right[k] = std::max(lr.right[k], dist(k, kp));
    for (int m = k + 1; m <= kp - 1; ++m) lr.left[m] = std::max(lr.left[m], dist(m - 1, m));
    i = kp - 1;
    suppress_first_right = true;
  }
  return lr;
}

// The Lemma-4 recurrence: for each i the minimum over hills (k, k') of
//   sum(i, k'-1) + T[k'-1] - gap_pow(k'-1) + max{d(i,k)^a, d(k,k')^a}.
// `pick_k` returns the candidate k range for a given (i, k').
template <class Dist, class PickK>
DpTable run_dp(int n, const SumTable& sums, Dist&& dist_pow, PickK&& pick_k) {
  DpTable dp;
  dp.cost.assign(n - 1, 0.0);
  dp.choice.assign(n - 1, {DpTable::kBase, DpTable::kBase});
  dp.cost[n - 2] = 2.0 * sums.gap_pow(n - 2);
  for (int i = n - 3; i >= 0; --i) {
    double best = std::numeric_limits<double>::infinity();
    std::pair<int, int> best_choice{DpTable::kBase, DpTable::kBase};
    for (int kp = i + 2; kp <= n - 1; ++kp) {
      const double fixed = sums.sum(i, kp - 1) + dp.cost[kp - 1] - sums.gap_pow(kp - 1);
      const auto [k_lo, k_hi] = pick_k(i, kp);
      for (int k = k_lo; k <= k_hi; ++k) {
        const double value = fixed + std::max(dist_pow(i, k), dist_pow(k, kp));
        if (value < best) {
          best = value;
          best_choice = {k, kp};
        }
      }
    }
    dp.cost[i] = best;
    dp.choice[i] = best_choice;
  }
  return dp;
}

Solution trivial_solution(std::string algorithm, int n, Clock::time_point t0) {
  Solution sol;
  sol.algorithm = std::move(algorithm);
  sol.cost = 0.0;
  sol.ranges.ranges.assign(n, 0.0);
  sol.lr = LeftRightAssignment{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  sol.valid = true;
  sol.elapsed_ms = elapsed_ms_since(t0);
  return sol;
}

}  // namespace

SumTable::SumTable(int n, std::vector<double> gap_pow)
    : n_(n), gap_pow_(std::move(gap_pow)), table_(static_cast<size_t>(n) * n, 0.0) {
  // Filled per the three-case recurrence: the last column accumulates
  // upward, interior cells subtract the trailing gap.
  for (int i = n_ - 2; i >= 0; --i) {
    table_[static_cast<size_t>(i) * n_ + (n_ - 1)] =
        table_[static_cast<size_t>(i + 1) * n_ + (n_ - 1)] + gap_pow_[i];
    for (int j = n_ - 2; j > i; --j)
      table_[static_cast<size_t>(i) * n_ + j] =
          table_[static_cast<size_t>(i) * n_ + j + 1] - gap_pow_[j];
  }
}

SumTable build_sum_table(const Instance& inst) {
  if (inst.dimension != 1) throw DimensionMismatch("sum table requires a 1D instance");
  if (inst.size() < 2) throw DimensionMismatch("sum table requires n >= 2");
  return SumTable(inst.size(), adjacent_gap_pow(inst));
}

int midpoint_split(const Instance& inst, int i, int kprime) {
  if (inst.dimension != 1) throw DimensionMismatch("midpoint split requires a 1D instance");
  if (kprime <= i + 1) throw NoInteriorPoint("no interior point between i and k'");
  const double mid = 0.5 * (inst.x(i) + inst.x(kprime));
  // Binary search over the sorted interior coordinates.
  int lo = i + 1, hi = kprime - 1;
  while (lo < hi) {
    const int m = lo + (hi - lo) / 2;
    if (inst.x(m) < mid)
      lo = m + 1;
    else
      hi = m;
  }
  // lo is the first interior point with x >= mid (or the last interior
  // point); its left neighbor may be closer, ties go to the smaller index.
  if (lo > i + 1 && std::abs(inst.x(lo - 1) - mid) <= std::abs(inst.x(lo) - mid)) return lo - 1;
  return lo;
}

namespace {

Solution solve_euclidean_1d(const Instance& inst, bool quadratic) {
  const auto t0 = Clock::now();
  const char* name = quadratic ? "exact1d" : "exact1d-cubic";
  if (inst.dimension != 1) throw DimensionMismatch("1D solver requires a 1D instance");
  const int n = inst.size();
  if (n == 1) return trivial_solution(name, n, t0);

  const double alpha = inst.alpha;
  SumTable sums(n, adjacent_gap_pow(inst));
  DpTable dp;
  if (n == 2) {
    dp.cost = {2.0 * sums.gap_pow(0)};
    dp.choice = {{DpTable::kBase, DpTable::kBase}};
  } else if (quadratic) {
    const auto dist_pow = [&](int a, int b) { return pow_alpha(inst.x(b) - inst.x(a), alpha); };
    dp = run_dp(n, sums, dist_pow, [&](int i, int kp) {
      const int k = midpoint_split(inst, i, kp);
      return std::pair<int, int>{k, k};
    });
  } else {
    // Precomputed pair powers keep the inner loop branch-free; rows are
    // contiguous for both lookups thanks to symmetry.
    std::vector<double> pw(static_cast<size_t>(n) * n, 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double v = pow_alpha(inst.x(b) - inst.x(a), alpha);
        pw[static_cast<size_t>(a) * n + b] = v;
        pw[static_cast<size_t>(b) * n + a] = v;
      }
    const auto dist_pow = [&](int a, int b) { return pw[static_cast<size_t>(a) * n + b]; };
    dp = run_dp(n, sums, dist_pow, [&](int i, int kp) {
      return std::pair<int, int>{i + 1, kp - 1};
    });
  }

  const auto dist = [&](int a, int b) { return inst.x(b) - inst.x(a); };
  LeftRightAssignment lr = expand_choices(n, dp, dist);

  Solution sol;
  sol.algorithm = name;
  sol.cost = dp.cost[0];
  sol.lr = lr;
  sol.ranges = merge_lr(lr);
  sol.valid = is_strongly_connected(induced_graph_lr(inst, lr));
  const double recomputed = cost_lr(lr, alpha);
  if (std::abs(recomputed - sol.cost) >
      kRelTol * std::max({1.0, std::abs(recomputed), std::abs(sol.cost)}))
    throw Error("reconstructed assignment cost disagrees with DP value");
  sol.elapsed_ms = elapsed_ms_since(t0);
  return sol;
}

}  // namespace

Solution solve_1d_cubic(const Instance& inst) { return solve_euclidean_1d(inst, false); }

Solution solve_1d_quadratic(const Instance& inst) { return solve_euclidean_1d(inst, true); }

Solution solve_line_alike(const DistanceMatrix& metric, double alpha) {
  const auto t0 = Clock::now();
  metric.validate();
  if (!is_line_alike(metric)) throw NotLineAlike("metric violates the line-alike condition");
  const int n = metric.size();
  if (n == 1) return trivial_solution("line-alike", n, t0);

  std::vector<double> gap_pow(n - 1);
  for (int i = 0; i + 1 < n; ++i) gap_pow[i] = pow_alpha(metric(i, i + 1), alpha);
  SumTable sums(n, std::move(gap_pow));
  DpTable dp;
  if (n == 2) {
    dp.cost = {2.0 * sums.gap_pow(0)};
    dp.choice = {{DpTable::kBase, DpTable::kBase}};
  } else {
    // The midpoint shortcut presumes Euclidean geometry; with a general
    // h the inner minimizer is found by linear scan.
    const auto dist_pow = [&](int a, int b) { return pow_alpha(metric(a, b), alpha); };
    dp = run_dp(n, sums, dist_pow, [&](int i, int kp) {
      return std::pair<int, int>{i + 1, kp - 1};
    });
  }

  const auto dist = [&](int a, int b) { return metric(a, b); };
  LeftRightAssignment lr = expand_choices(n, dp, dist);

  Solution sol;
  sol.algorithm = "line-alike";
  sol.cost = dp.cost[0];
  sol.lr = lr;
  sol.ranges = merge_lr(lr);
  sol.valid = is_strongly_connected(induced_graph(metric, sol.ranges));
  const double recomputed = cost_lr(lr, alpha);
  if (std::abs(recomputed - sol.cost) >
      kRelTol * std::max({1.0, std::abs(recomputed), std::abs(sol.cost)}))
    throw Error("reconstructed assignment cost disagrees with DP value");
  sol.elapsed_ms = elapsed_ms_since(t0);
  return sol;
}

}  // namespace rangekit
