#pragma once

#include <utility>
#include <vector>

#include "rangekit/core.hpp"

// Exact solvers for the 1D MinRange problem: a cubic dynamic program,
// its quadratic midpoint refinement, and a generalized solver for
// arbitrary line-alike metrics.

namespace rangekit {

// Upper-triangular table of chained gap powers:
// sum(i,j) = sum over m in [i, j) of dist(v_m, v_{m+1})^alpha (0-based).
class SumTable {
 public:
  SumTable() = default;
  SumTable(int n, std::vector<double> gap_pow);

  int size() const { return n_; }
  // Requires 0 <= i <= j < n; sum(i,i) = 0.
  double sum(int i, int j) const { return table_[static_cast<size_t>(i) * n_ + j]; }
  double gap_pow(int i) const { return gap_pow_[i]; }

 private:
  int n_ = 0;
  std::vector<double> gap_pow_;
  std::vector<double> table_;
};

// Throws DimensionMismatch unless the instance is 1D with n >= 2.
SumTable build_sum_table(const Instance& inst);

// DP values T[i] plus the (k, k') choice that realized each of them
// (kBase marks the two-point base case).
struct DpTable {
  std::vector<double> cost;
  std::vector<std::pair<int, int>> choice;
  static constexpr int kBase = -1;
};

// Index k in (i, kprime) minimizing max{dist(i,k)^a, dist(k,kprime)^a},
// i.e. the point closest to the midpoint of segment (v_i, v_kprime);
// ties break toward the smaller index. Indices are 0-based.
int midpoint_split(const Instance& inst, int i, int kprime);

Solution solve_1d_cubic(const Instance& inst);
Solution solve_1d_quadratic(const Instance& inst);

// The cubic DP run against an arbitrary line-alike metric h in place
// of the Euclidean distance. Throws NotLineAlike.
Solution solve_line_alike(const DistanceMatrix& metric, double alpha);

}  // namespace rangekit
