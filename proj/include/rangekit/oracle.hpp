#pragma once

#include <vector>

#include "rangekit/core.hpp"

// Exponential brute-force exact solvers used as ground truth in tests
// and via the CLI for small n. Their only virtue is obvious correctness.

namespace rangekit {

inline constexpr int kBruteMinRangeCap = 9;
inline constexpr int kBruteSpannerCap = 7;

struct OracleResult {
  double cost = 0.0;
  RangeAssignment ranges;
};

// Per-point sorted candidate radii {dist(v,u) : u != v}; optimal ranges
// are always inter-point distances, so the search is restricted to them.
std::vector<std::vector<double>> candidate_range_sets(const DistanceMatrix& metric);

// Exact minimum cost over candidate-range vectors whose induced graph
// is strongly connected. Throws TooLarge for n above the cap.
OracleResult brute_force_minrange(const DistanceMatrix& metric, double alpha,
                                  int cap = kBruteMinRangeCap);

// Same, additionally requiring the induced graph to be a t-spanner.
OracleResult brute_force_spanner(const Instance& inst, double alpha, double t,
                                 int cap = kBruteSpannerCap);

}  // namespace rangekit
