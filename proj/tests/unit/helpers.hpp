#pragma once

#include <random>
#include <vector>

#include "rangekit/core.hpp"

// Shared fixtures from the test plan:
//   F2 = 1D (0, 5); F3 = 1D (0, 1, 3); F4 = 1D (0, 1, 2, 3);
//   SQ = unit-square corners; HILL = 2D path
//   (0,0),(1,0),(1,3),(2,3),(2,0),(3,0) in that order.

namespace testutil {

inline rangekit::Instance make_1d(const std::vector<double>& xs, double alpha = 1.0) {
  std::vector<std::vector<double>> raw;
  for (double x : xs) raw.push_back({x});
  return rangekit::canonicalize(raw, 1, alpha);
}

inline rangekit::Instance make_2d(const std::vector<std::pair<double, double>>& pts,
                                  double alpha = 1.0) {
  std::vector<std::vector<double>> raw;
  for (const auto& [x, y] : pts) raw.push_back({x, y});
  return rangekit::canonicalize(raw, 2, alpha);
}

inline rangekit::Instance f2(double alpha = 1.0) { return make_1d({0, 5}, alpha); }
inline rangekit::Instance f3(double alpha = 1.0) { return make_1d({0, 1, 3}, alpha); }
inline rangekit::Instance f4(double alpha = 1.0) { return make_1d({0, 1, 2, 3}, alpha); }
inline rangekit::Instance sq(double alpha = 1.0) {
  return make_2d({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, alpha);
}
inline std::vector<std::pair<double, double>> hill_points() {
  return {{0, 0}, {1, 0}, {1, 3}, {2, 3}, {2, 0}, {3, 0}};
}

// Random strictly-increasing 1D coordinates in [0, span].
inline std::vector<double> random_coords(std::mt19937_64& rng, int n, double span = 10.0) {
  std::uniform_real_distribution<double> u(0.0, span);
  std::vector<double> xs(n);
  while (true) {
    for (double& x : xs) x = u(rng);
    std::sort(xs.begin(), xs.end());
    bool distinct = true;
    for (int i = 0; i + 1 < n; ++i)
      if (!(xs[i] < xs[i + 1])) distinct = false;
    if (distinct) return xs;
  }
}

inline rangekit::Instance random_1d(std::mt19937_64& rng, int n, double alpha = 1.0,
                                    double span = 10.0) {
  return make_1d(random_coords(rng, n, span), alpha);
}

inline rangekit::Instance random_2d(std::mt19937_64& rng, int n, double alpha = 1.0,
                                    double span = 10.0) {
  std::uniform_real_distribution<double> u(0.0, span);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& [x, y] : pts) {
    x = u(rng);
    y = u(rng);
  }
  return make_2d(pts, alpha);
}

}  // namespace testutil
