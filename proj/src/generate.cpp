#include "rangekit/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rangekit {

namespace {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

PointDistribution parse_distribution(const std::string& name) {
  if (name == "uniform") return PointDistribution::kUniform;
  if (name == "clustered") return PointDistribution::kClustered;
  if (name == "collinear-noise") return PointDistribution::kCollinearNoise;
  throw BadParams("unknown distribution: " + name);
}

std::string distribution_name(PointDistribution dist) {
  switch (dist) {
    case PointDistribution::kUniform: return "uniform";
    case PointDistribution::kClustered: return "clustered";
    case PointDistribution::kCollinearNoise: return "collinear-noise";
  }
  return "?";
}

std::vector<std::vector<double>> generate_points(PointDistribution dist, int n, int dim,
                                                 uint64_t seed) {
  if (n < 1) throw BadParams("n must be >= 1");
  if (dim < 1 || dim > 3) throw BadParams("dimension must be 1, 2 or 3");
  Rng rng(seed);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim, 0.0));

  switch (dist) {
    case PointDistribution::kUniform:
      for (auto& p : pts)
        for (double& c : p) c = rng.uniform();
      break;
    case PointDistribution::kClustered: {
      const int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
      std::vector<std::vector<double>> centers(k, std::vector<double>(dim, 0.0));
      for (auto& c : centers)
        for (double& v : c) v = rng.uniform();
      for (int i = 0; i < n; ++i)
        for (int d = 0; d < dim; ++d) pts[i][d] = centers[i % k][d] + 0.05 * rng.gauss();
      break;
    }
    case PointDistribution::kCollinearNoise: {
      std::vector<double> xs(n);
      for (double& x : xs) x = rng.uniform();
      std::sort(xs.begin(), xs.end());
      for (int i = 0; i < n; ++i) {
        pts[i][0] = xs[i];
        for (int d = 1; d < dim; ++d) pts[i][d] = rng.uniform(-0.01, 0.01);
      }
      break;
    }
  }

  // Coincident draws have probability zero but would poison instances;
  // nudge the later point apart if the engine ever produces one.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool same = true;
      for (int d = 0; d < dim; ++d)
        if (pts[i][d] != pts[j][d]) same = false;
      if (same) pts[j][0] += 1e-9 * (j + 1);
    }
  return pts;
}

}  // namespace rangekit
