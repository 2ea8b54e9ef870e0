#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rangekit/core.hpp"

// Reproducible random instance generation. The generator is MT19937-64
// seeded directly with the given seed; uniforms take the top 53 bits
// ((x >> 11) * 2^-53) and Gaussians come from Box-Muller on those
// uniforms, so generated suites are stable across platforms and
// releases.

namespace rangekit {

enum class PointDistribution { kUniform, kClustered, kCollinearNoise };

PointDistribution parse_distribution(const std::string& name);
std::string distribution_name(PointDistribution dist);

// uniform: i.i.d. in [0,1]^dim.
// clustered: ceil(sqrt(n)) Gaussian blobs (sigma 0.05) around uniform centers.
// collinear-noise: sorted 1D abscissae with per-point perpendicular
// jitter <= 0.01 in every extra dimension.
std::vector<std::vector<double>> generate_points(PointDistribution dist, int n, int dim,
                                                 uint64_t seed);

}  // namespace rangekit
