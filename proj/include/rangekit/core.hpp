#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core primitives shared by every solver: instances, metrics, range
// assignments, induced communication graphs, connectivity and spanner
// verification, cost functions.

namespace rangekit {

// All >=/<= comparisons on lengths use an absolute tolerance of
// kRelTol times the instance (or metric) diameter.
inline constexpr double kRelTol = 1e-9;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicatePoint : Error { using Error::Error; };
struct NonFiniteCoordinate : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NoInteriorPoint : Error { using Error::Error; };
struct NotLineAlike : Error { using Error::Error; };
struct RecursionDepthExceeded : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct PathNotInTree : Error { using Error::Error; };
struct IndexOutOfSide : Error { using Error::Error; };
struct BadIndices : Error { using Error::Error; };
struct AlphaUnsupported : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };

// x^alpha with exact handling of the common integer exponents.
double pow_alpha(double x, double alpha);

using Point = std::array<double, 3>;

// A set of stations. 1D instances are kept in canonical (sorted)
// order; input_index maps canonical position -> original position.
struct Instance {
  int dimension = 1;
  double alpha = 1.0;
  std::vector<Point> points;
  std::vector<int> input_index;

  int size() const { return static_cast<int>(points.size()); }
  double x(int i) const { return points[i][0]; }
  double distance(int i, int j) const;
  double diameter() const;
  double tolerance() const { return kRelTol * diameter(); }
};

Instance canonicalize(const std::vector<std::vector<double>>& raw_points,
                      int dimension, double alpha);

struct RangeAssignment {
  std::vector<double> ranges;
  int size() const { return static_cast<int>(ranges.size()); }
};

// 1D variant: separate reach to the left and to the right per point.
struct LeftRightAssignment {
  std::vector<double> left;
  std::vector<double> right;
  int size() const { return static_cast<int>(left.size()); }
};

// Symmetric pairwise distances. Also carries arbitrary line-alike
// metrics such as h_S, which need not satisfy the triangle inequality.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<size_t>(n) * n, 0.0) {}

  static DistanceMatrix from_instance(const Instance& inst);

  double operator()(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, double v) {
    d_[static_cast<size_t>(i) * n_ + j] = v;
    d_[static_cast<size_t>(j) * n_ + i] = v;
  }
  int size() const { return n_; }
  double diameter() const;
  double tolerance() const { return kRelTol * diameter(); }
  // Throws if the matrix is not symmetric / zero-diagonal / positive
  // off-diagonal.
  void validate() const;

 private:
  int n_ = 0;
  std::vector<double> d_;
};

// Directed communication graph with per-edge metric lengths.
struct CommGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> out;

  bool has_edge(int u, int v) const;
  int edge_count() const;
};

// Edge (u,v) present iff rho(u) >= dist(u,v) - tol.
CommGraph induced_graph(const DistanceMatrix& metric, const RangeAssignment& rho);

// Directional rule: (v_i,v_j) present iff j>i and |v_i v_j| <= rho_r(v_i),
// or j<i and |v_i v_j| <= rho_l(v_i).
CommGraph induced_graph_lr(const Instance& inst, const LeftRightAssignment& lr);

bool is_strongly_connected(const CommGraph& g);

// All-pairs shortest paths over the induced graph; true iff
// delta(u,v) <= t * dist(u,v) + tol for every ordered pair.
// t = +infinity degenerates to the strong-connectivity check.
bool is_t_spanner(const CommGraph& g, const DistanceMatrix& metric, double t);

double cost(const RangeAssignment& rho, double alpha);
double cost_lr(const LeftRightAssignment& lr, double alpha);
// Secondary objective: sum of (rho_l^alpha + rho_r^alpha).
double cost_prime(const LeftRightAssignment& lr, double alpha);

// Pointwise max of the two directional ranges.
RangeAssignment merge_lr(const LeftRightAssignment& lr);

// True iff h(v_i,v_l) >= h(v_j,v_k) for all 1 <= i <= j < k <= l <= n.
bool is_line_alike(const DistanceMatrix& m);

// Result of a solver run.
struct Solution {
  std::string algorithm;
  double cost = 0.0;
  RangeAssignment ranges;  // canonical point order
  std::optional<LeftRightAssignment> lr;
  bool valid = false;
  std::optional<double> t;
  std::map<std::string, double> params;
  double elapsed_ms = 0.0;
  bool fallback = false;
};

}  // namespace rangekit
