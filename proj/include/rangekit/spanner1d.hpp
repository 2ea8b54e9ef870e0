#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "rangekit/core.hpp"

// Exact solver for the 1D MinRangeSpanner problem via a memoized
// parametric recursion over subintervals [i, j] with external-path
// lengths as parameters.

namespace rangekit {

inline constexpr double kInfLen = std::numeric_limits<double>::infinity();
// Sentinel for the "no separate delta^i" slot (delta^i equals fwd).
inline constexpr double kEmptyDelta = -1.0;
inline constexpr int kSpannerDefaultCap = 25;

// Subproblem identity: interval [i, j] (0-based, i < j) plus the
// lengths of the shortest external paths v_i -> v_j (fwd), v_j -> v_i
// (bwd) and v_i -> v_{i+1} (di; kEmptyDelta when equal to fwd).
struct SpannerKey {
  int i = 0;
  int j = 0;
  double fwd = kInfLen;
  double bwd = kInfLen;
  double di = kEmptyDelta;

  bool operator==(const SpannerKey& o) const;
};

struct SpannerKeyHash {
  size_t operator()(const SpannerKey& k) const;
};

class SpannerContext {
 public:
  SpannerContext(const Instance& inst, double t);

  // Canonical key: delta values rounded to 12 significant digits and
  // di collapsed to the sentinel when it equals fwd.
  SpannerKey make_key(int i, int j, double fwd, double bwd, double di) const;

  // Memoized subproblem cost. Throws RecursionDepthExceeded if the
  // recursion fails to shrink (an interpretation bug, not an input issue).
  double subproblem(const SpannerKey& key);

  double solve_root();
  // Expands the recorded choices into a left-right assignment; call
  // after solve_root().
  LeftRightAssignment reconstruct();

  size_t memo_size() const { return memo_.size(); }

 private:
  struct Entry {
    double cost = 0.0;
    int branch = 0;  // 0 = base, 1 = hill at i, 2 = hill at i+1, 3 = interior hill
    int k = -1;
    int kp = -1;
  };

  double dist(int a, int b) const {
    const double d = inst_.x(b) - inst_.x(a);
    return d < 0 ? -d : d;
  }
  double pow_a(double x) const { return pow_alpha(x, inst_.alpha); }
  // Child keys of a branch, in fixed order; shared by the minimization
  // and the reconstruction so the two can never drift apart.
  std::vector<SpannerKey> branch_children(const SpannerKey& key, int branch, int k, int kp) const;
  double compute(const SpannerKey& key);
  void expand(const SpannerKey& key, LeftRightAssignment& lr);

  const Instance& inst_;
  double t_;
  double tol_;
  int depth_ = 0;
  int max_depth_ = 0;
  std::unordered_map<SpannerKey, Entry, SpannerKeyHash> memo_;
};

// Analytic t = 1 fixture: sum over points of max(gap to left neighbor,
// gap to right neighbor)^alpha, missing gaps treated as 0.
double forced_chain_cost(const Instance& inst);

Solution solve_1d_spanner(const Instance& inst, double t, int cap = kSpannerDefaultCap);

}  // namespace rangekit
