#include "rangekit/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rangekit {

double pow_alpha(double x, double alpha) {
  if (alpha == 1.0) return x;
  if (alpha == 2.0) return x * x;
  if (alpha == 3.0) return x * x * x;
  return std::pow(x, alpha);
}

double Instance::distance(int i, int j) const {
  const Point& a = points[i];
  const Point& b = points[j];
  double s = 0.0;
  for (int d = 0; d < 3; ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double Instance::diameter() const {
  const int n = size();
  if (n <= 1) return 0.0;
  if (dimension == 1) return x(n - 1) - x(0);
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) best = std::max(best, distance(i, j));
  return best;
}

Instance canonicalize(const std::vector<std::vector<double>>& raw_points,
                      int dimension, double alpha) {
  if (raw_points.empty()) throw BadParams("point list is empty");
  if (dimension < 1 || dimension > 3) throw BadParams("dimension must be 1, 2 or 3");
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw BadParams("alpha must be a finite real >= 1");

  const int n = static_cast<int>(raw_points.size());
  Instance inst;
  inst.dimension = dimension;
  inst.alpha = alpha;
  inst.points.resize(n, Point{0.0, 0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(raw_points[i].size()) != dimension)
      throw BadParams("point " + std::to_string(i) + " has wrong arity");
    for (int d = 0; d < dimension; ++d) {
      const double c = raw_points[i][d];
      if (!std::isfinite(c)) throw NonFiniteCoordinate("coordinate not finite");
      inst.points[i][d] = c;
    }
  }

  inst.input_index.resize(n);
  std::iota(inst.input_index.begin(), inst.input_index.end(), 0);
  if (dimension == 1) {
    std::stable_sort(inst.input_index.begin(), inst.input_index.end(),
                     [&](int a, int b) { return inst.points[a][0] < inst.points[b][0]; });
    std::vector<Point> sorted(n);
    for (int k = 0; k < n; ++k) sorted[k] = inst.points[inst.input_index[k]];
    inst.points = std::move(sorted);
    for (int k = 0; k + 1 < n; ++k)
      if (!(inst.points[k][0] < inst.points[k + 1][0]))
        throw DuplicatePoint("coincident 1D points");
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (inst.distance(i, j) == 0.0) throw DuplicatePoint("coincident points");
  }
  return inst;
}

DistanceMatrix DistanceMatrix::from_instance(const Instance& inst) {
  const int n = inst.size();
  DistanceMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.set(i, j, inst.distance(i, j));
  return m;
}

double DistanceMatrix::diameter() const {
  double best = 0.0;
  for (double v : d_) best = std::max(best, v);
  return best;
}

void DistanceMatrix::validate() const {
  for (int i = 0; i < n_; ++i) {
    if ((*this)(i, i) != 0.0) throw BadParams("nonzero diagonal in distance matrix");
    for (int j = i + 1; j < n_; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v)) throw NonFiniteCoordinate("non-finite distance");
      if (v != (*this)(j, i)) throw BadParams("asymmetric distance matrix");
      if (!(v > 0.0)) throw DuplicatePoint("non-positive off-diagonal distance");
    }
  }
}

bool CommGraph::has_edge(int u, int v) const {
  for (const auto& [w, len] : out[u])
    if (w == v) return true;
  return false;
}

int CommGraph::edge_count() const {
  int c = 0;
  for (const auto& adj : out) c += static_cast<int>(adj.size());
  return c;
}

CommGraph induced_graph(const DistanceMatrix& metric, const RangeAssignment& rho) {
  const int n = metric.size();
  if (rho.size() != n) throw SizeMismatch("assignment size does not match metric");
  const double tol = metric.tolerance();
  CommGraph g;
  g.n = n;
  g.out.resize(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const double d = metric(u, v);
      if (rho.ranges[u] >= d - tol) g.out[u].push_back({v, d});
    }
  return g;
}

CommGraph induced_graph_lr(const Instance& inst, const LeftRightAssignment& lr) {
  if (inst.dimension != 1) throw DimensionMismatch("left-right assignments are 1D only");
  const int n = inst.size();
  if (lr.size() != n || static_cast<int>(lr.right.size()) != n)
    throw SizeMismatch("assignment size does not match instance");
  const double tol = inst.tolerance();
  CommGraph g;
  g.n = n;
  g.out.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = inst.distance(i, j);
      const double reach = j > i ? lr.right[i] : lr.left[i];
      if (reach >= d - tol) g.out[i].push_back({j, d});
    }
  return g;
}

namespace {

// Reachability of every vertex from `start`, following out-edges
// (forward) or in-edges (backward).
bool reaches_all(const CommGraph& g, int start, bool backward) {
  const int n = g.n;
  std::vector<std::vector<int>> adj(n);
  for (int u = 0; u < n; ++u)
    for (const auto& [v, len] : g.out[u]) {
      if (backward)
        adj[v].push_back(u);
      else
        adj[u].push_back(v);
    }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

}  // namespace

bool is_strongly_connected(const CommGraph& g) {
  if (g.n <= 1) return true;
  return reaches_all(g, 0, false) && reaches_all(g, 0, true);
}

bool is_t_spanner(const CommGraph& g, const DistanceMatrix& metric, double t) {
  if (g.n != metric.size()) throw SizeMismatch("graph and metric size differ");
  if (!is_strongly_connected(g)) return false;
  if (std::isinf(t)) return true;
  const int n = g.n;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<size_t>(n) * n, inf);
  for (int i = 0; i < n; ++i) dist[static_cast<size_t>(i) * n + i] = 0.0;
  for (int u = 0; u < n; ++u)
    for (const auto& [v, len] : g.out[u]) {
      double& cell = dist[static_cast<size_t>(u) * n + v];
      cell = std::min(cell, len);
    }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      const double dik = dist[static_cast<size_t>(i) * n + k];
      if (std::isinf(dik)) continue;
      for (int j = 0; j < n; ++j) {
        double& cell = dist[static_cast<size_t>(i) * n + j];
        const double via = dik + dist[static_cast<size_t>(k) * n + j];
        if (via < cell) cell = via;
      }
    }
  const double tol = metric.tolerance();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      if (dist[static_cast<size_t>(u) * n + v] > t * metric(u, v) + tol) return false;
    }
  return true;
}

double cost(const RangeAssignment& rho, double alpha) {
  double c = 0.0;
  for (double r : rho.ranges) c += pow_alpha(r, alpha);
  return c;
}

double cost_lr(const LeftRightAssignment& lr, double alpha) {
  double c = 0.0;
  for (int i = 0; i < lr.size(); ++i) c += pow_alpha(std::max(lr.left[i], lr.right[i]), alpha);
  return c;
}

double cost_prime(const LeftRightAssignment& lr, double alpha) {
  double c = 0.0;
  for (int i = 0; i < lr.size(); ++i)
    c += pow_alpha(lr.left[i], alpha) + pow_alpha(lr.right[i], alpha);
  return c;
}

RangeAssignment merge_lr(const LeftRightAssignment& lr) {
  RangeAssignment rho;
  rho.ranges.resize(lr.size());
  for (int i = 0; i < lr.size(); ++i) rho.ranges[i] = std::max(lr.left[i], lr.right[i]);
  return rho;
}

bool is_line_alike(const DistanceMatrix& m) {
  const int n = m.size();
  if (n <= 2) return true;
  const double tol = m.tolerance();
  // inner[i][l] = max h(j,k) over i <= j < k <= l; the condition holds
  // iff h(i,l) dominates inner[i][l] for every interval.
  std::vector<std::vector<double>> inner(n, std::vector<double>(n, 0.0));
  for (int i = 0; i + 1 < n; ++i) inner[i][i + 1] = m(i, i + 1);
  for (int span = 2; span < n; ++span)
    for (int i = 0; i + span < n; ++i) {
      const int l = i + span;
      inner[i][l] = std::max({m(i, l), inner[i + 1][l], inner[i][l - 1]});
      if (m(i, l) < inner[i][l] - tol) return false;
    }
  return true;
}

}  // namespace rangekit
