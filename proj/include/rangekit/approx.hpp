#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "rangekit/core.hpp"

// Constant-factor approximation for d >= 2, alpha = 1: MST
// decomposition, the hub baseline and its path variant, the flatten
// procedure, the tree-aware distance h_S, the adjustment transformation
// g, and the candidate orchestration with validity filtering.

namespace rangekit {

// Stretch bound enforced by the flatten procedure (c_s).
inline constexpr double kFlattenStretch = 5.0 / 4.0;
// Tree-weight padding factor of the adjustment transformation
// (c_k = 1 + 8(1 + c_s) = 19).
inline constexpr double kAdjustPadding = 1.0 + 8.0 * (1.0 + kFlattenStretch);
// Documented analysis constants; they never enter the control flow.
inline constexpr double kEpsilonMargin = 5.0 / 1e5;
inline constexpr double kFlattenFractionBound = 20.0 * kEpsilonMargin;
// Full candidate enumeration is attempted up to this size; larger
// instances fall back to the hub candidates (RANGEKIT_CAP / --cap override).
inline constexpr int kApproxDefaultCap = 64;

struct Tree {
  int n = 0;
  std::vector<std::tuple<int, int, double>> edges;  // (u, v, w), u < v

  double total_weight() const;
  double max_edge_weight() const;
  std::vector<std::vector<std::pair<int, double>>> adjacency() const;
};

// Spanning tree of minimum total Euclidean weight; ties broken by
// lexicographic edge (i, j).
Tree euclidean_mst(const Instance& inst);

// Vertex sequence of a maximum-total-weight simple path (two-pass
// farthest-vertex method, deterministic tie-breaks, oriented so the
// lower endpoint id comes first).
std::vector<int> weighted_diameter_path(const Tree& tree);

// The MST split into its diameter path and the hanging forest R: every
// vertex maps to the path vertex rooting its tree, with parent pointers
// toward the root and per-root subtree weights w(T(v)).
struct MstDecomposition {
  Tree mst;
  std::vector<int> path;
  std::vector<int> root;
  std::vector<int> parent;  // -1 for path vertices
  std::vector<double> parent_len;
  std::vector<double> tree_weight;  // indexed by vertex id; 0 off the path
  std::vector<std::tuple<int, int, double>> forest_edges;
};

MstDecomposition decompose(const Tree& tree, const std::vector<int>& path);

struct Candidate {
  std::string tag;  // "i" | "ii" | "iii" | "iv"
  std::map<std::string, double> params;
  RangeAssignment ranges;
  double cost = 0.0;
  bool valid = false;
};

// Solution (i): minimum enclosing disk centered at an input point; MST
// edges directed toward the hub.
Candidate hub_solution(const Instance& inst, const Tree& tree);

// Solution (ii): path center minimizing max distance to the P_M
// endpoints; P_M directed toward it, forest edges bi-directed.
Candidate variant_hub_solution(const Instance& inst, const MstDecomposition& decomp);

// One side of P_M \ e after flattening. The path is stored in local
// order with the outer endpoint first; every moved sub-path hangs under
// its anchor (the shortcut endpoint that stayed on the path).
struct FlattenedSide {
  std::vector<int> path;                       // local order, outer end first
  std::vector<std::pair<int, int>> shortcuts;  // Q_P as (anchor, target) point ids
  std::vector<std::vector<int>> tree;          // members of T(path[q]), root included
  std::vector<double> tree_weight;             // per local position
  std::vector<int> parent;                     // per point id; -1 for path vertices
  std::vector<double> parent_len;

  int size() const { return static_cast<int>(path.size()); }
};

// Initial side state with the trees taken from the decomposition.
FlattenedSide make_side(const Instance& inst, const MstDecomposition& decomp,
                        const std::vector<int>& segment);

// Greedy shortcutting pass, repeated to a fixpoint, bounding the
// path-stretch of every remaining pair by cs.
void flatten_side(const Instance& inst, FlattenedSide& side, double cs);

FlattenedSide flatten(const Instance& inst, const MstDecomposition& decomp,
                      const std::vector<int>& segment, double cs = kFlattenStretch);

// Tree-aware distance between side positions j <= k: the minimum
// distance between any point hanging at or outside j and any point
// hanging at or beyond k. Diagonal defined as 0. Throws IndexOutOfSide.
double h_s(const Instance& inst, const FlattenedSide& side, int j, int k);

// The full matrix over a side, line-alike by construction.
DistanceMatrix h_s_matrix(const Instance& inst, const FlattenedSide& side);

// Both sides of one P_M edge plus the flattened full path
// p_0 .. p_{z-1}; positions [0, m) form the left side.
struct FlattenedDecomp {
  FlattenedSide left;
  FlattenedSide right;  // local order is reversed global order
  std::vector<int> full_path;
  int m = 0;

  int size() const { return static_cast<int>(full_path.size()); }
};

FlattenedDecomp flatten_for_edge(const Instance& inst, const MstDecomposition& decomp,
                                 int edge_index, double cs = kFlattenStretch);

// Shared fixture of solutions (iii) and (iv): the middle path
// P_x = (p_l .. p_r) directed toward p_l, every tree directed toward its
// root with the root paying w(T), and the cheaper crossing option
// (single edge (p_l, p_r), or the two minimal tree-to-tree edges through
// p_{r'} and p_{l'}). Indices are 0-based positions on the full path
// with l <= lp < m <= rp <= r. Returns per-point partial ranges.
std::vector<double> middle_fixture(const Instance& inst, const FlattenedDecomp& fd, int l,
                                   int lp, int rp, int r);

// Transformation g on one side: ranges of the solved prefix scaled by
// c_s plus c_k * w(T) padding, then local re-direction of the sub-path
// around every tree within its padded reach.
std::vector<double> adjust_g(const Instance& inst, const FlattenedSide& side,
                             const std::vector<double>& rho_prime);

Solution solve_approx(const Instance& inst, int cap = kApproxDefaultCap);

}  // namespace rangekit
