#include "rangekit/spanner1d.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

namespace rangekit {

namespace {

const double* pow10_table() {
  static double table[640];
  static bool init = [] {
    for (int k = 0; k < 640; ++k) table[k] = std::pow(10.0, k - 320);
    return true;
  }();
  (void)init;
  return table;
}

double round12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  const int mag = static_cast<int>(std::floor(std::log10(std::abs(x))));
  const double scale = pow10_table()[11 - mag + 320];
  return std::round(x * scale) / scale;
}

double add_len(double a, double b) { return a + b; }  // inf-absorbing

double sub_len(double a, double b) { return std::isinf(a) ? a : a - b; }

uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

bool SpannerKey::operator==(const SpannerKey& o) const {
  return i == o.i && j == o.j && std::bit_cast<uint64_t>(fwd) == std::bit_cast<uint64_t>(o.fwd) &&
         std::bit_cast<uint64_t>(bwd) == std::bit_cast<uint64_t>(o.bwd) &&
         std::bit_cast<uint64_t>(di) == std::bit_cast<uint64_t>(o.di);
}

size_t SpannerKeyHash::operator()(const SpannerKey& k) const {
  uint64_t h = static_cast<uint64_t>(k.i) * 1000003u + static_cast<uint64_t>(k.j);
  h = mix(h, std::bit_cast<uint64_t>(k.fwd));
  h = mix(h, std::bit_cast<uint64_t>(k.bwd));
  h = mix(h, std::bit_cast<uint64_t>(k.di));
  return static_cast<size_t>(h);
}

SpannerContext::SpannerContext(const Instance& inst, double t)
    : inst_(inst), t_(t), tol_(inst.tolerance()), max_depth_(4 * (inst.size() + 2) + 16) {
  if (inst.dimension != 1) throw DimensionMismatch("spanner solver requires a 1D instance");
  if (!(t >= 1.0)) throw BadParams("t must be >= 1");
  const size_t n = static_cast<size_t>(inst.size());
  memo_.reserve(std::min<size_t>(size_t{1} << 20, 64 * n * n * n));
}

SpannerKey SpannerContext::make_key(int i, int j, double fwd, double bwd, double di) const {
  SpannerKey key;
  key.i = i;
  key.j = j;
  key.fwd = round12(fwd);
  key.bwd = round12(bwd);
  key.di = di == kEmptyDelta ? kEmptyDelta : round12(di);
  if (key.di != kEmptyDelta &&
      std::bit_cast<uint64_t>(key.di) == std::bit_cast<uint64_t>(key.fwd))
    key.di = kEmptyDelta;
  return key;
}

std::vector<SpannerKey> SpannerContext::branch_children(const SpannerKey& key, int branch, int k,
                                                        int kp) const {
  const int i = key.i, j = key.j;
  const double g = dist(i, i + 1);
  const double di_eff = key.di == kEmptyDelta ? key.fwd : key.di;
  std::vector<SpannerKey> kids;
  switch (branch) {
    case 1:
      // Hill at i with right range g; the pair sees the direct edge
      // forward and the around-the-right route backward.
      kids.push_back(make_key(i, i + 1, g, add_len(dist(i + 1, j), key.bwd), kEmptyDelta));
      kids.push_back(make_key(i + 1, j, kInfLen, sub_len(key.bwd, g), kEmptyDelta));
      break;
    case 2:
      // Hill at i+1 with left range g.
      kids.push_back(make_key(i, i + 1, di_eff, g, kEmptyDelta));
      kids.push_back(make_key(i + 1, j, add_len(g, key.fwd), sub_len(key.bwd, g), kEmptyDelta));
      break;
    case 3:
      // Interior hill k covering [i, kp] to both sides.
      kids.push_back(make_key(i, i + 1, di_eff, dist(i + 1, k) + dist(i, k), kEmptyDelta));
      if (k > i + 1) kids.push_back(make_key(i + 1, k, kInfLen, dist(i + 1, k), kInfLen));
      if (kp - 1 > k) kids.push_back(make_key(k, kp - 1, dist(k, kp - 1), kInfLen, dist(k, k + 1)));
      kids.push_back(make_key(kp - 1, j, add_len(dist(i, kp - 1), key.fwd),
                              sub_len(key.bwd, dist(i, kp - 1)),
                              dist(kp - 1, k) + dist(k, kp)));
      break;
    case 4:
      // No new structure at the first gap: the pair lives off the
      // external routes alone (delta^i forward, around the right and
      // back via bwd). Subsumes the hill-at-i case, which re-pays the
      // direct edge the pair would only buy when the routes fall short.
      kids.push_back(make_key(i, i + 1, di_eff, add_len(dist(i + 1, j), key.bwd), kEmptyDelta));
      kids.push_back(make_key(i + 1, j, kInfLen, sub_len(key.bwd, g), kEmptyDelta));
      break;
    default:
      throw Error("unknown branch in spanner recursion");
  }
  return kids;
}

double SpannerContext::compute(const SpannerKey& key) {
  const int i = key.i, j = key.j;
  if (j == i + 1) {
    // A consecutive pair pays the direct edge in each direction whose
    // external route misses the stretch bound. delta^i, when present,
    // is a second forward route.
    const double g = dist(i, i + 1);
    const double eff_fwd = key.di == kEmptyDelta ? key.fwd : std::min(key.fwd, key.di);
    const double r_fwd = eff_fwd > t_ * g + tol_ ? g : 0.0;
    const double r_bwd = key.bwd > t_ * g + tol_ ? g : 0.0;
    return pow_a(r_fwd) + pow_a(r_bwd);
  }

  double best = kInfLen;
  int best_branch = 0, best_k = -1, best_kp = -1;
  const auto take = [&](double total, int branch, int k, int kp) {
    if (total < best) {
      best = total;
      best_branch = branch;
      best_k = k;
      best_kp = kp;
    }
  };

  // The degenerate and general branches, with the child keys spelled out
  // exactly as in branch_children (which the reconstruction replays).
  const double g = dist(i, i + 1);
  const double gp = pow_a(g);
  const double di_eff = key.di == kEmptyDelta ? key.fwd : key.di;

  const double around_pair =
      subproblem(make_key(i, i + 1, g, add_len(dist(i + 1, j), key.bwd), kEmptyDelta));
  const double rest_plain =
      subproblem(make_key(i + 1, j, kInfLen, sub_len(key.bwd, g), kEmptyDelta));
  take(gp + around_pair + rest_plain, 1, i, i + 1);

  take(gp + subproblem(make_key(i, i + 1, di_eff, g, kEmptyDelta)) +
           subproblem(make_key(i + 1, j, add_len(g, key.fwd), sub_len(key.bwd, g), kEmptyDelta)),
       2, i + 1, i + 1);

  take(subproblem(make_key(i, i + 1, di_eff, add_len(dist(i + 1, j), key.bwd), kEmptyDelta)) +
           rest_plain,
       4, i, i);

  for (int k = i + 1; k < j; ++k) {
    const double pair_cost =
        subproblem(make_key(i, i + 1, di_eff, dist(i + 1, k) + dist(i, k), kEmptyDelta));
    const double left_cost =
        k > i + 1 ? subproblem(make_key(i + 1, k, kInfLen, dist(i + 1, k), kInfLen)) : 0.0;
    const double hill_floor = pow_a(dist(i, k));
    if (pair_cost + left_cost + hill_floor >= best) continue;
    for (int kp = k + 1; kp <= j; ++kp) {
      double total = std::max(hill_floor, pow_a(dist(k, kp))) + pair_cost + left_cost;
      if (total >= best) break;  // grows with kp from here on
      if (kp - 1 > k)
        total += subproblem(make_key(k, kp - 1, dist(k, kp - 1), kInfLen, dist(k, k + 1)));
      if (total >= best) continue;
      total += subproblem(make_key(kp - 1, j, add_len(dist(i, kp - 1), key.fwd),
                                   sub_len(key.bwd, dist(i, kp - 1)),
                                   dist(kp - 1, k) + dist(k, kp)));
      take(total, 3, k, kp);
    }
  }

  auto& entry = memo_[key];
  entry.cost = best;
  entry.branch = best_branch;
  entry.k = best_k;
  entry.kp = best_kp;
  return best;
}

double SpannerContext::subproblem(const SpannerKey& key) {
  if (key.j <= key.i) return 0.0;
  const auto it = memo_.find(key);
  if (it != memo_.end()) return it->second.cost;
  if (++depth_ > max_depth_) throw RecursionDepthExceeded("spanner recursion failed to shrink");
  const double value = compute(key);
  --depth_;
  if (key.j == key.i + 1) {
    auto& entry = memo_[key];
    entry.cost = value;
    entry.branch = 0;
  }
  return value;
}

double SpannerContext::solve_root() {
  return subproblem(make_key(0, inst_.size() - 1, kInfLen, kInfLen, kEmptyDelta));
}

void SpannerContext::expand(const SpannerKey& key, LeftRightAssignment& lr) {
  if (key.j <= key.i) return;
  const auto it = memo_.find(key);
  if (it == memo_.end()) throw Error("spanner reconstruction hit an unsolved subproblem");
  const Entry& entry = it->second;
  const int i = key.i;
  const double g = dist(i, i + 1);
  if (key.j == i + 1) {
    const double eff_fwd = key.di == kEmptyDelta ? key.fwd : std::min(key.fwd, key.di);
    if (eff_fwd > t_ * g + tol_) lr.right[i] = std::max(lr.right[i], g);
    if (key.bwd > t_ * g + tol_) lr.left[i + 1] = std::max(lr.left[i + 1], g);
    return;
  }
  switch (entry.branch) {
    case 1:
      lr.right[i] = std::max(lr.right[i], g);
      break;
    case 2:
      lr.left[i + 1] = std::max(lr.left[i + 1], g);
      break;
    case 3:
      lr.left[entry.k] = std::max(lr.left[entry.k], dist(i, entry.k));
      lr.right[entry.k] = std::max(lr.right[entry.k], dist(entry.k, entry.kp));
      break;
    case 4:
      break;
    default:
      throw Error("unknown branch in spanner reconstruction");
  }
  for (const SpannerKey& kid : branch_children(key, entry.branch, entry.k, entry.kp))
    expand(kid, lr);
}

LeftRightAssignment SpannerContext::reconstruct() {
  const int n = inst_.size();
  LeftRightAssignment lr;
  lr.left.assign(n, 0.0);
  lr.right.assign(n, 0.0);
  expand(make_key(0, n - 1, kInfLen, kInfLen, kEmptyDelta), lr);
  return lr;
}

double forced_chain_cost(const Instance& inst) {
  if (inst.dimension != 1) throw DimensionMismatch("forced chain cost requires a 1D instance");
  const int n = inst.size();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double left = i > 0 ? inst.distance(i - 1, i) : 0.0;
    const double right = i + 1 < n ? inst.distance(i, i + 1) : 0.0;
    total += pow_alpha(std::max(left, right), inst.alpha);
  }
  return total;
}

Solution solve_1d_spanner(const Instance& inst, double t, int cap) {
  const auto t0 = std::chrono::steady_clock::now();
  if (inst.dimension != 1) throw DimensionMismatch("spanner solver requires a 1D instance");
  const int n = inst.size();
  if (n > cap) throw TooLarge("instance exceeds the spanner enumeration cap");

  Solution sol;
  sol.algorithm = "spanner1d";
  sol.t = t;
  if (n == 1) {
    sol.cost = 0.0;
    sol.ranges.ranges = {0.0};
    sol.lr = LeftRightAssignment{{0.0}, {0.0}};
    sol.valid = true;
  } else {
    SpannerContext ctx(inst, t);
    sol.cost = ctx.solve_root();
    LeftRightAssignment lr = ctx.reconstruct();
    sol.lr = lr;
    sol.ranges = merge_lr(lr);
    const CommGraph g = induced_graph_lr(inst, lr);
    sol.valid = is_strongly_connected(g) &&
                is_t_spanner(g, DistanceMatrix::from_instance(inst), t);
    sol.params["memo_size"] = static_cast<double>(ctx.memo_size());
  }
  sol.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

}  // namespace rangekit
