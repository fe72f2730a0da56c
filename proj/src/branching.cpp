#include "perclab/branching.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "perclab/analytic_kcore.hpp"
#include "perclab/errors.hpp"

namespace perclab {

namespace {

double recursion_step(const KCoreFunctions& F, double q) {
  if (q <= 0) return 0.0;
  return F.h(q) / (F.lambda() * q);
}

void check_monotone(double prev, double next) {
  if (next > prev + 1e-14)
    throw std::logic_error("pmax_recursion: iterates increased, the recursion is not monotone here");
}

}  // namespace

double pmax_recursion(const DegreeDistribution& dist, int k, double tol, std::size_t max_steps) {
  if (!(tol > 0)) throw std::invalid_argument("pmax_recursion: tol must be positive");
  KCoreFunctions F(dist, k);
  double q = 1.0;
  for (std::size_t n = 0; n < max_steps; ++n) {
    double next = recursion_step(F, q);
    check_monotone(q, next);
    if (std::abs(next - q) < tol) return next;
    q = next;
  }
  std::ostringstream os;
  os << "pmax_recursion: no convergence in " << max_steps << " steps";
  throw SlowConvergenceError(os.str(), q);
}

std::vector<double> pmax_iterates(const DegreeDistribution& dist, int k, std::size_t n) {
  KCoreFunctions F(dist, k);
  std::vector<double> q{1.0};
  for (std::size_t i = 0; i < n; ++i) {
    q.push_back(recursion_step(F, q.back()));
    check_monotone(q[i], q[i + 1]);
  }
  return q;
}

double survival_probability(const DegreeDistribution& dist) {
  auto fm = factorial_moments(dist);
  if (!(fm.second_sub > 0)) return 0.0;
  DegreeDistribution off = size_biased_shift(dist);
  // G(x) = g_{D^}(x) - x is convex with G(0) >= 0, so Newton from 0 climbs monotonically to the
  // smallest root.
  double x = 0.0;
  for (int it = 0; it < 500; ++it) {
    double G = off.pgf(x, 0) - x;
    double dG = off.pgf(x, 1) - 1.0;
    if (G <= 0) break;
    if (dG >= 0) return 0.0;
    double step = -G / dG;
    x += step;
    if (x >= 1.0) return 0.0;
    if (step <= 1e-16 * std::max(1.0, x)) break;
  }
  return 1.0 - x;
}

int default_containment_depth(int k, std::size_t reps, double node_budget) {
  int depth = 0;
  double cost = double(reps);
  double width = 1.0;
  while (true) {
    double next_width = width * double(k - 1);
    if (cost + double(reps) * next_width > node_budget || depth >= 1000) return depth;
    width = next_width;
    cost += double(reps) * width;
    ++depth;
  }
}

namespace {

class TreeProbe {
 public:
  TreeProbe(const BranchingModel& m, int k, double budget, std::uint64_t seed)
      : offspring_(m.offspring_law), root_(m.root_law), k_(k), budget_(budget), rng_(seed) {}

  // Does a vertex with fresh offspring have >= need children that are good at depth - 1?
  bool good(int depth, int need, DegreeSampler& law) {
    if (depth == 0) return true;
    charge(1);
    std::int64_t children = law(rng_);
    if (children < need) return false;
    std::int64_t found = 0;
    for (std::int64_t i = 0; i < children; ++i) {
      if (good(depth - 1, k_ - 1, offspring_)) ++found;
      if (found >= need) return true;
      if (found + (children - i - 1) < need) return false;
    }
    return false;
  }

  bool sample(int depth, bool root_variant) {
    return root_variant ? good(depth, k_, root_) : good(depth, k_ - 1, offspring_);
  }

  std::size_t nodes() const { return nodes_; }

 private:
  void charge(std::size_t c) {
    nodes_ += c;
    if (double(nodes_) > budget_) throw BudgetError("mc_tree_containment: node budget exhausted");
  }

  DegreeSampler offspring_;
  DegreeSampler root_;
  int k_;
  double budget_;
  Rng rng_;
  std::size_t nodes_ = 0;
};

}  // namespace

ContainmentEstimate mc_tree_containment(const BranchingModel& model, int k, int depth, std::size_t reps,
                                        std::uint64_t seed, bool root_variant, double node_budget) {
  if (k < 2) throw std::invalid_argument("mc_tree_containment: k must be >= 2");
  if (depth < 1 || reps < 1) throw std::invalid_argument("mc_tree_containment: depth and reps must be >= 1");
  double width = 1.0, cost = 1.0;
  for (int i = 1; i <= depth; ++i) {
    width *= double(k - 1);
    cost += width;
  }
  if (double(reps) * cost > node_budget) {
    std::ostringstream os;
    os << "mc_tree_containment: depth " << depth << " with " << reps << " replicates needs at least "
       << double(reps) * cost << " nodes (budget " << node_budget << "); try depth <= "
       << default_containment_depth(k, reps, node_budget);
    throw BudgetError(os.str());
  }
  TreeProbe probe(model, k, node_budget, seed);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < reps; ++r)
    if (probe.sample(depth, root_variant)) ++hits;
  ContainmentEstimate out;
  out.estimate = double(hits) / double(reps);
  out.stderr_ = std::sqrt(out.estimate * (1 - out.estimate) / double(reps));
  out.nodes = probe.nodes();
  return out;
}

}  // namespace perclab
