#pragma once

#include <cstdint>
#include <vector>

#include "perclab/degree_model.hpp"

namespace perclab {

// Galton-Watson tree whose non-root vertices have offspring law D^ (size-biased D, shifted).
struct BranchingModel {
  DegreeDistribution root_law;
  DegreeDistribution offspring_law;

  explicit BranchingModel(const DegreeDistribution& d) : root_law(d), offspring_law(size_biased_shift(d)) {}
};

// q_0 = 1, q_{n+1} = h(q_n) / (lambda q_n) until |q_{n+1} - q_n| < tol.
// Throws SlowConvergenceError after max_steps, std::logic_error if the sequence increases.
double pmax_recursion(const DegreeDistribution& dist, int k, double tol = 1e-12, std::size_t max_steps = 1000000);
// q_0 .. q_n.
std::vector<double> pmax_iterates(const DegreeDistribution& dist, int k, std::size_t n);

// 1 - xi with xi the smallest root in [0, 1] of g_{D^}(xi) = xi; 0 when E D(D-2) <= 0.
double survival_probability(const DegreeDistribution& dist);

struct ContainmentEstimate {
  double estimate = 0;
  double stderr_ = 0;
  std::size_t nodes = 0;  // vertices whose offspring were drawn
};

// Monte Carlo estimate of P(X contains a depth-`depth` (k-1)-ary subtree from the root), or with
// root_variant, P(root has >= k children that do), where the root has offspring law D.
// Throws BudgetError when reps * sum_{i<=depth} (k-1)^i, or the actual node count, exceeds node_budget.
ContainmentEstimate mc_tree_containment(const BranchingModel& model, int k, int depth, std::size_t reps,
                                        std::uint64_t seed, bool root_variant = false,
                                        double node_budget = 1e7);

// Largest depth whose certification cost reps * sum_{i<=depth} (k-1)^i fits the budget.
int default_containment_depth(int k, std::size_t reps, double node_budget = 1e7);

}  // namespace perclab
