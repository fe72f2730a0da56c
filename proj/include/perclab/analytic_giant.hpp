#pragma once

#include "perclab/degree_model.hpp"
#include "perclab/percolation.hpp"

namespace perclab {

struct GiantReport {
  double pi = 1;
  double xi = 1;   // extinction root
  double rho = 0;  // 1 - xi
  double v_frac = 0;
  double e_frac = 0;
  bool supercritical = false;
  double pi_c = 1;
  bool degenerate = false;          // p0 + p2 = 1
  bool never_supercritical = false; // pi_c >= 1
  bool near_threshold = false;      // |pi - pi_c| < 1e-9
};

// Root of g'(xi) = lambda xi in (0, 1); 1 when E D(D-2) <= 0.
double solve_xi_base(const DegreeDistribution& dist);

// E D / E D(D-1); 0 when the second moment diverges.
double giant_threshold(const DegreeDistribution& dist);

GiantReport giant_site(const DegreeDistribution& dist, const RetentionByDegree& pis);
GiantReport giant_site(const DegreeDistribution& dist, double pi);
GiantReport giant_bond(const DegreeDistribution& dist, double pi);

struct CriticalExpansion {
  double eps = 0;
  double pi = 0;           // pi_c + eps
  double rho_v = 0;        // solver value
  double predicted_rho_v = 0;
  double exponent = 1;     // 1, or 1/(gamma-3) on the power-law branch
};

// Compares rho^v(pi_c + eps) with its leading-order expansion at the threshold.
// Finite third moment: linear in eps. Pure power law with 3 < gamma < 4: eps^{1/(gamma-3)}.
CriticalExpansion critical_expansion(const DegreeDistribution& dist, double eps);

}  // namespace perclab
