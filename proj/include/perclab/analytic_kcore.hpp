#pragma once

#include <complex>
#include <string>
#include <vector>

#include "perclab/degree_model.hpp"

namespace perclab {

// h(p) = E D_p 1{D_p >= k}, h1(p) = P(D_p >= k) and phi(p) = h(p)/p^2 for one (D, k).
// Tables use regularized incomplete beta sums, Poisson laws and mixtures use regularized
// incomplete gamma; everything else goes through PGF derivatives at 1 - p.
class KCoreFunctions {
 public:
  KCoreFunctions(const DegreeDistribution& dist, int k);

  double h(double p) const;
  double h1(double p) const;
  // Throws std::domain_error at p = 0.
  double phi(double p) const;
  // Numerical derivative of phi (order 1..5); one-sided at p = 1.
  double phi_derivative(double p, int order = 1) const;
  double lambda() const { return lambda_; }
  int k() const { return k_; }
  const DegreeDistribution& dist() const { return dist_; }

 private:
  enum class Kind { table, poisson_mix, pgf };
  double h_pgf(double p) const;
  double h1_pgf(double p) const;

  DegreeDistribution dist_;
  int k_;
  double lambda_;
  Kind kind_;
  std::vector<std::int64_t> deg_;
  std::vector<double> w_;
  std::vector<PoissonComponent> comps_;
};

double h_func(const DegreeDistribution& dist, int k, double p);
double h1_func(const DegreeDistribution& dist, int k, double p);
double phi_func(const DegreeDistribution& dist, int k, double p);

// The p-grid used for scans: `uniform` points on [1e-4, 1] plus `log_points` log-spaced
// points in [1e-8, 1e-4), both multiplied by 2^level. Ascending.
std::vector<double> kcore_grid(int level = 0, std::size_t uniform = 10000, std::size_t log_points = 400);

struct ThresholdInfo {
  double pi_c = 1;
  double sup_phi = 0;
  double p_star = 1;       // grid-refined maximizer
  double limit_at_0 = 0;   // lim phi(p) as p -> 0 (NaN if not determined)
  bool attained = true;    // false when the supremum is only approached as p -> 0
};

ThresholdInfo kcore_threshold_info(const DegreeDistribution& dist, int k);
// lambda / sup phi; 0 when sup phi is infinite.
double kcore_threshold(const DegreeDistribution& dist, int k);

struct KCoreReport {
  int k = 2;
  double pi = 1;
  double pi_c = 1;
  double p_max = 0;
  double v_frac = 0;
  double e_frac = 0;
  std::vector<double> profile;  // v_j, index j; zero for j < k
  bool empty = true;
  bool at_local_max = false;    // p_max is a local maximum of phi: limit law not covered
  bool near_threshold = false;  // |pi - pi_c| < 1e-9
};

KCoreReport kcore_site(const DegreeDistribution& dist, int k, double pi);
KCoreReport kcore_bond(const DegreeDistribution& dist, int k, double pi);

struct PhaseTransition {
  enum class Order { first_order, continuous, boundary_at_1, threshold_sup_not_attained };
  double pi_tilde = 1;
  double p_tilde = 1;
  Order order = Order::first_order;
  double jump = 0;  // jump of the site-percolation core fraction at pi_tilde
};

std::string to_string(PhaseTransition::Order o);

struct TransitionOptions {
  std::size_t uniform = 10000;
  std::size_t log_points = 400;
  int max_level = 5;
};

// Phase transitions of the k-core in pi, sorted by pi_tilde. The grid is refined until the
// count is unchanged on three consecutive levels; otherwise UnresolvedTransitionError.
std::vector<PhaseTransition> enumerate_transitions(const DegreeDistribution& dist, int k,
                                                   const TransitionOptions& opt = {});

struct CurvePoint {
  double p, phi, h, h1;
};
std::vector<CurvePoint> kcore_curve(const DegreeDistribution& dist, int k, const std::vector<double>& grid);

// phi for a Poisson mixture, sum_i q_i lambda_i^2 f_k(lambda_i p) with f_k(x) = P(Po(x) >= k-1)/x.
double poisson_mixture_phi(const std::vector<PoissonComponent>& mixture, int k, double p);

// The dyadic mixture lambda_i = 2^i, q_i = 4^{-i} (i >= 1) with k = 3:
// phi(p) = sum_{i>=1} f(2^i p) and psi(x) = sum_{i in Z} f(2^i x), f(x) = (1 - (1+x)e^{-x})/x.
double dyadic_f(double x);
double dyadic_phi(double p);
double dyadic_psi(double x);
// Fourier coefficients of y -> psi(2^y) on [0, 1).
std::complex<double> psi_fourier(int n);
std::complex<double> psi_fourier_quadrature(int n, int points = 512);
// max |psi(2^y) - 1/ln 2| over a uniform grid in y.
double psi_oscillation_amplitude(int points = 4096);

}  // namespace perclab
