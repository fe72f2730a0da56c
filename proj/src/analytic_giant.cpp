#include "perclab/analytic_giant.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "perclab/errors.hpp"
#include "perclab/numerics.hpp"

namespace perclab {

namespace {

// Smallest positive root of a concave F on (0, 1] with F(0) = 0 and F'(0) > 0.
// Written in rho = 1 - xi so that roots near criticality keep full relative precision.
double concave_root(const std::function<double(double)>& F) {
  std::vector<double> grid;
  // Below 2^-40 the heavy-tail deficits lose relative accuracy; such roots are reported as 0.
  for (int e = 40; e > 10; --e) grid.push_back(std::ldexp(1.0, -e));
  for (int i = 1; i <= 1024; ++i) grid.push_back(double(i) / 1024.0);
  double prev = 0.0;
  for (double r : grid) {
    if (F(r) <= 0) {
      if (prev == 0.0) return 0.0;
      return num::bisect(F, prev, r, 1e-300, 1e-13);
    }
    prev = r;
  }
  return 1.0;
}

// 1 - (1 - rho)^m
double one_minus_pow(double rho, std::int64_t m) {
  if (m <= 0) return 0.0;
  if (rho >= 1.0) return 1.0;
  return -std::expm1(double(m) * std::log1p(-rho));
}

bool is_degenerate(const DegreeDistribution& dist) {
  return std::abs(dist.pmf(0) + dist.pmf(2) - 1.0) < 1e-12;
}

// Head of sum_j w(j) p_j for j < size, where the remaining degrees share the weight `beyond`.
struct SplitSum {
  const DegreeDistribution& dist;
  const RetentionByDegree& pis;
  // sum_j pi_j p_j term(j), given the all-degree total of p_j term(j).
  double operator()(const std::function<double(std::int64_t)>& term, double total) const {
    if (pis.values.empty()) return pis.beyond * total;
    num::CompensatedSum head_pi, head;
    for (std::size_t j = 0; j < pis.values.size(); ++j) {
      double t = dist.pmf(std::int64_t(j)) * term(std::int64_t(j));
      head_pi += pis.values[j] * t;
      head += t;
    }
    if (pis.beyond == 0.0) return head_pi.value();
    return head_pi.value() + pis.beyond * std::max(0.0, total - head.value());
  }
};

void fill_flags(GiantReport& r, const DegreeDistribution& dist) {
  r.pi_c = giant_threshold(dist);
  r.degenerate = is_degenerate(dist);
  r.never_supercritical = r.pi_c >= 1.0;
  r.near_threshold = std::abs(r.pi - r.pi_c) < 1e-9;
}

}  // namespace

double giant_threshold(const DegreeDistribution& dist) {
  double m2 = dist.factorial_moment(2);
  if (std::isinf(m2)) return 0.0;
  if (m2 <= 0) return num::inf;
  return dist.mean() / m2;
}

double solve_xi_base(const DegreeDistribution& dist) {
  const double lambda = dist.mean();
  double m2 = dist.factorial_moment(2);
  if (!(m2 - lambda > 0)) return 1.0;
  double rho = concave_root([&](double r) { return dist.pgf_deficit(1, r) - lambda * r; });
  return 1.0 - rho;
}

GiantReport giant_site(const DegreeDistribution& dist, const RetentionByDegree& pis) {
  pis.validate();
  if (pis.is_uniform()) return giant_site(dist, pis.beyond);
  const double lambda = dist.mean();
  GiantReport r;
  r.pi = std::nan("");
  fill_flags(r, dist);
  r.near_threshold = false;
  SplitSum weighted{dist, pis};
  double m2 = dist.factorial_moment(2);
  double crit = weighted([](std::int64_t j) { return double(j) * double(j - 1); }, m2);
  if (!(crit > lambda)) return r;
  double lambda_pi = weighted([](std::int64_t j) { return double(j); }, lambda);

  auto F = [&](double rho) {
    double total = dist.pgf_deficit(1, rho);
    return weighted([&](std::int64_t j) { return double(j) * one_minus_pow(rho, j - 1); }, total) - lambda * rho;
  };
  double rho = concave_root(F);
  r.rho = rho;
  r.xi = 1.0 - rho;
  r.supercritical = rho > 0;
  r.v_frac = weighted([&](std::int64_t j) { return one_minus_pow(rho, j); }, dist.pgf_deficit(0, rho));
  r.e_frac = rho * lambda_pi - 0.5 * lambda * rho * rho;
  return r;
}

GiantReport giant_site(const DegreeDistribution& dist, double pi) {
  if (!(pi >= 0 && pi <= 1)) throw std::invalid_argument("giant_site: pi must lie in [0, 1]");
  const double lambda = dist.mean();
  GiantReport r;
  r.pi = pi;
  fill_flags(r, dist);
  double m2 = dist.factorial_moment(2);
  if (!(pi * m2 > lambda)) return r;
  double rho = concave_root([&](double t) { return pi * dist.pgf_deficit(1, t) - lambda * t; });
  r.rho = rho;
  r.xi = 1.0 - rho;
  r.supercritical = rho > 0;
  r.v_frac = pi * dist.pgf_deficit(0, rho);
  r.e_frac = pi * lambda * rho - 0.5 * lambda * rho * rho;
  return r;
}

GiantReport giant_bond(const DegreeDistribution& dist, double pi) {
  if (!(pi >= 0 && pi <= 1)) throw std::invalid_argument("giant_bond: pi must lie in [0, 1]");
  const double lambda = dist.mean();
  GiantReport r;
  r.pi = pi;
  fill_flags(r, dist);
  double m2 = dist.factorial_moment(2);
  if (!(pi * m2 > lambda)) return r;
  const double s = std::sqrt(pi);
  double rho = concave_root([&](double t) { return s * dist.pgf_deficit(1, s * t) - lambda * t; });
  r.rho = rho;
  r.xi = 1.0 - rho;
  r.supercritical = rho > 0;
  r.v_frac = dist.pgf_deficit(0, s * rho);
  r.e_frac = s * lambda * rho - 0.5 * lambda * rho * rho;
  return r;
}

CriticalExpansion critical_expansion(const DegreeDistribution& dist, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("critical_expansion: eps must be positive");
  const auto fm = factorial_moments(dist);
  if (!(fm.second_sub > 0) || std::isinf(fm.second))
    throw UnsupportedRegimeError("critical_expansion: requires 0 < E D(D-2) < inf");
  const double pi_c = fm.mean / fm.second;
  CriticalExpansion out;
  out.eps = eps;
  out.pi = pi_c + eps;
  if (out.pi > 1) throw std::invalid_argument("critical_expansion: pi_c + eps exceeds 1");
  out.rho_v = giant_site(dist, out.pi).rho;
  if (std::isfinite(fm.third)) {
    out.exponent = 1.0;
    out.predicted_rho_v = 2.0 * fm.second / (pi_c * fm.third) * eps;
    return out;
  }
  auto gamma = dist.power_law_exponent();
  if (dist.family() == DegreeDistribution::Family::power_law && dist.is_base() && gamma && *gamma > 3 &&
      *gamma < 4) {
    const double g = *gamma;
    const double c = dist.power_law_constant();
    out.exponent = 1.0 / (g - 3.0);
    double base = fm.second / (c * pi_c * boost::math::tgamma(2.0 - g));
    out.predicted_rho_v = std::pow(base, out.exponent) * std::pow(eps, out.exponent);
    return out;
  }
  throw UnsupportedRegimeError("critical_expansion: infinite third moment outside the pure power-law case 3 < gamma < 4");
}

}  // namespace perclab
