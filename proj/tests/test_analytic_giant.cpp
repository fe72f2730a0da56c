#include <doctest.h>

#include <cmath>

#include "perclab/analytic_giant.hpp"
#include "perclab/branching.hpp"
#include "perclab/errors.hpp"

using namespace perclab;

namespace {

std::vector<DegreeDistribution> zoo() {
  return {DegreeDistribution::point_mass(3), DegreeDistribution::two_point(1, 3, 0.5), DegreeDistribution::poisson(2),
          DegreeDistribution::poisson(5), DegreeDistribution::poisson_mixture({{0.5, 1.0}, {0.5, 6.0}}),
          DegreeDistribution::table({0.1, 0.3, 0.2, 0.2, 0.2}), DegreeDistribution::power_law(3.5, 2)};
}

// xi = exp(2 (xi - 1)) by plain iteration.
double poisson2_xi() {
  double x = 0;
  for (int i = 0; i < 2000; ++i) x = std::exp(2 * (x - 1));
  return x;
}

}  // namespace

TEST_CASE("solve_xi_base examples") {
  CHECK(solve_xi_base(DegreeDistribution::two_point(1, 3, 0.5)) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(solve_xi_base(DegreeDistribution::point_mass(1)) == 1.0);
  CHECK(solve_xi_base(DegreeDistribution::poisson(2)) == doctest::Approx(poisson2_xi()).epsilon(1e-11));
  CHECK(solve_xi_base(DegreeDistribution::poisson(2)) == doctest::Approx(0.203187869979985).epsilon(1e-12));
}

TEST_CASE("giant_threshold examples") {
  CHECK(giant_threshold(DegreeDistribution::point_mass(3)) == doctest::Approx(0.5));
  CHECK(giant_threshold(DegreeDistribution::poisson(4)) == doctest::Approx(0.25));
  CHECK(giant_threshold(DegreeDistribution::power_law(2.5)) == 0.0);
  auto pm1 = giant_site(DegreeDistribution::point_mass(1), 1.0);
  CHECK(pm1.never_supercritical);
  CHECK(pm1.v_frac == 0.0);
}

TEST_CASE("giant_site examples") {
  auto r = giant_site(DegreeDistribution::point_mass(3), 0.6);
  CHECK(r.supercritical);
  CHECK(r.xi == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(r.v_frac == doctest::Approx(19.0 / 45).epsilon(1e-12));
  CHECK(r.e_frac == doctest::Approx(0.6 * 3 / 3 - 3.0 / 9 / 2).epsilon(1e-12));
  for (auto& d : zoo()) {
    double pc = giant_threshold(d);
    auto sub = giant_site(d, pc * 0.9);
    CHECK_FALSE(sub.supercritical);
    CHECK(sub.v_frac == 0.0);
    CHECK(sub.e_frac == 0.0);
    CHECK(sub.xi == 1.0);
  }
  auto full = giant_site(DegreeDistribution::two_point(1, 3, 0.5), 1.0);
  CHECK(full.v_frac == doctest::Approx(22.0 / 27).epsilon(1e-12));
  auto zero = giant_site(DegreeDistribution::poisson(5), 0.0);
  CHECK(zero.v_frac == 0.0);
  CHECK(zero.e_frac == 0.0);
}

TEST_CASE("giant_site per degree") {
  auto d = DegreeDistribution::point_mass(3);
  auto uni = giant_site(d, 0.6);
  auto per = giant_site(d, RetentionByDegree{{0.2, 0.9, 0.4}, 0.6});
  CHECK(per.v_frac == doctest::Approx(uni.v_frac).epsilon(1e-12));
  // retention on degree 1 only: the residual of sum j pi_j p_j (1 - xi^{j-1}) = lambda (1 - xi)
  auto tp = DegreeDistribution::two_point(1, 3, 0.5);
  RetentionByDegree pis{{1.0, 0.5, 1.0, 0.8}, 1.0};
  auto r = giant_site(tp, pis);
  REQUIRE(r.supercritical);
  double xi = r.xi;
  double lhs = 1 * 0.5 * 0.5 * (1 - 1) + 3 * 0.8 * 0.5 * (1 - xi * xi);
  CHECK(std::abs(lhs - 2 * (1 - xi)) < 1e-10);
  double v = 0.5 * 0.5 * (1 - xi) + 0.8 * 0.5 * (1 - xi * xi * xi);
  CHECK(r.v_frac == doctest::Approx(v).epsilon(1e-10));
  double e = (1 - xi) * (0.5 * 0.5 + 3 * 0.8 * 0.5) - (1 - xi) * (1 - xi) / 2 * 2;
  CHECK(r.e_frac == doctest::Approx(e).epsilon(1e-10));
}

TEST_CASE("giant_bond examples") {
  auto r = giant_bond(DegreeDistribution::point_mass(3), 0.6);
  CHECK(r.rho == doctest::Approx((1.0 / 3) / std::sqrt(0.6)).epsilon(1e-10));
  CHECK(r.rho == doctest::Approx(0.430331482911939).epsilon(1e-11));
  CHECK(r.v_frac == doctest::Approx(19.0 / 27).epsilon(1e-12));
  for (auto& d : zoo()) CHECK(giant_bond(d, giant_threshold(d) * 0.8).v_frac == 0.0);
  // Poisson(5), pi = 0.5: bond-percolated law is Poisson(2.5), giant 1 - exp(-2.5 v) = v
  auto p = giant_bond(DegreeDistribution::poisson(5), 0.5);
  double v = 0.5;
  for (int i = 0; i < 500; ++i) v = 1 - std::exp(-2.5 * v);
  CHECK(p.v_frac == doctest::Approx(v).epsilon(1e-11));
  CHECK(p.v_frac == doctest::Approx(1 - DegreeDistribution::poisson(5).pgf(1 - std::sqrt(0.5) * p.rho)).epsilon(1e-12));
}

TEST_CASE("site and bond coupling identities") {
  for (auto& d : zoo())
    for (int i = 1; i <= 50; ++i) {
      double pi = i / 51.0;
      auto s = giant_site(d, pi);
      auto b = giant_bond(d, pi);
      CHECK(std::abs(s.rho - std::sqrt(pi) * b.rho) < 1e-9);
      CHECK(std::abs(s.v_frac - pi * b.v_frac) < 1e-9);
      CHECK(std::abs(s.e_frac - pi * b.e_frac) < 1e-9);
    }
}

TEST_CASE("monotone in pi") {
  for (auto& d : zoo()) {
    double ps = 0, pb = 0;
    for (int i = 0; i <= 100; ++i) {
      double pi = i / 100.0;
      double vs = giant_site(d, pi).v_frac, vb = giant_bond(d, pi).v_frac;
      CHECK(vs >= ps - 1e-12);
      CHECK(vb >= pb - 1e-12);
      ps = vs;
      pb = vb;
    }
  }
}

TEST_CASE("continuity at the threshold") {
  for (auto& d : zoo()) {
    double pc = giant_threshold(d);
    if (!(pc > 0 && pc < 1)) continue;
    double prev = 1;
    for (int k = 2; k <= 6; ++k) {
      double v = giant_site(d, pc + std::pow(10.0, -k)).v_frac;
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 1e-3);
  }
}

TEST_CASE("residuals of the defining equations") {
  for (auto& d : zoo())
    for (double pi : {0.35, 0.6, 0.9, 1.0}) {
      auto s = giant_site(d, pi);
      if (s.supercritical) {
        double res = pi * (d.mean() - d.pgf(s.xi, 1)) - d.mean() * (1 - s.xi);
        CHECK(std::abs(res) < 1e-10);
      }
      auto b = giant_bond(d, pi);
      if (b.supercritical) {
        double r = std::sqrt(pi);
        double res = r * d.pgf(1 - r + r * b.xi, 1) + (1 - r) * d.mean() - d.mean() * b.xi;
        CHECK(std::abs(res) < 1e-10);
      }
    }
}

TEST_CASE("agreement with the branching extinction probability") {
  for (auto& d : zoo()) {
    CHECK(std::abs(survival_probability(d) - (1 - solve_xi_base(d))) < 1e-9);
    for (double pi : {0.5, 0.8}) {
      // bond percolation leaves a configuration model with degree law D_pi
      double rho = giant_bond(d, pi).rho;
      CHECK(std::abs(survival_probability(thin(d, pi)) - rho / std::sqrt(pi)) < 1e-8);
    }
  }
}

TEST_CASE("degenerate family flags") {
  auto r = giant_site(DegreeDistribution::point_mass(2), 1.0);
  CHECK(r.degenerate);
  CHECK_FALSE(r.supercritical);
  CHECK(giant_site(DegreeDistribution::table({0.5, 0, 0.5}), 0.7).degenerate);
  CHECK(giant_site(DegreeDistribution::point_mass(3), 0.5).near_threshold);
}

TEST_CASE("critical expansion") {
  auto pm = critical_expansion(DegreeDistribution::point_mass(3), 1e-4);
  CHECK(pm.predicted_rho_v / 1e-4 == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(pm.rho_v / 1e-4 / 4.0 - 1) < 0.02);
  auto po = critical_expansion(DegreeDistribution::poisson(4), 1e-4);
  CHECK(std::abs(po.rho_v / po.predicted_rho_v - 1) < 0.02);
  auto pl = DegreeDistribution::power_law(3.5, 2);
  auto a = critical_expansion(pl, 1e-4), b = critical_expansion(pl, 1e-3);
  CHECK(a.exponent == doctest::Approx(2.0));
  double slope = std::log(b.rho_v / a.rho_v) / std::log(10.0);
  CHECK(std::abs(slope - 2) < 0.05);
  CHECK(std::abs(a.rho_v / a.predicted_rho_v - 1) < 0.05);
  CHECK_THROWS_AS(critical_expansion(thin(pl, 0.9), 1e-4), UnsupportedRegimeError);
}
