#include "perclab/numerics.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace perclab::num {

double sum_ascending(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  CompensatedSum s;
  for (double t : terms) s += t;
  return s.value();
}

double binomial_pmf(std::int64_t n, std::int64_t j, double p) {
  if (j < 0 || j > n) return 0.0;
  if (p <= 0.0) return j == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return j == n ? 1.0 : 0.0;
  boost::math::binomial_distribution<double> b(double(n), p);
  return boost::math::pdf(b, double(j));
}

double poisson_pmf(double mu, std::int64_t j) {
  if (j < 0) return 0.0;
  if (mu <= 0.0) return j == 0 ? 1.0 : 0.0;
  if (j == 0) return std::exp(-mu);
  // gamma_p_derivative(j+1, mu) = e^{-mu} mu^j / j!
  return boost::math::gamma_p_derivative(double(j) + 1.0, mu);
}

namespace {

// Legendre continued fraction, modified Lentz. Valid for z > 0, any s; used for z >= 1.5.
double upper_gamma_cf(double s, double z) {
  const double tiny = 1e-300;
  double b = z + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    double an = -double(i) * (double(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-z + s * std::log(z)) * h;
}

}  // namespace

double upper_gamma(double s, double z) {
  if (!(z > 0)) throw std::domain_error("upper_gamma: z must be positive");
  if (z >= 1.5) return upper_gamma_cf(s, z);
  if (s > 0) return boost::math::tgamma(s, z);
  if (s == 0) return boost::math::expint(1, z);
  int steps = int(std::ceil(-s));
  double base_s = s + steps;  // in [0, 1)
  double g = base_s == 0 ? boost::math::expint(1, z) : boost::math::tgamma(base_s, z);
  double ez = std::exp(-z);
  for (int i = 0; i < steps; ++i) {
    double cur = base_s - 1.0 - i;
    g = (g - std::pow(z, cur) * ez) / cur;
  }
  return g;
}

namespace {

constexpr std::array<double, 7> kBernoulli2j = {1.0 / 6,  -1.0 / 30, 1.0 / 42,   -1.0 / 30,
                                                5.0 / 66, -691.0 / 2730, 7.0 / 6};

double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

double power_exp_tail(double a, double t, std::int64_t n0) {
  if (t < 0) throw std::domain_error("power_exp_tail: negative t");
  if (n0 < 1) throw std::domain_error("power_exp_tail: start index must be >= 1");
  if (t == 0 && a <= 1) return inf;

  if (t >= 0.5) {
    CompensatedSum s;
    double peak = a < 0 ? -a / t : 0.0;
    for (std::int64_t k = n0;; ++k) {
      double term = std::exp(-a * std::log(double(k)) - t * double(k));
      s += term;
      if (double(k) > peak && term <= 1e-18 * s.value()) break;
      if (double(k) > peak && s.value() == 0.0) break;
    }
    return s.value();
  }

  std::int64_t m = std::max<std::int64_t>(n0, 64 + std::int64_t(std::ceil(4 * std::abs(a))));
  CompensatedSum s;
  for (std::int64_t k = n0; k < m; ++k) s += std::exp(-a * std::log(double(k)) - t * double(k));

  double M = double(m);
  if (t * M > 745) return s.value();
  double integral;
  if (t == 0 || t * M < 1e-200)
    integral = std::pow(M, 1 - a) / (a - 1);
  else
    integral = std::pow(t, a - 1) * upper_gamma(1 - a, t * M);

  double em = std::exp(-t * M);
  // power derivatives P_i M^{-a-i}
  constexpr int J = 7;
  std::array<double, 2 * J> pw{};
  double pi = 1.0;
  for (int i = 0; i < 2 * J; ++i) {
    pw[i] = pi * std::pow(M, -a - i);
    pi *= (-a - i);
  }
  auto deriv = [&](int order) {
    // d^order/dk^order [k^{-a} e^{-tk}] at M, without the e^{-tM} factor
    double acc = 0;
    double binom = 1;
    for (int i = 0; i <= order; ++i) {
      if (i > 0) binom = binom * (order - i + 1) / i;
      acc += binom * std::pow(-t, order - i) * pw[i];
    }
    return acc;
  };
  double corr = 0.5 * pw[0];
  for (int j = 1; j <= J; ++j) corr -= kBernoulli2j[j - 1] / factorial(2 * j) * deriv(2 * j - 1);
  s += integral;
  s += em * corr;
  return s.value();
}

std::vector<double> stirling_first_row(int r) {
  std::vector<double> row{1.0};
  for (int n = 0; n < r; ++n) {
    std::vector<double> next(row.size() + 1, 0.0);
    for (std::size_t k = 0; k < row.size(); ++k) {
      next[k + 1] += row[k];
      next[k] -= double(n) * row[k];
    }
    row = std::move(next);
  }
  return row;
}

double falling_factorial(double l, int r) {
  double out = 1.0;
  for (int i = 0; i < r; ++i) out *= (l - i);
  return out;
}

std::complex<double> complex_gamma(std::complex<double> z) {
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const double pi = 3.14159265358979323846;
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
  z -= 1.0;
  std::complex<double> x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + double(i));
  std::complex<double> t = z + 7.5;
  return std::sqrt(2 * pi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
              double rel_tol, int max_iter) {
  bool lo_positive = f(lo) > 0;
  for (int i = 0; i < max_iter; ++i) {
    if (hi - lo <= std::max(abs_tol, rel_tol * std::max(std::abs(lo), std::abs(hi)))) break;
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == lo_positive)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol,
                  int max_iter) {
  const double invphi = (std::sqrt(5.0) - 1) / 2;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  // endpoints may beat the interior bracket when the maximum sits on the boundary
  double best = fc >= fd ? c : d;
  double fbest = std::max(fc, fd);
  double fa = f(a), fb = f(b);
  if (fa > fbest) {
    best = a;
    fbest = fa;
  }
  if (fb > fbest) best = b;
  return best;
}

namespace {

double central(const std::function<double(double)>& f, double x, int order, double h) {
  switch (order) {
    case 1:
      return (f(x + h) - f(x - h)) / (2 * h);
    case 2:
      return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    case 3:
      return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
    case 4:
      return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) / std::pow(h, 4);
    case 5:
      return (f(x + 3 * h) - 4 * f(x + 2 * h) + 5 * f(x + h) - 5 * f(x - h) + 4 * f(x - 2 * h) -
              f(x - 3 * h)) /
             (2 * std::pow(h, 5));
    default:
      throw std::invalid_argument("derivative: order must be in 1..5");
  }
}

double backward(const std::function<double(double)>& f, double x, int order, double h) {
  if (order == 1) return (3 * f(x) - 4 * f(x - h) + f(x - 2 * h)) / (2 * h);
  // plain order-th backward difference
  double acc = 0;
  double binom = 1;
  for (int i = 0; i <= order; ++i) {
    if (i > 0) binom = binom * (order - i + 1) / i;
    acc += ((i % 2) ? -1.0 : 1.0) * binom * f(x - i * h);
  }
  return acc / std::pow(h, order);
}

}  // namespace

double derivative(const std::function<double(double)>& f, double x, int order, double h,
                  bool one_sided_left) {
  if (order < 1 || order > 5) throw std::invalid_argument("derivative: order must be in 1..5");
  if (one_sided_left) {
    double d1 = backward(f, x, order, h);
    double d2 = backward(f, x, order, h / 2);
    return order == 1 ? (4 * d2 - d1) / 3 : 2 * d2 - d1;
  }
  double d1 = central(f, x, order, h);
  double d2 = central(f, x, order, h / 2);
  return (4 * d2 - d1) / 3;
}

}  // namespace perclab::num
