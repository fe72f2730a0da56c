#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace perclab::num {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Sum after sorting by magnitude, smallest first.
double sum_ascending(std::vector<double> terms);

// Upper incomplete gamma Gamma(s, z) for real s and z > 0.
double upper_gamma(double s, double z);

// sum_{k >= n0} k^{-a} e^{-t k} for integer n0 >= 1, t >= 0.
// Returns +inf when t == 0 and a <= 1.
double power_exp_tail(double a, double t, std::int64_t n0);

// Hurwitz zeta at integer offset: sum_{k >= n0} k^{-s}, s > 1.
inline double zeta_tail(double s, std::int64_t n0) { return power_exp_tail(s, 0.0, n0); }

// Signed Stirling numbers of the first kind s(r, m), m = 0..r.
std::vector<double> stirling_first_row(int r);

// Falling factorial (l)_r as a double, exact for moderate arguments.
double falling_factorial(double l, int r);

std::complex<double> complex_gamma(std::complex<double> z);

// Bisection on [lo, hi] where f(lo) and f(hi) have opposite signs (f(hi) may be 0).
// Stops when hi - lo <= max(abs_tol, rel_tol * max(|lo|, |hi|)).
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double abs_tol = 1e-15, double rel_tol = 1e-14, int max_iter = 400);

// Golden-section search for a maximizer of f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-12, int max_iter = 300);

// Derivatives of f at x by central differences with Richardson extrapolation.
// order in 1..5; one_sided_left uses backward differences (for the endpoint p = 1).
double derivative(const std::function<double(double)>& f, double x, int order, double h,
                  bool one_sided_left = false);

double binomial_pmf(std::int64_t n, std::int64_t j, double p);
double poisson_pmf(double mu, std::int64_t j);

}  // namespace perclab::num
