#include "perclab/analytic_kcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "perclab/errors.hpp"
#include "perclab/numerics.hpp"

namespace perclab {

// KCoreFunctions ---------------------------------------------------------------

KCoreFunctions::KCoreFunctions(const DegreeDistribution& dist, int k)
    : dist_(dist), k_(k), lambda_(dist.mean()), kind_(Kind::pgf) {
  if (k < 2) throw std::invalid_argument("k-core: k must be >= 2");
  if (!dist.is_base()) return;
  switch (dist.family()) {
    case DegreeDistribution::Family::table:
      kind_ = Kind::table;
      for (auto& [l, w] : dist.table_entries())
        if (l >= k) {
          deg_.push_back(l);
          w_.push_back(w);
        }
      break;
    case DegreeDistribution::Family::poisson:
      kind_ = Kind::poisson_mix;
      comps_ = {{1.0, dist.poisson_mean()}};
      break;
    case DegreeDistribution::Family::poisson_mixture:
      kind_ = Kind::poisson_mix;
      comps_ = dist.mixture_components();
      break;
    case DegreeDistribution::Family::power_law:
      break;
  }
}

double KCoreFunctions::h(double p) const {
  if (!(p >= 0 && p <= 1)) throw std::domain_error("h: p must lie in [0, 1]");
  if (p == 0) return 0.0;
  num::CompensatedSum s;
  switch (kind_) {
    case Kind::table:
      // E D_p 1{D_p >= k} given D = l equals l p P(Bi(l-1, p) >= k-1).
      for (std::size_t i = 0; i < deg_.size(); ++i) {
        double l = double(deg_[i]);
        s += w_[i] * l * p * boost::math::ibeta(double(k_ - 1), l - k_ + 1, p);
      }
      return s.value();
    case Kind::poisson_mix:
      for (auto& c : comps_) {
        double mu = c.mean * p;
        if (mu > 0) s += c.weight * mu * boost::math::gamma_p(double(k_ - 1), mu);
      }
      return s.value();
    case Kind::pgf:
      break;
  }
  return h_pgf(p);
}

double KCoreFunctions::h1(double p) const {
  if (!(p >= 0 && p <= 1)) throw std::domain_error("h1: p must lie in [0, 1]");
  if (p == 0) return 0.0;
  num::CompensatedSum s;
  switch (kind_) {
    case Kind::table:
      for (std::size_t i = 0; i < deg_.size(); ++i)
        s += w_[i] * boost::math::ibeta(double(k_), double(deg_[i]) - k_ + 1, p);
      return s.value();
    case Kind::poisson_mix:
      for (auto& c : comps_) {
        double mu = c.mean * p;
        if (mu > 0) s += c.weight * boost::math::gamma_p(double(k_), mu);
      }
      return s.value();
    case Kind::pgf:
      break;
  }
  return h1_pgf(p);
}

// h(p) = lambda p - sum_{j=1}^{k-1} p^j/(j-1)! g^{(j)}(1-p); the j = 1 term is folded into
// the deficit g'(1) - g'(1-p) to avoid cancelling lambda p.
double KCoreFunctions::h_pgf(double p) const {
  double x = 1.0 - p;
  double val = p * dist_.pgf_deficit(1, p);
  double coef = p;  // p^j / (j-1)!
  for (int j = 2; j <= k_ - 1; ++j) {
    coef *= p / double(j - 1);
    val -= coef * dist_.pgf(x, j);
  }
  return std::max(0.0, val);
}

double KCoreFunctions::h1_pgf(double p) const {
  double x = 1.0 - p;
  double val = dist_.pgf_deficit(0, p);
  double coef = 1.0;  // p^j / j!
  for (int j = 1; j <= k_ - 1; ++j) {
    coef *= p / double(j);
    val -= coef * dist_.pgf(x, j);
  }
  return std::clamp(val, 0.0, 1.0);
}

double KCoreFunctions::phi(double p) const {
  if (!(p > 0 && p <= 1)) throw std::domain_error("phi: p must lie in (0, 1]");
  return h(p) / (p * p);
}

double KCoreFunctions::phi_derivative(double p, int order) const {
  static constexpr double step[] = {1e-3, 1e-2, 3e-2, 5e-2, 8e-2};
  auto f = [&](double q) { return phi(q); };
  if (p >= 1.0) return num::derivative(f, 1.0, order, step[order - 1] * 0.5, true);
  double room = std::min(p, 1.0 - p);
  return num::derivative(f, p, order, step[order - 1] * room / 2.0);
}

double h_func(const DegreeDistribution& dist, int k, double p) { return KCoreFunctions(dist, k).h(p); }
double h1_func(const DegreeDistribution& dist, int k, double p) { return KCoreFunctions(dist, k).h1(p); }
double phi_func(const DegreeDistribution& dist, int k, double p) { return KCoreFunctions(dist, k).phi(p); }

// Grid and threshold ----------------------------------------------------------------

std::vector<double> kcore_grid(int level, std::size_t uniform, std::size_t log_points) {
  const std::size_t nu = uniform << level, nl = log_points << level;
  std::vector<double> g;
  g.reserve(nu + nl);
  const double lo = std::log(1e-8), hi = std::log(1e-4);
  for (std::size_t i = 0; i < nl; ++i) g.push_back(std::exp(lo + (hi - lo) * double(i) / double(nl)));
  for (std::size_t i = 0; i < nu; ++i) g.push_back(1e-4 + (1.0 - 1e-4) * double(i) / double(nu - 1));
  g.back() = 1.0;
  return g;
}

namespace {

std::vector<double> eval_phi(const KCoreFunctions& F, const std::vector<double>& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = F.phi(grid[i]);
  return v;
}

double phi_limit_at_zero(const DegreeDistribution& dist, int k) {
  double m2 = dist.factorial_moment(2);
  if (k == 2) return m2;
  if (std::isfinite(m2)) return 0.0;
  auto gamma = dist.power_law_exponent();
  if (gamma && *gamma < 3.0) return num::inf;
  return std::nan("");
}

ThresholdInfo threshold_from(const KCoreFunctions& F, const std::vector<double>& grid,
                             const std::vector<double>& vals) {
  ThresholdInfo info;
  std::size_t i = std::size_t(std::max_element(vals.begin(), vals.end()) - vals.begin());
  double a = grid[i == 0 ? 0 : i - 1], b = grid[std::min(i + 1, grid.size() - 1)];
  double ps = num::golden_max([&](double p) { return F.phi(p); }, a, b, 1e-13);
  double fs = F.phi(ps);
  if (fs >= vals[i]) {
    info.p_star = ps;
    info.sup_phi = fs;
  } else {
    info.p_star = grid[i];
    info.sup_phi = vals[i];
  }
  info.limit_at_0 = phi_limit_at_zero(F.dist(), F.k());
  if (!std::isnan(info.limit_at_0) && info.limit_at_0 >= info.sup_phi) {
    info.attained = false;
    info.sup_phi = info.limit_at_0;
    info.p_star = 0.0;
  }
  if (std::isinf(info.sup_phi))
    info.pi_c = 0.0;
  else if (info.sup_phi <= 0)
    info.pi_c = num::inf;
  else
    info.pi_c = F.lambda() / info.sup_phi;
  return info;
}

// Largest p in (0, 1] with pi * phi(p) >= lambda, scanning the grid from 1 downward.
std::optional<double> largest_root(const KCoreFunctions& F, double pi, const std::vector<double>& grid,
                                   double extra_point) {
  const double lambda = F.lambda();
  auto G = [&](double p) { return pi * F.phi(p) - lambda; };
  if (G(1.0) >= -1e-12 * lambda) return 1.0;
  std::vector<double> pts = grid;
  if (extra_point > 0 && extra_point < 1) pts.insert(std::upper_bound(pts.begin(), pts.end(), extra_point), extra_point);
  for (std::size_t idx = pts.size() - 1; idx-- > 0;) {
    if (G(pts[idx]) >= 0) return num::bisect(G, pts[idx], pts[idx + 1], 1e-300, 1e-14);
  }
  return std::nullopt;
}

}  // namespace

ThresholdInfo kcore_threshold_info(const DegreeDistribution& dist, int k) {
  KCoreFunctions F(dist, k);
  auto grid = kcore_grid();
  return threshold_from(F, grid, eval_phi(F, grid));
}

double kcore_threshold(const DegreeDistribution& dist, int k) { return kcore_threshold_info(dist, k).pi_c; }

// Sizes ------------------------------------------------------------------------------

namespace {

KCoreReport kcore_common(const DegreeDistribution& dist, int k, double pi, bool site) {
  if (!(pi >= 0 && pi <= 1)) throw std::invalid_argument("k-core: pi must lie in [0, 1]");
  KCoreFunctions F(dist, k);
  auto grid = kcore_grid();
  auto info = threshold_from(F, grid, eval_phi(F, grid));
  KCoreReport r;
  r.k = k;
  r.pi = pi;
  r.pi_c = info.pi_c;
  r.near_threshold = std::abs(pi - info.pi_c) < 1e-9;
  if (pi == 0) return r;
  auto root = largest_root(F, pi, grid, info.p_star);
  if (!root) return r;
  const double p = *root;
  r.p_max = p;
  r.empty = false;
  const double weight = site ? pi : 1.0;
  r.v_frac = weight * F.h1(p);
  r.e_frac = site ? F.lambda() * p * p / 2 : F.lambda() * p * p / (2 * pi);
  std::int64_t jmax = dist.max_degree() ? *dist.max_degree() : std::min<std::int64_t>(dist.effective_cutoff(1e-15), 256);
  jmax = std::min<std::int64_t>(jmax, 4096);
  DegreeDistribution dp = thin(dist, p);
  r.profile.assign(std::size_t(std::max<std::int64_t>(jmax, k - 1)) + 1, 0.0);
  for (std::int64_t j = k; j <= jmax; ++j) r.profile[std::size_t(j)] = weight * dp.pmf(j);

  if (p >= 1.0) {
    r.at_local_max = F.phi_derivative(1.0) >= 0;
  } else {
    double f0 = F.phi(p);
    double scale = std::max(1.0, std::abs(f0));
    double d = 1e-4 * std::min(p, 1 - p);
    r.at_local_max = std::abs(F.phi_derivative(p)) <= 1e-6 * scale && F.phi(p - d) <= f0 && F.phi(p + d) <= f0;
  }
  return r;
}

}  // namespace

KCoreReport kcore_site(const DegreeDistribution& dist, int k, double pi) { return kcore_common(dist, k, pi, true); }
KCoreReport kcore_bond(const DegreeDistribution& dist, int k, double pi) { return kcore_common(dist, k, pi, false); }

// Transitions ---------------------------------------------------------------------------

std::string to_string(PhaseTransition::Order o) {
  switch (o) {
    case PhaseTransition::Order::first_order:
      return "first-order";
    case PhaseTransition::Order::continuous:
      return "continuous";
    case PhaseTransition::Order::boundary_at_1:
      return "boundary-at-1";
    case PhaseTransition::Order::threshold_sup_not_attained:
      return "threshold-sup-not-attained";
  }
  return "unknown";
}

namespace {

// Largest p < below with phi(p) > level (0 if none).
double last_crossing_below(const KCoreFunctions& F, const std::vector<double>& grid,
                           const std::vector<double>& vals, double below, double level) {
  auto it = std::lower_bound(grid.begin(), grid.end(), below);
  std::size_t idx = std::size_t(it - grid.begin());
  while (idx-- > 0) {
    if (vals[idx] > level) {
      double hi = idx + 1 < grid.size() ? std::min(grid[idx + 1], below) : below;
      return num::bisect([&](double p) { return F.phi(p) - level; }, grid[idx], hi, 1e-300, 1e-14);
    }
  }
  return 0.0;
}

std::vector<PhaseTransition> transitions_at_level(const KCoreFunctions& F, int level, const TransitionOptions& opt) {
  const auto grid = kcore_grid(level, opt.uniform, opt.log_points);
  const auto vals = eval_phi(F, grid);
  const std::size_t n = grid.size();
  const double lambda = F.lambda();
  const auto info = threshold_from(F, grid, vals);
  auto phi = [&](double p) { return F.phi(p); };

  double scale = 0;
  for (double v : vals) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1e-300);

  std::vector<int> sign(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double d = vals[i + 1] - vals[i];
    double tol = 1e-12 * std::max(std::abs(vals[i]), std::abs(vals[i + 1]));
    sign[i] = d > tol ? 1 : (d < -tol ? -1 : 0);
  }
  std::vector<double> suffix(n);
  suffix[n - 1] = vals[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) suffix[i] = std::max(vals[i], suffix[i + 1]);

  auto is_bad = [&](double p, double value) {
    if (!(p > 0 && p < 1) || !(value > lambda * (1 + 1e-12))) return false;
    auto it = std::upper_bound(grid.begin(), grid.end(), p * (1 + 1e-12));
    if (it == grid.end()) return true;
    double right = suffix[std::size_t(it - grid.begin())];
    return value > right + 1e-12 * std::abs(value);
  };

  std::vector<PhaseTransition> out;
  auto add = [&](double p, PhaseTransition::Order order) {
    for (auto& t : out)
      if (std::abs(t.p_tilde - p) < 1e-9) return;
    double value = F.phi(p);
    if (!is_bad(p, value)) return;
    PhaseTransition t;
    t.p_tilde = p;
    t.pi_tilde = lambda / value;
    t.order = order;
    if (order == PhaseTransition::Order::first_order) {
      double left = last_crossing_below(F, grid, vals, p, value * (1 + 1e-12));
      t.jump = t.pi_tilde * (F.h1(p) - F.h1(left));
    }
    out.push_back(t);
  };

  // Local maxima: a rise followed (possibly after a flat stretch) by a fall.
  int last = 0;
  std::size_t run_start = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (sign[i] == 0) continue;
    if (sign[i] == -1 && last == 1) {
      std::size_t best = run_start;
      for (std::size_t j = run_start; j <= i; ++j)
        if (vals[j] > vals[best]) best = j;
      double a = grid[best == 0 ? 0 : best - 1], b = grid[std::min(best + 1, n - 1)];
      add(num::golden_max(phi, a, b, 1e-14), PhaseTransition::Order::first_order);
    }
    last = sign[i];
    run_start = i + 1;
  }

  // Inflection points with phi' = 0 inside a decreasing stretch.
  std::vector<double> slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) slope[i] = (vals[i + 1] - vals[i]) / (grid[i + 1] - grid[i]);
  for (std::size_t i = 1; i + 2 < n; ++i) {
    if (!(slope[i - 1] < 0 && slope[i] <= 0 && slope[i + 1] < 0)) continue;
    double m = std::abs(slope[i]);
    if (!(m <= std::abs(slope[i - 1]) && m <= std::abs(slope[i + 1]) && m <= 1e-6 * scale)) continue;
    double p = num::golden_max([&](double q) { return -std::abs(F.phi_derivative(q)); }, grid[i - 1], grid[i + 2], 1e-12);
    if (std::abs(F.phi_derivative(p)) > 1e-7 * scale) continue;
    int first = 0;
    double value = 0;
    for (int r = 2; r <= 5; ++r) {
      double d = F.phi_derivative(p, r);
      if (std::abs(d) > 1e-4 * scale) {
        first = r;
        value = d;
        break;
      }
    }
    if (first % 2 == 1 && value < 0) add(p, PhaseTransition::Order::continuous);
  }

  // p = 1 is a further transition when phi(1) = lambda and phi does not decrease into 1.
  if (std::abs(vals[n - 1] - lambda) <= 1e-12 * std::max(1.0, lambda) &&
      F.phi_derivative(1.0) >= -1e-9 * std::max(1.0, lambda)) {
    PhaseTransition t;
    t.p_tilde = 1.0;
    t.pi_tilde = 1.0;
    t.order = PhaseTransition::Order::boundary_at_1;
    double left = last_crossing_below(F, grid, vals, 1.0, lambda * (1 + 1e-12));
    t.jump = F.h1(1.0) - F.h1(left);
    out.push_back(t);
  }

  if (!info.attained && std::isfinite(info.sup_phi) && info.sup_phi > lambda * (1 + 1e-12)) {
    PhaseTransition t;
    t.p_tilde = 0.0;
    t.pi_tilde = info.pi_c;
    t.order = PhaseTransition::Order::threshold_sup_not_attained;
    out.push_back(t);
  }

  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.pi_tilde < b.pi_tilde; });
  return out;
}

}  // namespace

std::vector<PhaseTransition> enumerate_transitions(const DegreeDistribution& dist, int k,
                                                   const TransitionOptions& opt) {
  KCoreFunctions F(dist, k);
  std::vector<std::vector<PhaseTransition>> levels;
  for (int level = 0; level <= opt.max_level; ++level) {
    levels.push_back(transitions_at_level(F, level, opt));
    std::size_t L = levels.size();
    if (L >= 3 && levels[L - 1].size() == levels[L - 2].size() && levels[L - 2].size() == levels[L - 3].size())
      return levels.back();
  }
  // Report the first candidate of the finest level that the previous level does not reproduce.
  const auto& fine = levels.back();
  const auto& coarse = levels[levels.size() - 2];
  double lo = 0, hi = 1;
  for (auto& t : fine) {
    bool matched = std::any_of(coarse.begin(), coarse.end(),
                               [&](auto& c) { return std::abs(c.p_tilde - t.p_tilde) < 1e-6; });
    if (!matched) {
      lo = t.p_tilde * (1 - 1e-3);
      hi = std::min(1.0, t.p_tilde * (1 + 1e-3));
      break;
    }
  }
  throw UnresolvedTransitionError("enumerate_transitions: candidate count did not stabilize", lo, hi);
}

std::vector<CurvePoint> kcore_curve(const DegreeDistribution& dist, int k, const std::vector<double>& grid) {
  KCoreFunctions F(dist, k);
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double p : grid) {
    double h = F.h(p);
    out.push_back({p, h / (p * p), h, F.h1(p)});
  }
  return out;
}

// Poisson mixtures and the dyadic example -------------------------------------------------

double poisson_mixture_phi(const std::vector<PoissonComponent>& mixture, int k, double p) {
  if (k < 2) throw std::invalid_argument("poisson_mixture_phi: k must be >= 2");
  if (!(p > 0 && p <= 1)) throw std::domain_error("poisson_mixture_phi: p must lie in (0, 1]");
  std::vector<double> terms;
  for (auto& c : mixture) {
    double x = c.mean * p;
    if (x > 0) terms.push_back(c.weight * c.mean * c.mean * boost::math::gamma_p(double(k - 1), x) / x);
  }
  return num::sum_ascending(std::move(terms));
}

double dyadic_f(double x) {
  if (!(x > 0)) return 0.0;
  return boost::math::gamma_p(2.0, x) / x;
}

double dyadic_phi(double p) {
  if (!(p > 0)) throw std::domain_error("dyadic_phi: p must be positive");
  std::vector<double> terms;
  for (int i = 1; i < 2000; ++i) {
    double x = std::ldexp(p, i);
    terms.push_back(dyadic_f(x));
    if (x > 1e20) break;
  }
  return num::sum_ascending(std::move(terms));
}

double dyadic_psi(double x) {
  if (!(x > 0)) throw std::domain_error("dyadic_psi: x must be positive");
  int lo = int(std::floor(std::log2(1e-20 / x)));
  int hi = int(std::ceil(std::log2(1e20 / x)));
  std::vector<double> terms;
  for (int i = lo; i <= hi; ++i) terms.push_back(dyadic_f(std::ldexp(x, i)));
  return num::sum_ascending(std::move(terms));
}

std::complex<double> psi_fourier(int n) {
  const double ln2 = std::numbers::ln2;
  const double w = 2 * std::numbers::pi * n;
  return num::complex_gamma({1.0, -w / ln2}) / std::complex<double>(ln2, w);
}

std::complex<double> psi_fourier_quadrature(int n, int points) {
  // y -> psi(2^y) is smooth and 1-periodic, so the trapezoid rule converges geometrically.
  std::complex<double> acc = 0;
  for (int m = 0; m < points; ++m) {
    double y = double(m) / points;
    acc += dyadic_psi(std::exp2(y)) * std::polar(1.0, -2 * std::numbers::pi * n * y);
  }
  return acc / double(points);
}

double psi_oscillation_amplitude(int points) {
  const double mean = 1.0 / std::numbers::ln2;
  double amp = 0;
  for (int m = 0; m < points; ++m) amp = std::max(amp, std::abs(dyadic_psi(std::exp2(double(m) / points)) - mean));
  return amp;
}

}  // namespace perclab
