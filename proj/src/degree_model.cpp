#include "perclab/degree_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "perclab/errors.hpp"
#include "perclab/numerics.hpp"

namespace perclab {

namespace {

constexpr double kSumTol = 1e-12;
constexpr std::int64_t kPowerHead = 1024;   // exact terms before the Euler-Maclaurin tail
constexpr int kStirlingMaxOrder = 8;
constexpr std::int64_t kDenseThinLimit = 4096;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double safe_term(double w, double l, int r, double x) {
  // w * (l)_r * x^{l-r}
  double ff = num::falling_factorial(l, r);
  double e = l - r;
  if (std::isfinite(ff) && ff < 1e280) {
    if (e == 0) return w * ff;
    return w * ff * std::pow(x, e);
  }
  if (x == 0) return 0.0;
  double lg = std::log(w) + e * std::log(x);
  for (int i = 0; i < r; ++i) lg += std::log(l - i);
  return std::exp(lg);
}

double one_minus_pow(double t, double e) {
  // 1 - (1 - t)^e for t in (0, 1], e >= 0
  if (e == 0) return 0.0;
  if (t >= 1.0) return 1.0;
  return -std::expm1(e * std::log1p(-t));
}

}  // namespace

DegreeDistribution::DegreeDistribution(Base b) : base_(std::make_shared<const Base>(std::move(b))) {}

DegreeDistribution DegreeDistribution::sparse(std::vector<std::pair<std::int64_t, double>> entries) {
  std::sort(entries.begin(), entries.end());
  TableData t;
  double total = 0;
  for (auto [d, w] : entries) {
    if (d < 0) throw std::invalid_argument("degree table: negative degree");
    if (!(w >= 0) || !std::isfinite(w)) throw std::invalid_argument("degree table: invalid weight");
    total += w;
    if (w == 0) continue;
    if (!t.deg.empty() && t.deg.back() == d)
      t.w.back() += w;
    else {
      t.deg.push_back(d);
      t.w.push_back(w);
    }
  }
  if (std::abs(total - 1.0) > kSumTol) {
    std::ostringstream os;
    os << "degree table: probabilities sum to " << total << ", not 1";
    throw std::invalid_argument(os.str());
  }
  if (t.deg.empty()) throw std::invalid_argument("degree table: empty");
  return DegreeDistribution(std::move(t));
}

DegreeDistribution DegreeDistribution::point_mass(std::int64_t d) { return sparse({{d, 1.0}}); }

DegreeDistribution DegreeDistribution::two_point(std::int64_t d1, std::int64_t d2, double p1) {
  if (!(p1 >= 0 && p1 <= 1)) throw std::invalid_argument("two-point: weight outside [0,1]");
  return sparse({{d1, p1}, {d2, 1.0 - p1}});
}

DegreeDistribution DegreeDistribution::table(const std::vector<double>& probs) {
  std::vector<std::pair<std::int64_t, double>> e;
  for (std::size_t j = 0; j < probs.size(); ++j) e.emplace_back(std::int64_t(j), probs[j]);
  return sparse(std::move(e));
}

DegreeDistribution DegreeDistribution::poisson(double mean) {
  if (!(mean > 0) || !std::isfinite(mean)) throw std::invalid_argument("poisson: mean must be positive");
  return DegreeDistribution(PoissonData{mean});
}

DegreeDistribution DegreeDistribution::poisson_mixture(std::vector<PoissonComponent> comps) {
  MixtureData m;
  double total = 0, mean = 0;
  for (auto c : comps) {
    if (!(c.weight >= 0) || !(c.mean >= 0) || !std::isfinite(c.mean))
      throw std::invalid_argument("poisson mixture: invalid component");
    total += c.weight;
    mean += c.weight * c.mean;
    if (c.weight > 0) m.comps.push_back(c);
  }
  if (std::abs(total - 1.0) > kSumTol) throw std::invalid_argument("poisson mixture: weights must sum to 1");
  if (!(mean > 0)) throw std::invalid_argument("poisson mixture: mean degree must be positive");
  return DegreeDistribution(std::move(m));
}

DegreeDistribution DegreeDistribution::power_law(double gamma, std::int64_t k_min) {
  if (!(gamma > 2)) throw std::invalid_argument("power law: gamma must exceed 2 for a finite mean");
  if (k_min < 1) throw std::invalid_argument("power law: k_min must be >= 1");
  double z = num::zeta_tail(gamma, k_min);
  return DegreeDistribution(PowerLawData{gamma, k_min, 1.0 / z});
}

DegreeDistribution DegreeDistribution::truncated(std::int64_t max_degree) const {
  std::vector<std::pair<std::int64_t, double>> e;
  double total = 0;
  for (std::int64_t j = 0; j <= max_degree; ++j) {
    double p = pmf(j);
    if (p > 0) e.emplace_back(j, p);
    total += p;
  }
  if (!(total > 0)) throw std::invalid_argument("truncation leaves no mass");
  for (auto& [d, w] : e) w /= total;
  // renormalized weights sum to 1 up to rounding; rescale the largest entry to absorb it
  double s = 0;
  for (auto& [d, w] : e) s += w;
  auto it = std::max_element(e.begin(), e.end(), [](auto& a, auto& b) { return a.second < b.second; });
  it->second += 1.0 - s;
  return sparse(std::move(e));
}

DegreeDistribution DegreeDistribution::base_distribution() const { return DegreeDistribution(*base_); }

DegreeDistribution::Family DegreeDistribution::family() const {
  return std::visit(overloaded{[](const TableData&) { return Family::table; },
                               [](const PoissonData&) { return Family::poisson; },
                               [](const MixtureData&) { return Family::poisson_mixture; },
                               [](const PowerLawData&) { return Family::power_law; }},
                    *base_);
}

// ---------- base family evaluation ----------

double DegreeDistribution::base_factorial(int r) const {
  return std::visit(
      overloaded{
          [&](const TableData& t) {
            num::CompensatedSum s;
            for (std::size_t i = 0; i < t.deg.size(); ++i)
              if (t.deg[i] >= r) s += safe_term(t.w[i], double(t.deg[i]), r, 1.0);
            return s.value();
          },
          [&](const PoissonData& p) { return std::pow(p.lambda, r); },
          [&](const MixtureData& m) {
            num::CompensatedSum s;
            for (auto& c : m.comps) s += c.weight * std::pow(c.mean, r);
            return s.value();
          },
          [&](const PowerLawData& pl) {
            if (pl.gamma - r <= 1) return num::inf;
            std::int64_t n_head = pl.kmin + kPowerHead;
            num::CompensatedSum s;
            for (std::int64_t k = std::max<std::int64_t>(pl.kmin, r); k < n_head; ++k)
              s += pl.c * num::falling_factorial(double(k), r) * std::pow(double(k), -pl.gamma);
            auto st = num::stirling_first_row(r);
            for (int m = 0; m <= r; ++m)
              if (st[m] != 0) s += pl.c * st[m] * num::zeta_tail(pl.gamma - m, n_head);
            return s.value();
          }},
      *base_);
}

double DegreeDistribution::base_deriv(double x, int r) const {
  return std::visit(
      overloaded{
          [&](const TableData& t) {
            num::CompensatedSum s;
            for (std::size_t i = 0; i < t.deg.size(); ++i) {
              if (t.deg[i] < r) continue;
              if (x == 0 && t.deg[i] != r) continue;
              s += safe_term(t.w[i], double(t.deg[i]), r, x);
            }
            return s.value();
          },
          [&](const PoissonData& p) { return std::pow(p.lambda, r) * std::exp(-p.lambda * (1 - x)); },
          [&](const MixtureData& m) {
            num::CompensatedSum s;
            for (auto& c : m.comps) s += c.weight * std::pow(c.mean, r) * std::exp(-c.mean * (1 - x));
            return s.value();
          },
          [&](const PowerLawData& pl) -> double {
            if (x >= 1.0) {
              double f = base_factorial(r);
              if (!std::isfinite(f)) {
                std::ostringstream os;
                os << "PGF derivative of order " << r << " diverges at x=1 for power-law gamma=" << pl.gamma;
                throw UnboundedTailError(os.str());
              }
              return f;
            }
            if (x == 0) {
              if (r < pl.kmin) return 0.0;
              return pl.c * std::tgamma(double(r) + 1) * std::pow(double(r), -pl.gamma);
            }
            double t = -std::log(x);
            std::int64_t n_head = pl.kmin + kPowerHead;
            num::CompensatedSum s;
            if (r <= kStirlingMaxOrder) {
              for (std::int64_t k = std::max<std::int64_t>(pl.kmin, r); k < n_head; ++k)
                s += safe_term(pl.c * std::pow(double(k), -pl.gamma), double(k), r, x);
              if (t * double(n_head - r) < 745) {
                auto st = num::stirling_first_row(r);
                double xr = std::exp(t * r);
                for (int m = 0; m <= r; ++m)
                  if (st[m] != 0) s += pl.c * xr * st[m] * num::power_exp_tail(pl.gamma - m, t, n_head);
              }
              return s.value();
            }
            double peak = double(r) / t;
            for (std::int64_t k = std::max<std::int64_t>(pl.kmin, r);; ++k) {
              double term = safe_term(pl.c * std::pow(double(k), -pl.gamma), double(k), r, x);
              s += term;
              if (double(k) > peak && term <= 1e-17 * s.value() * std::min(1.0, t)) break;
              if (k > 100000000) throw UnboundedTailError("power-law PGF series does not converge fast enough");
            }
            return s.value();
          }},
      *base_);
}

double DegreeDistribution::base_deficit(int r, double t) const {
  if (t <= 0) return 0.0;
  return std::visit(
      overloaded{
          [&](const TableData& tb) {
            num::CompensatedSum s;
            for (std::size_t i = 0; i < tb.deg.size(); ++i) {
              if (tb.deg[i] <= r) continue;
              double l = double(tb.deg[i]);
              s += safe_term(tb.w[i], l, r, 1.0) * one_minus_pow(t, l - r);
            }
            return s.value();
          },
          [&](const PoissonData& p) { return -std::pow(p.lambda, r) * std::expm1(-p.lambda * t); },
          [&](const MixtureData& m) {
            num::CompensatedSum s;
            for (auto& c : m.comps) s += -c.weight * std::pow(c.mean, r) * std::expm1(-c.mean * t);
            return s.value();
          },
          [&](const PowerLawData& pl) -> double {
            if (pl.gamma - r <= 1) return num::inf;
            if (r > kStirlingMaxOrder) return base_factorial(r) - base_deriv(1 - t, r);
            std::int64_t n_head = pl.kmin + kPowerHead;
            num::CompensatedSum s;
            for (std::int64_t k = std::max<std::int64_t>(pl.kmin, r + 1); k < n_head; ++k)
              s += pl.c * num::falling_factorial(double(k), r) * std::pow(double(k), -pl.gamma) *
                   one_minus_pow(t, double(k - r));
            auto st = num::stirling_first_row(r);
            double tau = t >= 1.0 ? num::inf : -std::log1p(-t);
            bool tail_vanishes = !(tau * double(n_head - r) < 745);
            double xr = tail_vanishes ? 0.0 : std::exp(tau * r);
            for (int m = 0; m <= r; ++m) {
              if (st[m] == 0) continue;
              double z = num::zeta_tail(pl.gamma - m, n_head);
              double tt = tail_vanishes ? 0.0 : xr * num::power_exp_tail(pl.gamma - m, tau, n_head);
              s += pl.c * st[m] * (z - tt);
            }
            return s.value();
          }},
      *base_);
}

// ---------- public evaluation ----------

double DegreeDistribution::pgf(double x, int order) const {
  if (order < 0) throw std::invalid_argument("pgf: negative order");
  if (!(x >= -1e-15 && x <= 1 + 1e-15)) throw std::domain_error("pgf: x outside [0,1]");
  x = std::clamp(x, 0.0, 1.0);
  if (retention_ == 0) return order == 0 ? scale_ * base_deriv(1.0, shift_) : 0.0;
  double y = 1.0 - retention_ * (1.0 - x);
  return scale_ * std::pow(retention_, order) * base_deriv(y, shift_ + order);
}

double DegreeDistribution::pgf_deficit(int order, double t) const {
  if (order < 0) throw std::invalid_argument("pgf_deficit: negative order");
  if (!(t >= 0 && t <= 1 + 1e-15)) throw std::domain_error("pgf_deficit: t outside [0,1]");
  t = std::min(t, 1.0);
  if (retention_ == 0 || t == 0) return 0.0;
  return scale_ * std::pow(retention_, order) * base_deficit(shift_ + order, retention_ * t);
}

double DegreeDistribution::factorial_moment(int r) const {
  if (r < 0) throw std::invalid_argument("factorial_moment: negative order");
  if (retention_ == 0) return r == 0 ? 1.0 : 0.0;
  return scale_ * std::pow(retention_, r) * base_factorial(shift_ + r);
}

double DegreeDistribution::pmf(std::int64_t j) const {
  if (j < 0) return 0.0;
  if (is_base()) {
    return std::visit(overloaded{[&](const TableData& t) {
                                   auto it = std::lower_bound(t.deg.begin(), t.deg.end(), j);
                                   if (it == t.deg.end() || *it != j) return 0.0;
                                   return t.w[std::size_t(it - t.deg.begin())];
                                 },
                                 [&](const PoissonData& p) { return num::poisson_pmf(p.lambda, j); },
                                 [&](const MixtureData& m) {
                                   num::CompensatedSum s;
                                   for (auto& c : m.comps) s += c.weight * num::poisson_pmf(c.mean, j);
                                   return s.value();
                                 },
                                 [&](const PowerLawData& pl) {
                                   return j >= pl.kmin ? pl.c * std::pow(double(j), -pl.gamma) : 0.0;
                                 }},
                      *base_);
  }
  if (retention_ == 0) return j == 0 ? 1.0 : 0.0;
  const double b = retention_;
  const int s = shift_;
  // P = scale * sum_l p_l (l)_s C(l-s, j) b^j (1-b)^{l-s-j}
  return std::visit(
      overloaded{
          [&](const TableData& t) {
            num::CompensatedSum acc;
            for (std::size_t i = 0; i < t.deg.size(); ++i) {
              std::int64_t l = t.deg[i];
              if (l - s < j) continue;
              acc += t.w[i] * num::falling_factorial(double(l), s) * num::binomial_pmf(l - s, j, b);
            }
            return scale_ * acc.value();
          },
          [&](const PoissonData& p) { return scale_ * std::pow(p.lambda, s) * num::poisson_pmf(p.lambda * b, j); },
          [&](const MixtureData& m) {
            num::CompensatedSum acc;
            for (auto& c : m.comps) acc += c.weight * std::pow(c.mean, s) * num::poisson_pmf(c.mean * b, j);
            return scale_ * acc.value();
          },
          [&](const PowerLawData& pl) {
            std::int64_t k0 = std::max<std::int64_t>(pl.kmin, s + j);
            auto first = [&](std::int64_t k) {
              return pl.c * std::pow(double(k), -pl.gamma) * num::falling_factorial(double(k), s) *
                     num::binomial_pmf(k - s, j, b);
            };
            if (b >= 1.0) return k0 == s + j ? scale_ * first(k0) : 0.0;
            num::CompensatedSum acc;
            double term = first(k0);
            double peak = double(s) + double(j) / b;
            for (std::int64_t k = k0;; ++k) {
              acc += term;
              if (double(k) > peak && term <= 1e-17 * acc.value() * b) break;
              if (k - k0 > 200000000) throw UnboundedTailError("thinned power-law pmf series too slow");
              double kk = double(k);
              term *= (1 - b) * (kk + 1) / (kk + 1 - s - j) * std::pow(kk / (kk + 1), pl.gamma);
            }
            return scale_ * acc.value();
          }},
      *base_);
}

double DegreeDistribution::tail_mass(std::int64_t cutoff) const {
  if (cutoff < 0) return 1.0;
  if (retention_ == 0) return 0.0;
  const int s = shift_;
  return std::visit(
      overloaded{
          [&](const TableData& t) {
            if (s == 0) {
              double acc = 0;
              for (std::size_t i = 0; i < t.deg.size(); ++i)
                if (t.deg[i] > cutoff) acc += t.w[i];
              return acc;
            }
            double acc = 0;
            for (std::size_t i = 0; i < t.deg.size(); ++i)
              if (t.deg[i] - s > cutoff) acc += t.w[i] * num::falling_factorial(double(t.deg[i]), s);
            return std::min(1.0, scale_ * acc);
          },
          [&](const PoissonData& p) {
            double mu = p.lambda * retention_;
            return boost::math::gamma_p(double(cutoff) + 1, mu);
          },
          [&](const MixtureData& m) {
            double acc = 0;
            for (auto& c : m.comps)
              if (c.mean * retention_ > 0) acc += c.weight * boost::math::gamma_p(double(cutoff) + 1, c.mean * retention_);
            return acc;
          },
          [&](const PowerLawData& pl) {
            std::int64_t start = cutoff + s + 1;
            if (start <= pl.kmin) return 1.0;
            auto st = num::stirling_first_row(s);
            double acc = 0;
            for (int m = 0; m <= s; ++m)
              if (st[m] != 0) acc += st[m] * num::zeta_tail(pl.gamma - m, start);
            return std::clamp(scale_ * pl.c * acc, 0.0, 1.0);
          }},
      *base_);
}

std::optional<std::int64_t> DegreeDistribution::max_degree() const {
  if (auto* t = std::get_if<TableData>(base_.get())) {
    if (retention_ == 0) return 0;
    return t->deg.back() - shift_;
  }
  return std::nullopt;
}

std::int64_t DegreeDistribution::effective_cutoff(double eps) const {
  if (auto m = max_degree()) return *m;
  std::int64_t hi = 16;
  while (tail_mass(hi) > eps) {
    if (hi > (std::int64_t(1) << 40)) throw UnboundedTailError("cutoff for tail mass not reachable");
    hi *= 2;
  }
  std::int64_t lo = hi / 2;
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (tail_mass(mid) > eps)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

std::optional<double> DegreeDistribution::power_law_exponent() const {
  if (auto* p = std::get_if<PowerLawData>(base_.get())) {
    if (retention_ == 0) return std::nullopt;
    return p->gamma - shift_;
  }
  return std::nullopt;
}

double DegreeDistribution::power_law_constant() const {
  auto* p = std::get_if<PowerLawData>(base_.get());
  if (!p || !is_base()) throw UnsupportedFamilyError("power_law_constant: not an untransformed power law");
  return p->c;
}

std::int64_t DegreeDistribution::power_law_kmin() const {
  auto* p = std::get_if<PowerLawData>(base_.get());
  if (!p) throw UnsupportedFamilyError("power_law_kmin: not a power law");
  return p->kmin;
}

std::vector<std::pair<std::int64_t, double>> DegreeDistribution::table_entries() const {
  auto* t = std::get_if<TableData>(base_.get());
  if (!t || !is_base()) throw UnsupportedFamilyError("table_entries: not a table");
  std::vector<std::pair<std::int64_t, double>> e;
  for (std::size_t i = 0; i < t->deg.size(); ++i) e.emplace_back(t->deg[i], t->w[i]);
  return e;
}

const std::vector<PoissonComponent>& DegreeDistribution::mixture_components() const {
  auto* m = std::get_if<MixtureData>(base_.get());
  if (!m || !is_base()) throw UnsupportedFamilyError("mixture_components: not a Poisson mixture");
  return m->comps;
}

double DegreeDistribution::poisson_mean() const {
  auto* p = std::get_if<PoissonData>(base_.get());
  if (!p || !is_base()) throw UnsupportedFamilyError("poisson_mean: not a Poisson law");
  return p->lambda;
}

DegreeDistribution DegreeDistribution::thinned(double p) const {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("thin: retention outside [0,1]");
  if (p == 1) return *this;
  if (p == 0) return point_mass(0);
  if (is_base()) {
    if (auto* po = std::get_if<PoissonData>(base_.get())) return poisson(po->lambda * p);
    if (auto* mx = std::get_if<MixtureData>(base_.get())) {
      auto comps = mx->comps;
      for (auto& c : comps) c.mean *= p;
      return DegreeDistribution(MixtureData{std::move(comps)});
    }
    if (auto* t = std::get_if<TableData>(base_.get()); t && t->deg.back() <= kDenseThinLimit) {
      std::vector<double> q(std::size_t(t->deg.back()) + 1, 0.0);
      for (std::size_t i = 0; i < t->deg.size(); ++i)
        for (std::int64_t j = 0; j <= t->deg[i]; ++j) q[std::size_t(j)] += t->w[i] * num::binomial_pmf(t->deg[i], j, p);
      double s = std::accumulate(q.begin(), q.end(), 0.0);
      for (auto& v : q) v /= s;
      std::vector<std::pair<std::int64_t, double>> e;
      for (std::size_t j = 0; j < q.size(); ++j) e.emplace_back(std::int64_t(j), q[j]);
      // thinning can put all mass at 0 only if p == 0, handled above
      return sparse(std::move(e));
    }
  }
  DegreeDistribution out = *this;
  out.retention_ *= p;
  return out;
}

DegreeDistribution DegreeDistribution::size_biased() const {
  double lambda = mean();
  if (!(lambda > 0) || !std::isfinite(lambda)) throw std::invalid_argument("size_biased: mean must be finite and positive");
  if (is_base()) {
    if (std::holds_alternative<PoissonData>(*base_)) return *this;
    if (auto* mx = std::get_if<MixtureData>(base_.get())) {
      std::vector<PoissonComponent> comps;
      for (auto& c : mx->comps)
        if (c.mean > 0) comps.push_back({c.weight * c.mean / lambda, c.mean});
      double s = 0;
      for (auto& c : comps) s += c.weight;
      for (auto& c : comps) c.weight /= s;
      return DegreeDistribution(MixtureData{std::move(comps)});
    }
    if (auto* t = std::get_if<TableData>(base_.get())) {
      std::vector<std::pair<std::int64_t, double>> e;
      for (std::size_t i = 0; i < t->deg.size(); ++i)
        if (t->deg[i] >= 1) e.emplace_back(t->deg[i] - 1, double(t->deg[i]) * t->w[i] / lambda);
      double s = 0;
      for (auto& [d, w] : e) s += w;
      for (auto& [d, w] : e) w /= s;
      TableData out;
      for (auto& [d, w] : e) {
        out.deg.push_back(d);
        out.w.push_back(w);
      }
      return DegreeDistribution(std::move(out));
    }
  }
  if (retention_ == 0) throw std::invalid_argument("size_biased: mean must be positive");
  double f = base_factorial(shift_ + 1);
  DegreeDistribution out = *this;
  out.scale_ = 1.0 / f;
  out.shift_ = shift_ + 1;
  return out;
}

std::string DegreeDistribution::describe() const {
  std::ostringstream os;
  os.precision(12);
  std::visit(overloaded{[&](const TableData& t) {
                          os << "table{";
                          for (std::size_t i = 0; i < t.deg.size(); ++i) os << (i ? "," : "") << t.deg[i] << ":" << t.w[i];
                          os << "}";
                        },
                        [&](const PoissonData& p) { os << "poisson(" << p.lambda << ")"; },
                        [&](const MixtureData& m) {
                          os << "poisson-mixture{";
                          for (std::size_t i = 0; i < m.comps.size(); ++i)
                            os << (i ? "," : "") << m.comps[i].weight << "@" << m.comps[i].mean;
                          os << "}";
                        },
                        [&](const PowerLawData& p) { os << "power-law(" << p.gamma << ",k_min=" << p.kmin << ")"; }},
             *base_);
  if (shift_) os << " size-biased^" << shift_;
  if (retention_ != 1) os << " thinned(" << retention_ << ")";
  return os.str();
}

DegreeDistribution thin(const DegreeDistribution& d, double p) { return d.thinned(p); }
DegreeDistribution size_biased_shift(const DegreeDistribution& d) { return d.size_biased(); }
double pgf_eval(const DegreeDistribution& d, double x, int order) { return d.pgf(x, order); }

FactorialMoments factorial_moments(const DegreeDistribution& d) {
  FactorialMoments m;
  m.mean = d.factorial_moment(1);
  m.second = d.factorial_moment(2);
  m.second_sub = m.second - m.mean;
  m.third = d.factorial_moment(3);
  return m;
}

// ---------- sampling ----------

DegreeSampler::DegreeSampler(const DegreeDistribution& d) {
  using DD = DegreeDistribution;
  if (d.is_base()) {
    const auto& b = d.base();
    if (auto* t = std::get_if<DD::TableData>(&b)) {
      kind_ = Kind::table;
      values_ = t->deg;
      pick_ = std::discrete_distribution<std::size_t>(t->w.begin(), t->w.end());
      return;
    }
    if (auto* p = std::get_if<DD::PoissonData>(&b)) {
      kind_ = Kind::poisson;
      means_ = {p->lambda};
      return;
    }
    if (auto* m = std::get_if<DD::MixtureData>(&b)) {
      kind_ = Kind::mixture;
      std::vector<double> w;
      for (auto& c : m->comps) {
        w.push_back(c.weight);
        means_.push_back(c.mean);
      }
      pick_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
      return;
    }
    auto& pl = std::get<DD::PowerLawData>(b);
    kind_ = Kind::power_law;
    const std::int64_t head = 1 << 16;
    std::vector<double> w;
    for (std::int64_t k = pl.kmin; k < pl.kmin + head; ++k) {
      values_.push_back(k);
      w.push_back(pl.c * std::pow(double(k), -pl.gamma));
    }
    tail_start_ = pl.kmin + head;
    gamma_ = pl.gamma;
    tail_prob_ = pl.c * num::zeta_tail(pl.gamma, tail_start_);
    w.push_back(tail_prob_);
    pick_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
    return;
  }
  if (d.shift() == 0) {
    kind_ = Kind::thinned;
    inner_ = std::make_unique<DegreeSampler>(d.base_distribution());
    retention_ = d.retention();
    return;
  }
  kind_ = Kind::table;
  std::vector<double> w;
  double acc = 0;
  for (std::int64_t j = 0; acc < 1 - 1e-13; ++j) {
    if (j > 1000000) throw UnsupportedFamilyError("no sampler: law has too heavy a tail for tabulation");
    double p = d.pmf(j);
    values_.push_back(j);
    w.push_back(p);
    acc += p;
  }
  pick_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
}

std::int64_t DegreeSampler::operator()(Rng& rng) {
  switch (kind_) {
    case Kind::table:
      return values_[pick_(rng)];
    case Kind::poisson:
      return std::poisson_distribution<std::int64_t>(means_[0])(rng);
    case Kind::mixture: {
      double mu = means_[pick_(rng)];
      if (mu == 0) return 0;
      return std::poisson_distribution<std::int64_t>(mu)(rng);
    }
    case Kind::power_law: {
      std::size_t i = pick_(rng);
      if (i < values_.size()) return values_[i];
      // tail: floor of a Pareto variate, accepted with probability k^{-g} / (M * int_k^{k+1} y^{-g} dy)
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double K = double(tail_start_);
      const double bound = std::pow(1 + 1 / K, gamma_);
      for (;;) {
        double v = 1.0 - u(rng);
        double y = K * std::pow(v, -1.0 / (gamma_ - 1));
        if (!(y < 9e18)) continue;
        double k = std::floor(y);
        double integral = std::pow(k, 1 - gamma_) * -std::expm1((1 - gamma_) * std::log1p(1 / k)) / (gamma_ - 1);
        double ratio = std::pow(k, -gamma_) / integral;
        if (u(rng) * bound <= ratio) return std::int64_t(k);
      }
    }
    case Kind::thinned: {
      std::int64_t d = (*inner_)(rng);
      if (d == 0) return 0;
      return std::binomial_distribution<std::int64_t>(d, retention_)(rng);
    }
  }
  return 0;
}

std::int64_t DegreeSequence::total() const { return std::accumulate(degrees.begin(), degrees.end(), std::int64_t(0)); }

std::int64_t DegreeSequence::max_degree() const {
  return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
}

std::vector<std::size_t> DegreeSequence::counts() const {
  std::vector<std::size_t> c(std::size_t(max_degree()) + 1, 0);
  for (auto d : degrees) ++c[std::size_t(d)];
  return c;
}

DegreeSequence sample_degree_sequence(const DegreeDistribution& d, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_degree_sequence: n must be >= 1");
  Rng rng(seed);
  DegreeSampler sampler(d);
  DegreeSequence seq;
  seq.degrees.resize(n);
  for (auto& x : seq.degrees) x = sampler(rng);
  if (seq.total() % 2 != 0) {
    std::size_t v = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    seq.degrees[v] += 1;
    seq.parity_fixed = true;
    seq.bumped_vertex = v;
  }
  return seq;
}

}  // namespace perclab
