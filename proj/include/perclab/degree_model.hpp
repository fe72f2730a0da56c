#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "perclab/rng.hpp"

namespace perclab {

struct PoissonComponent {
  double weight;
  double mean;
};

struct FactorialMoments {
  double mean;        // E D
  double second;      // E D(D-1)
  double second_sub;  // E D(D-2)
  double third;       // E D(D-1)(D-2)
};

// Limiting degree law. Tables, Poisson laws and Poisson mixtures are closed under thinning
// and size biasing; power laws carry the transform g(x) = scale * g_base^{(shift)}(1 - b + b x).
class DegreeDistribution {
 public:
  enum class Family { table, poisson, poisson_mixture, power_law };

  static DegreeDistribution point_mass(std::int64_t d);
  static DegreeDistribution two_point(std::int64_t d1, std::int64_t d2, double p1);
  static DegreeDistribution table(const std::vector<double>& probs);
  static DegreeDistribution sparse(std::vector<std::pair<std::int64_t, double>> entries);
  static DegreeDistribution poisson(double mean);
  static DegreeDistribution poisson_mixture(std::vector<PoissonComponent> comps);
  static DegreeDistribution power_law(double gamma, std::int64_t k_min = 1);

  // Law of D conditioned on D <= max_degree, as a table.
  DegreeDistribution truncated(std::int64_t max_degree) const;

  Family family() const;
  bool is_base() const { return shift_ == 0 && retention_ == 1.0; }
  double retention() const { return retention_; }
  int shift() const { return shift_; }

  // g^{(order)}(x), x in [0, 1]. Throws UnboundedTailError if divergent.
  double pgf(double x, int order = 0) const;
  // g^{(order)}(1) - g^{(order)}(1 - t), t in [0, 1]; +inf if g^{(order)}(1) is infinite.
  double pgf_deficit(int order, double t) const;
  double pmf(std::int64_t j) const;
  // g^{(r)}(1); may be +inf.
  double factorial_moment(int r) const;
  double mean() const { return factorial_moment(1); }
  // Upper bound on P(D > cutoff).
  double tail_mass(std::int64_t cutoff) const;
  // Largest degree carrying mass, if the support is finite.
  std::optional<std::int64_t> max_degree() const;
  // Smallest J with P(D > J) <= eps (finite support: the max degree).
  std::int64_t effective_cutoff(double eps = 1e-15) const;

  // Tail exponent gamma when p_j behaves like c j^{-gamma}; empty for light tails.
  std::optional<double> power_law_exponent() const;
  // c with p_k = c k^{-gamma} (power-law base only).
  double power_law_constant() const;
  std::int64_t power_law_kmin() const;

  // Table entries (degree, weight) with positive weight; table family only.
  std::vector<std::pair<std::int64_t, double>> table_entries() const;
  const std::vector<PoissonComponent>& mixture_components() const;
  double poisson_mean() const;

  DegreeDistribution thinned(double p) const;
  DegreeDistribution size_biased() const;

  std::string describe() const;

  struct TableData {
    std::vector<std::int64_t> deg;
    std::vector<double> w;
  };
  struct PoissonData {
    double lambda;
  };
  struct MixtureData {
    std::vector<PoissonComponent> comps;
  };
  struct PowerLawData {
    double gamma;
    std::int64_t kmin;
    double c;
  };
  using Base = std::variant<TableData, PoissonData, MixtureData, PowerLawData>;

  const Base& base() const { return *base_; }
  // The untransformed law this one was derived from.
  DegreeDistribution base_distribution() const;

 private:
  explicit DegreeDistribution(Base b);
  double base_deriv(double x, int r) const;
  double base_deficit(int r, double t) const;
  double base_factorial(int r) const;

  std::shared_ptr<const Base> base_;
  double scale_ = 1.0;
  int shift_ = 0;
  double retention_ = 1.0;
};

DegreeDistribution thin(const DegreeDistribution& d, double p);
DegreeDistribution size_biased_shift(const DegreeDistribution& d);
FactorialMoments factorial_moments(const DegreeDistribution& d);
double pgf_eval(const DegreeDistribution& d, double x, int order);

// Prepared sampler for repeated iid draws.
class DegreeSampler {
 public:
  explicit DegreeSampler(const DegreeDistribution& d);
  std::int64_t operator()(Rng& rng);

 private:
  enum class Kind { table, poisson, mixture, power_law, thinned };
  Kind kind_;
  std::vector<std::int64_t> values_;
  std::discrete_distribution<std::size_t> pick_;
  std::vector<double> means_;
  // power law head/tail
  double tail_prob_ = 0;
  std::int64_t tail_start_ = 0;
  double gamma_ = 0;
  std::unique_ptr<DegreeSampler> inner_;
  double retention_ = 1;
};

struct DegreeSequence {
  std::vector<std::int64_t> degrees;
  bool parity_fixed = false;
  std::size_t bumped_vertex = 0;

  std::size_t size() const { return degrees.size(); }
  std::int64_t total() const;
  std::int64_t max_degree() const;
  // counts[j] = #{i : d_i = j}
  std::vector<std::size_t> counts() const;
};

DegreeSequence sample_degree_sequence(const DegreeDistribution& d, std::size_t n, std::uint64_t seed);

}  // namespace perclab
