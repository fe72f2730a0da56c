#pragma once

#include <cstdint>
#include <vector>

#include "perclab/degree_model.hpp"
#include "perclab/multigraph.hpp"
#include "perclab/rng.hpp"

namespace perclab {

// pi_d for d < values.size(), `beyond` for larger d.
struct RetentionByDegree {
  std::vector<double> values;
  double beyond = 1.0;

  static RetentionByDegree uniform(double pi) { return {{}, pi}; }
  double at(std::int64_t d) const { return d < std::int64_t(values.size()) ? values[std::size_t(d)] : beyond; }
  bool is_uniform() const;
  void validate() const;
};

struct PercolationSpec {
  enum class Mode { site_uniform, site_per_degree, bond, fixed_count };
  Mode mode = Mode::site_uniform;
  double pi = 1.0;          // site_uniform, bond
  RetentionByDegree pis;    // site_per_degree
  std::size_t m = 0;        // fixed_count
  bool first_m = false;     // fixed_count: delete vertices 0..m-1 instead of a uniform m-subset

  static PercolationSpec site(double pi);
  static PercolationSpec site_per_degree(RetentionByDegree pis);
  static PercolationSpec bond(double pi);
  static PercolationSpec fixed_count(std::size_t m, bool first_m = false);

  bool is_site() const { return mode == Mode::site_uniform || mode == Mode::site_per_degree; }
  RetentionByDegree site_retention() const;
  void validate() const;
};

Multigraph percolate_direct(const Multigraph& g, const PercolationSpec& spec, Rng& rng);
Multigraph percolate_direct(const Multigraph& g, const PercolationSpec& spec, std::uint64_t seed);

struct Explosion {
  DegreeSequence seq;
  std::size_t red_count = 0;
};

Explosion explode_site(const DegreeSequence& seq, const RetentionByDegree& pis, Rng& rng);
Explosion explode_site(const DegreeSequence& seq, const RetentionByDegree& pis, std::uint64_t seed);
Explosion explode_bond(const DegreeSequence& seq, double pi, Rng& rng);
Explosion explode_bond(const DegreeSequence& seq, double pi, std::uint64_t seed);
Explosion explode_fixed(const DegreeSequence& seq, std::size_t m, bool first_m, Rng& rng);

// Deletes red_count uniformly chosen degree-1 vertices of g.
Multigraph delete_red_vertices(const Multigraph& g, std::size_t red_count, Rng& rng);

// explode -> configuration model -> delete red vertices, all drawn from one engine.
Multigraph percolate_via_explosion(const DegreeSequence& seq, const PercolationSpec& spec, Rng& rng);
Multigraph percolate_via_explosion(const DegreeSequence& seq, const PercolationSpec& spec, std::uint64_t seed);

struct ExplodedProfile {
  double zeta = 1;          // lim n~/n
  double lambda_tilde = 0;  // lim mean exploded degree
  double red_fraction = 0;  // lim n+/n
  std::vector<double> probs;  // p~_j, j < probs.size()
  double tail_mass = 0;       // 1 - sum(probs)
};

// Limiting exploded degree law. probs is filled for j <= max_j (capped at the max degree
// for finite support). Fixed-count specs have no limit without n; use site(1 - m/n).
ExplodedProfile predict_exploded_profile(const DegreeDistribution& dist, const PercolationSpec& spec,
                                         std::int64_t max_j = 64);

}  // namespace perclab
