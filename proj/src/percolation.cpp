#include "perclab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "perclab/numerics.hpp"

namespace perclab {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

bool RetentionByDegree::is_uniform() const {
  return std::all_of(values.begin(), values.end(), [&](double v) { return v == beyond; });
}

void RetentionByDegree::validate() const {
  for (double v : values) check_probability(v, "retention pi_d");
  check_probability(beyond, "retention pi_d");
}

PercolationSpec PercolationSpec::site(double pi) {
  PercolationSpec s;
  s.mode = Mode::site_uniform;
  s.pi = pi;
  s.validate();
  return s;
}

PercolationSpec PercolationSpec::site_per_degree(RetentionByDegree pis) {
  PercolationSpec s;
  s.mode = Mode::site_per_degree;
  s.pis = std::move(pis);
  s.validate();
  return s;
}

PercolationSpec PercolationSpec::bond(double pi) {
  PercolationSpec s;
  s.mode = Mode::bond;
  s.pi = pi;
  s.validate();
  return s;
}

PercolationSpec PercolationSpec::fixed_count(std::size_t m, bool first_m) {
  PercolationSpec s;
  s.mode = Mode::fixed_count;
  s.m = m;
  s.first_m = first_m;
  return s;
}

RetentionByDegree PercolationSpec::site_retention() const {
  if (mode == Mode::site_uniform) return RetentionByDegree::uniform(pi);
  if (mode == Mode::site_per_degree) return pis;
  throw std::logic_error("site_retention: not a site PercolationSpec");
}

void PercolationSpec::validate() const {
  switch (mode) {
    case Mode::site_uniform:
    case Mode::bond:
      check_probability(pi, "pi");
      break;
    case Mode::site_per_degree:
      pis.validate();
      break;
    case Mode::fixed_count:
      break;
  }
}

// Direct deletion -----------------------------------------------------------

namespace {

std::vector<char> fixed_subset_mask(std::size_t n, std::size_t m, bool first_m, Rng& rng) {
  if (m > n) throw std::invalid_argument("fixed-count removal: m exceeds n");
  std::vector<char> removed(n, 0);
  if (first_m) {
    std::fill(removed.begin(), removed.begin() + std::ptrdiff_t(m), 1);
    return removed;
  }
  std::vector<VertexId> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = VertexId(i);
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
    removed[idx[i]] = 1;
  }
  return removed;
}

}  // namespace

Multigraph percolate_direct(const Multigraph& g, const PercolationSpec& spec, Rng& rng) {
  spec.validate();
  const std::size_t n = g.num_vertices();
  if (spec.mode == PercolationSpec::Mode::bond) {
    std::bernoulli_distribution keep(spec.pi);
    std::vector<Edge> edges;
    edges.reserve(g.num_edges());
    for (auto& e : g.edges())
      if (keep(rng)) edges.push_back(e);
    return Multigraph(n, std::move(edges));
  }
  std::vector<char> keep(n, 1);
  if (spec.mode == PercolationSpec::Mode::fixed_count) {
    auto removed = fixed_subset_mask(n, spec.m, spec.first_m, rng);
    for (std::size_t v = 0; v < n; ++v) keep[v] = !removed[v];
  } else {
    auto pis = spec.site_retention();
    auto deg = g.degrees();
    for (std::size_t v = 0; v < n; ++v) keep[v] = std::bernoulli_distribution(pis.at(deg[v]))(rng);
  }
  return induced_subgraph(g, keep);
}

Multigraph percolate_direct(const Multigraph& g, const PercolationSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return percolate_direct(g, spec, rng);
}

// Explosion -----------------------------------------------------------------

namespace {

Explosion explode_mask(const DegreeSequence& seq, const std::vector<char>& exploded) {
  Explosion out;
  std::size_t red = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (exploded[i])
      red += std::size_t(seq.degrees[i]);
    else
      out.seq.degrees.push_back(seq.degrees[i]);
  }
  out.seq.degrees.insert(out.seq.degrees.end(), red, 1);
  out.red_count = red;
  return out;
}

}  // namespace

Explosion explode_site(const DegreeSequence& seq, const RetentionByDegree& pis, Rng& rng) {
  pis.validate();
  std::vector<char> exploded(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i)
    exploded[i] = !std::bernoulli_distribution(pis.at(seq.degrees[i]))(rng);
  return explode_mask(seq, exploded);
}

Explosion explode_site(const DegreeSequence& seq, const RetentionByDegree& pis, std::uint64_t seed) {
  Rng rng(seed);
  return explode_site(seq, pis, rng);
}

Explosion explode_bond(const DegreeSequence& seq, double pi, Rng& rng) {
  check_probability(pi, "pi");
  const double s = std::sqrt(pi);
  Explosion out;
  out.seq.degrees.reserve(seq.size());
  std::size_t red = 0;
  for (auto d : seq.degrees) {
    std::int64_t kept = d;
    if (s < 1.0 && d > 0) kept = std::binomial_distribution<std::int64_t>(d, s)(rng);
    out.seq.degrees.push_back(kept);
    red += std::size_t(d - kept);
  }
  out.seq.degrees.insert(out.seq.degrees.end(), red, 1);
  out.red_count = red;
  return out;
}

Explosion explode_bond(const DegreeSequence& seq, double pi, std::uint64_t seed) {
  Rng rng(seed);
  return explode_bond(seq, pi, rng);
}

Explosion explode_fixed(const DegreeSequence& seq, std::size_t m, bool first_m, Rng& rng) {
  return explode_mask(seq, fixed_subset_mask(seq.size(), m, first_m, rng));
}

Multigraph delete_red_vertices(const Multigraph& g, std::size_t red_count, Rng& rng) {
  auto deg = g.degrees();
  std::vector<VertexId> ones;
  for (std::size_t v = 0; v < deg.size(); ++v)
    if (deg[v] == 1) ones.push_back(VertexId(v));
  if (ones.size() < red_count)
    throw std::logic_error("delete_red_vertices: fewer degree-1 vertices than red vertices");
  std::vector<char> keep(g.num_vertices(), 1);
  for (std::size_t i = 0; i < red_count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, ones.size() - 1);
    std::swap(ones[i], ones[pick(rng)]);
    keep[ones[i]] = 0;
  }
  return induced_subgraph(g, keep);
}

Multigraph percolate_via_explosion(const DegreeSequence& seq, const PercolationSpec& spec, Rng& rng) {
  spec.validate();
  Explosion ex;
  switch (spec.mode) {
    case PercolationSpec::Mode::site_uniform:
    case PercolationSpec::Mode::site_per_degree:
      ex = explode_site(seq, spec.site_retention(), rng);
      break;
    case PercolationSpec::Mode::bond:
      ex = explode_bond(seq, spec.pi, rng);
      break;
    case PercolationSpec::Mode::fixed_count:
      ex = explode_fixed(seq, spec.m, spec.first_m, rng);
      break;
  }
  Multigraph g = configuration_model(ex.seq, rng);
  return delete_red_vertices(g, ex.red_count, rng);
}

Multigraph percolate_via_explosion(const DegreeSequence& seq, const PercolationSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return percolate_via_explosion(seq, spec, rng);
}

// Predicted profile ----------------------------------------------------------

ExplodedProfile predict_exploded_profile(const DegreeDistribution& dist, const PercolationSpec& spec,
                                         std::int64_t max_j) {
  spec.validate();
  if (spec.mode == PercolationSpec::Mode::fixed_count)
    throw std::invalid_argument("predict_exploded_profile: fixed-count removal has no n-free limit");
  const double lambda = dist.mean();
  if (auto md = dist.max_degree()) max_j = std::min(max_j, *md);
  max_j = std::max<std::int64_t>(max_j, 1);

  ExplodedProfile out;
  std::vector<double> kept(std::size_t(max_j) + 1);  // limiting kept-vertex count per degree, over n
  double kept_total;
  if (spec.mode == PercolationSpec::Mode::bond) {
    const double s = std::sqrt(spec.pi);
    out.red_fraction = (1.0 - s) * lambda;
    DegreeDistribution thinned = thin(dist, s);
    for (std::int64_t j = 0; j <= max_j; ++j) kept[std::size_t(j)] = thinned.pmf(j);
    kept_total = 1.0;
  } else {
    auto pis = spec.site_retention();
    num::CompensatedSum mass, lost_edges, head_p, head_jp;
    const auto limit = std::max<std::int64_t>(max_j, std::int64_t(pis.values.size()) - 1);
    for (std::int64_t j = 0; j <= limit; ++j) {
      double p = dist.pmf(j);
      head_p += p;
      head_jp += double(j) * p;
      mass += pis.at(j) * p;
      lost_edges += double(j) * (1.0 - pis.at(j)) * p;
      if (j <= max_j) kept[std::size_t(j)] = pis.at(j) * p;
    }
    // Degrees beyond the head all use `beyond`.
    double tail_p = std::max(0.0, 1.0 - head_p.value());
    double tail_jp = std::max(0.0, lambda - head_jp.value());
    kept_total = mass.value() + pis.beyond * tail_p;
    out.red_fraction = lost_edges.value() + (1.0 - pis.beyond) * tail_jp;
  }
  out.zeta = kept_total + out.red_fraction;
  out.lambda_tilde = lambda / out.zeta;
  out.probs.resize(kept.size());
  num::CompensatedSum shown;
  for (std::size_t j = 0; j < kept.size(); ++j) {
    out.probs[j] = (kept[j] + (j == 1 ? out.red_fraction : 0.0)) / out.zeta;
    shown += out.probs[j];
  }
  out.tail_mass = std::max(0.0, 1.0 - shown.value());
  return out;
}

}  // namespace perclab
