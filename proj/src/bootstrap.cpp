#include "perclab/bootstrap.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "perclab/analytic_kcore.hpp"
#include "perclab/errors.hpp"

namespace perclab {

void BootstrapSpec::validate() const {
  if (d < 2) throw std::invalid_argument("bootstrap: d must be >= 2");
  if (ell < 1 || ell > d - 1) throw std::invalid_argument("bootstrap: ell must satisfy 1 <= ell <= d-1");
  if (initial == Initial::probability && !(q >= 0 && q <= 1))
    throw std::invalid_argument("bootstrap: q must lie in [0, 1]");
}

BootstrapRun run_bootstrap_from(const Multigraph& g, int ell, std::vector<char> initial) {
  const std::size_t n = g.num_vertices();
  if (initial.size() != n) throw std::invalid_argument("bootstrap: initial mask size mismatch");
  Adjacency adj = build_adjacency(g);
  BootstrapRun run;
  run.initial = initial;
  run.infected = std::move(initial);
  std::vector<int> hits(n, 0);
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < n; ++v)
    if (run.infected[v]) queue.push_back(v);
  run.initial_count = queue.size();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    for (std::size_t i = adj.offset[v]; i < adj.offset[v + 1]; ++i) {
      VertexId u = adj.nbr[i];
      if (u == v || run.infected[u]) continue;
      if (++hits[u] >= ell) {
        run.infected[u] = 1;
        queue.push_back(u);
      }
    }
  }
  run.final_count = queue.size();
  run.fully_infected = run.final_count == n;
  return run;
}

namespace {

void check_regular(const Multigraph& g, int d) {
  auto deg = g.degrees();
  for (std::size_t v = 0; v < deg.size(); ++v)
    if (deg[v] != d) {
      std::ostringstream os;
      os << "bootstrap: vertex " << v << " has degree " << deg[v] << ", expected " << d;
      throw RegularityError(os.str());
    }
}

std::vector<char> initial_set(std::size_t n, const BootstrapSpec& spec, std::uint64_t seed) {
  std::vector<char> init(n, 0);
  if (spec.initial == BootstrapSpec::Initial::count) {
    if (spec.m > n) throw std::invalid_argument("bootstrap: m exceeds n");
    std::fill(init.begin(), init.begin() + std::ptrdiff_t(spec.m), 1);
    return init;
  }
  Rng rng(seed);
  std::bernoulli_distribution coin(spec.q);
  for (auto& c : init) c = coin(rng);
  return init;
}

}  // namespace

BootstrapRun run_bootstrap(const Multigraph& g, const BootstrapSpec& spec, std::uint64_t seed) {
  spec.validate();
  check_regular(g, spec.d);
  return run_bootstrap_from(g, spec.ell, initial_set(g.num_vertices(), spec, seed));
}

bool core_correspondence_check(const Multigraph& g, const BootstrapSpec& spec, std::uint64_t seed) {
  BootstrapRun run = run_bootstrap(g, spec, seed);
  const std::size_t n = g.num_vertices();
  std::vector<char> healthy(n);
  for (std::size_t v = 0; v < n; ++v) healthy[v] = !run.initial[v];
  Multigraph sub = induced_subgraph(g, healthy);
  auto core = k_core_mask(sub, spec.k());
  std::vector<char> in_core(n, 0);
  for (VertexId v = 0; v < sub.num_vertices(); ++v)
    if (core[v]) in_core[sub.origin(v)] = 1;
  for (std::size_t v = 0; v < n; ++v)
    if (bool(in_core[v]) != !run.infected[v]) return false;
  return true;
}

double bootstrap_qc(int d, int ell) {
  BootstrapSpec{d, ell}.validate();
  return 1.0 - kcore_threshold(DegreeDistribution::point_mass(d), d + 1 - ell);
}

BootstrapPrediction bootstrap_predict(int d, int ell, double q) {
  BootstrapSpec spec{d, ell, BootstrapSpec::Initial::probability, q};
  spec.validate();
  const int k = spec.k();
  auto dist = DegreeDistribution::point_mass(d);
  BootstrapPrediction out;
  out.q = q;
  out.q_c = bootstrap_qc(d, ell);
  if (std::abs(q - out.q_c) < 1e-9) {
    out.near_threshold = true;
    out.predicted_frac = std::nan("");
    return out;
  }
  const double pi = 1.0 - q;
  KCoreReport core = kcore_site(dist, k, pi);
  if (core.empty) {
    out.p_max = 0;
    out.predicted_frac = 1.0;
    out.fully_infected = ell <= d - 2;
    return out;
  }
  out.p_max = core.p_max;
  out.predicted_frac = 1.0 - core.v_frac;

  // Root count of pi * phi(p) = lambda on (0, 1]: two when ell < d-1, one when ell = d-1.
  KCoreFunctions F(dist, k);
  auto grid = kcore_grid();
  auto G = [&](double p) { return pi * F.phi(p) - double(d); };
  int roots = 0;
  bool prev = G(grid[0]) >= 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    bool cur = G(grid[i]) >= 0;
    if (cur != prev) ++roots;
    prev = cur;
  }
  if (std::abs(G(1.0)) <= 1e-12 * d) ++roots;
  out.roots = roots;
  int expected = ell < d - 1 ? 2 : 1;
  if (q > 0 && roots != expected) {
    std::ostringstream os;
    os << "bootstrap_predict: found " << roots << " roots, expected " << expected;
    throw std::logic_error(os.str());
  }
  return out;
}

}  // namespace perclab
