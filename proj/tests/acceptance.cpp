// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "perclab/analytic_giant.hpp"
#include "perclab/analytic_kcore.hpp"
#include "perclab/bootstrap.hpp"
#include "perclab/branching.hpp"
#include "perclab/cli.hpp"
#include "perclab/errors.hpp"
#include "perclab/multigraph.hpp"
#include "perclab/percolation.hpp"

using namespace perclab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / double(v.size());
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<DegreeDistribution> test_distributions() {
  return {DegreeDistribution::point_mass(3),
          DegreeDistribution::point_mass(5),
          DegreeDistribution::two_point(1, 3, 0.5),
          DegreeDistribution::two_point(3, 6, 1 - 1.9 / 6),
          DegreeDistribution::poisson(2),
          DegreeDistribution::poisson(5),
          DegreeDistribution::poisson(10),
          DegreeDistribution::poisson_mixture({{0.5, 3.0}, {0.5, 12.0}}),
          DegreeDistribution::table({0.05, 0.1, 0.2, 0.3, 0.2, 0.15}),
          DegreeDistribution::power_law(3.5, 2)};
}

// ---- 1 ----
Outcome giant_bond_sim() {
  auto t0 = Clock::now();
  auto po = DegreeDistribution::poisson(5);
  bool ok = std::abs(giant_threshold(po) - 0.2) < 1e-12;
  double worst = 0;
  for (double pi : {0.3, 0.5, 0.8}) {
    auto r = giant_bond(po, pi);
    std::vector<double> v, e;
    for (std::uint64_t s = 0; s < 10; ++s) {
      auto seq = sample_degree_sequence(po, 100000, derive_seed(1000 + s, 0));
      auto comp = components(percolate_via_explosion(seq, PercolationSpec::bond(pi), derive_seed(1000 + s, 1)));
      v.push_back(double(comp.size(0)) / 1e5);
      e.push_back(double(comp.edges(0)) / 1e5);
    }
    worst = std::max({worst, std::abs(mean_of(v) - r.v_frac), std::abs(mean_of(e) - r.e_frac)});
  }
  double t = seconds_since(t0);
  ok = ok && worst < 0.01 && t < 30;
  return {ok, "max |sim - theory| = " + fmt("%.5f", worst) + ", runtime " + fmt("%.1f", t) + " s"};
}

// ---- 2 ----
Outcome giant_site_sim() {
  auto pm3 = DegreeDistribution::point_mass(3);
  double theory = giant_site(pm3, 0.6).v_frac;
  std::vector<double> v;
  double c2 = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto seq = sample_degree_sequence(pm3, 100000, 0);
    auto comp = components(percolate_via_explosion(seq, PercolationSpec::site(0.6), derive_seed(2000 + s, 1)));
    v.push_back(double(comp.size(0)) / 1e5);
    c2 = std::max(c2, double(comp.size(1)) / 1e5);
  }
  double diff = std::abs(mean_of(v) - 19.0 / 45);
  bool ok = std::abs(theory - 19.0 / 45) < 1e-12 && diff < 0.01 && c2 < 0.01;
  return {ok, "sim v(C1)/n = " + fmt("%.5f", mean_of(v)) + " vs 19/45, max v(C2)/n = " + fmt("%.5f", c2)};
}

// ---- 3 ----
Outcome coupling_identities() {
  auto t0 = Clock::now();
  std::vector<DegreeDistribution> ds = {DegreeDistribution::point_mass(3), DegreeDistribution::two_point(1, 3, 0.5),
                                        DegreeDistribution::poisson(5),
                                        DegreeDistribution::poisson_mixture({{0.5, 1.0}, {0.5, 6.0}}),
                                        DegreeDistribution::table({0.1, 0.3, 0.2, 0.2, 0.2})};
  double worst = 0;
  for (auto& d : ds)
    for (int i = 1; i <= 50; ++i) {
      double pi = i / 51.0;
      auto s = giant_site(d, pi);
      auto b = giant_bond(d, pi);
      worst = std::max({worst, std::abs(s.rho - std::sqrt(pi) * b.rho), std::abs(s.v_frac - pi * b.v_frac),
                        std::abs(s.e_frac - pi * b.e_frac)});
    }
  double t = seconds_since(t0);
  return {worst < 1e-9 && t < 1.0, "max deviation " + fmt("%.2e", worst) + ", runtime " + fmt("%.3f", t) + " s"};
}

// ---- 4 ----
Outcome critical_behaviour() {
  auto pm = critical_expansion(DegreeDistribution::point_mass(3), 1e-4);
  double ratio = pm.rho_v / 1e-4;
  bool ok1 = std::abs(ratio / 4 - 1) < 0.02;
  auto pl = DegreeDistribution::power_law(3.5, 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = 11;
  for (int i = 0; i < m; ++i) {
    double eps = std::pow(10.0, -4 + i / double(m - 1));
    double x = std::log(eps), y = std::log(critical_expansion(pl, eps).rho_v);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  bool ok2 = std::abs(slope - 2) < 0.05;
  return {ok1 && ok2, "point mass 3 ratio " + fmt("%.5f", ratio) + ", power-law slope " + fmt("%.5f", slope)};
}

// ---- 5 ----
Outcome k2_identity() {
  double w1 = 0, w2 = 0;
  for (auto& d : test_distributions()) {
    auto m = factorial_moments(d);
    double expect = std::isinf(m.second) ? 0.0 : m.mean / m.second;
    w1 = std::max(w1, std::abs(kcore_threshold(d, 2) - expect));
    auto r = kcore_site(d, 2, 1.0);
    double pmax = r.empty ? 0.0 : r.p_max;
    w2 = std::max(w2, std::abs(pmax - (1 - solve_xi_base(d))));
  }
  return {w1 < 1e-10 && w2 < 1e-9, "threshold dev " + fmt("%.2e", w1) + ", p_max vs 1-xi dev " + fmt("%.2e", w2)};
}

// ---- 6 ----
Outcome kcore_sim() {
  auto po = DegreeDistribution::poisson(10);
  bool ok = std::abs(kcore_threshold(po, 3) - 0.335) < 5e-4;
  double worst = 0;
  for (double pi : {0.4, 0.7}) {
    auto r = kcore_site(po, 3, pi);
    std::vector<double> v, e;
    for (std::uint64_t s = 0; s < 10; ++s) {
      auto seq = sample_degree_sequence(po, 100000, derive_seed(6000 + s, 0));
      auto core = k_core(percolate_via_explosion(seq, PercolationSpec::site(pi), derive_seed(6000 + s, 1)), 3);
      v.push_back(double(core.num_vertices()) / 1e5);
      e.push_back(double(core.num_edges()) / 1e5);
    }
    worst = std::max({worst, std::abs(mean_of(v) - r.v_frac), std::abs(mean_of(e) - r.e_frac)});
  }
  int empty = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto seq = sample_degree_sequence(po, 100000, derive_seed(6100 + s, 0));
    empty += k_core(percolate_via_explosion(seq, PercolationSpec::site(0.3), derive_seed(6100 + s, 1)), 3).num_vertices() == 0;
  }
  ok = ok && worst < 0.01 && empty >= 19;
  return {ok, "max |sim - theory| = " + fmt("%.5f", worst) + ", empty below threshold " + std::to_string(empty) + "/20"};
}

// ---- 7 ----
Outcome transition_atlas() {
  auto po = enumerate_transitions(DegreeDistribution::poisson(10), 3);
  bool ok1 = po.size() == 1 && po[0].order == PhaseTransition::Order::first_order;
  auto e2 = enumerate_transitions(DegreeDistribution::two_point(3, 6, 1 - 1.9 / 6), 3);
  bool at1 = false;
  for (auto& t : e2) at1 = at1 || t.pi_tilde == 1.0;
  bool ok2 = e2.size() == 2 && at1;
  return {ok1 && ok2, "Poisson(10): " + std::to_string(po.size()) + " (" + (po.empty() ? "-" : to_string(po[0].order)) +
                          "), E2: " + std::to_string(e2.size()) + (at1 ? " incl. pi=1" : "")};
}

// ---- 8 ----
Outcome dyadic() {
  double d0 = std::abs(psi_fourier(0) - 1 / std::numbers::ln2);
  double a1 = std::abs(psi_fourier(1)), am1 = std::abs(psi_fourier(-1));
  double quad = 0;
  for (int n : {0, 1, -1}) quad = std::max(quad, std::abs(psi_fourier_quadrature(n) - psi_fourier(n)));
  double amp = psi_oscillation_amplitude();
  bool ok = d0 < 1e-10 && std::abs(a1 - 0.78e-6) <= 0.02e-6 && std::abs(am1 - 0.78e-6) <= 0.02e-6 && quad < 1e-8 &&
            amp < 1.6e-6;
  return {ok, "|psi^(1)| = " + fmt("%.4e", a1) + ", quadrature dev " + fmt("%.1e", quad) + ", amplitude " + fmt("%.4e", amp)};
}

// ---- 9 ----
std::uint64_t outcome_key(const Multigraph& g) {
  auto comp = components(g);
  std::uint64_t key = g.num_vertices() * 64 + g.num_edges();
  for (auto s : comp.sizes) key = key * 8 + s;
  return key;
}

double tv_distance(const std::unordered_map<std::uint64_t, int>& a, const std::unordered_map<std::uint64_t, int>& b, int n) {
  std::map<std::uint64_t, int> diff;
  for (auto& [k, c] : a) diff[k] += c;
  for (auto& [k, c] : b) diff[k] -= c;
  double s = 0;
  for (auto& [k, c] : diff) s += std::abs(c);
  return s / (2.0 * n);
}

Outcome explosion_equivalence() {
  auto t0 = Clock::now();
  std::vector<std::vector<std::int64_t>> seqs;
  std::function<void(std::vector<std::int64_t>&, std::int64_t, std::int64_t)> rec =
      [&](std::vector<std::int64_t>& cur, std::int64_t lo, std::int64_t budget) {
        if (!cur.empty()) {
          std::int64_t s = 0;
          for (auto d : cur) s += d;
          if (s % 2 == 0) seqs.push_back(cur);
        }
        if (cur.size() == 4) return;
        for (std::int64_t d = lo; d <= budget; ++d) {
          cur.push_back(d);
          rec(cur, d, budget - d);
          cur.pop_back();
        }
      };
  std::vector<std::int64_t> cur;
  rec(cur, 0, 8);
  const int samples = 100000;
  double worst = 0;
  std::string worst_case;
  std::uint64_t stream = 0;
  for (auto& degs : seqs) {
    DegreeSequence seq;
    seq.degrees = degs;
    for (double pi : {0.3, 0.7})
      for (bool bond : {false, true}) {
        auto spec = bond ? PercolationSpec::bond(pi) : PercolationSpec::site(pi);
        Rng ra(derive_seed(9000, stream++)), rb(derive_seed(9000, stream++));
        std::unordered_map<std::uint64_t, int> direct, explode;
        for (int s = 0; s < samples; ++s) {
          ++direct[outcome_key(percolate_direct(configuration_model(seq, ra), spec, ra))];
          ++explode[outcome_key(percolate_via_explosion(seq, spec, rb))];
        }
        double tv = tv_distance(direct, explode, samples);
        if (tv > worst) {
          worst = tv;
          std::ostringstream os;
          os << "(";
          for (std::size_t i = 0; i < degs.size(); ++i) os << (i ? "," : "") << degs[i];
          os << ") " << (bond ? "bond" : "site") << " pi=" << pi;
          worst_case = os.str();
        }
      }
  }
  return {worst < 0.01, std::to_string(seqs.size()) + " sequences x 4 settings, max TV " + fmt("%.5f", worst) + " at " +
                            worst_case + ", runtime " + fmt("%.0f", seconds_since(t0)) + " s"};
}

// ---- 10 ----
Multigraph regular(int d, std::size_t n, std::uint64_t seed) {
  DegreeSequence s;
  s.degrees.assign(n, d);
  return configuration_model(s, seed);
}

Outcome bootstrap_checks() {
  double q32 = bootstrap_qc(3, 2), q42 = bootstrap_qc(4, 2);
  bool ok = std::abs(q32 - 0.5) < 1e-10 && std::abs(q42 - 1.0 / 9) < 1e-10;
  auto run = run_bootstrap(regular(4, 100000, 10001), BootstrapSpec{4, 2, BootstrapSpec::Initial::probability, 0.05}, 10002);
  double frac = double(run.final_count) / 1e5;
  ok = ok && std::abs(frac - 0.0688) < 0.01;
  int corr = 0;
  for (std::uint64_t s = 0; s < 100; ++s)
    corr += core_correspondence_check(regular(4, 1000, 10100 + s), BootstrapSpec{4, 2, BootstrapSpec::Initial::probability, 0.1},
                                      10200 + s);
  int full = 0;
  for (std::uint64_t s = 0; s < 20; ++s)
    full += run_bootstrap(regular(4, 100000, 10300 + s), BootstrapSpec{4, 2, BootstrapSpec::Initial::probability, 0.2}, 10400 + s)
                .fully_infected;
  ok = ok && corr == 100 && full >= 19;
  return {ok, "q_c(3,2)=" + fmt("%.12f", q32) + " q_c(4,2)=" + fmt("%.12f", q42) + ", |I_f|/n=" + fmt("%.5f", frac) +
                  ", correspondence " + std::to_string(corr) + "/100, full infection " + std::to_string(full) + "/20"};
}

// ---- 11 ----
Outcome branching_oracle() {
  double worst = 0;
  for (auto& d : test_distributions()) {
    if (d.power_law_exponent()) continue;
    for (int k : {2, 3, 4}) {
      auto r = kcore_site(d, k, 1.0);
      double root = r.empty ? 0.0 : r.p_max;
      worst = std::max(worst, std::abs(pmax_recursion(d, k, 1e-12) - root));
    }
  }
  auto tp = DegreeDistribution::two_point(1, 3, 0.5);
  auto q5 = pmax_iterates(tp, 2, 5).back();
  auto a = mc_tree_containment(BranchingModel(tp), 2, 5, 100000, 11001);
  double za = std::abs(a.estimate - q5) / a.stderr_;
  auto po = DegreeDistribution::poisson(10);
  int depth = default_containment_depth(3, 10000);
  auto qn = pmax_iterates(po, 3, std::size_t(depth)).back();
  auto b = mc_tree_containment(BranchingModel(po), 3, depth, 10000, 11002);
  double zb = b.stderr_ > 0 ? std::abs(b.estimate - qn) / b.stderr_ : (b.estimate == qn ? 0.0 : 1e9);
  bool ok = worst < 1e-9 && za <= 3 && zb <= 3;
  return {ok, "recursion vs root dev " + fmt("%.2e", worst) + ", two-point z=" + fmt("%.2f", za) + ", Poisson(10) depth " +
                  std::to_string(depth) + " z=" + fmt("%.2f", zb)};
}

// ---- 12 ----
Outcome determinism() {
  const std::vector<std::vector<std::string>> cmds = {
      {"generate", "--dist", "poisson:3", "--n", "3000", "--seed", "12"},
      {"generate", "--dist", "poisson:3", "--n", "1000", "--seed", "12", "--format", "edges"},
      {"percolate", "--dist", "poisson:4", "--n", "3000", "--seed", "12", "--reps", "3", "--mode", "bond", "--pi", "0.5"},
      {"percolate", "--dist", "point:3", "--n", "3000", "--seed", "12", "--mode", "fixed", "--m", "500", "--method", "direct"},
      {"giant", "--dist", "point:3", "--n", "5000", "--seed", "12", "--reps", "3", "--pi", "0.6"},
      {"kcore", "--dist", "poisson:10", "--n", "5000", "--seed", "12", "--reps", "2", "--k", "3", "--pi", "0.7"},
      {"bootstrap", "--d", "4", "--ell", "2", "--q", "0.05", "--n", "5000", "--seed", "12", "--reps", "2"},
      {"branching", "--dist", "poisson:10", "--k", "3", "--reps", "2000", "--seed", "12"},
      {"compare", "--what", "kcore", "--dist", "poisson:10", "--k", "3", "--pi", "0.7", "--n", "5000", "--seed", "12", "--tol", "1"}};
  int same = 0;
  for (auto& c : cmds) {
    std::ostringstream o1, o2, e1, e2;
    int r1 = run_cli(c, o1, e1);
    auto c2 = c;
    c2.push_back("--threads");
    c2.push_back("2");
    int r2 = run_cli(c2, o2, e2);
    same += r1 == 0 && r2 == 0 && o1.str() == o2.str() && !o1.str().empty();
  }
  return {same == int(cmds.size()), std::to_string(same) + "/" + std::to_string(cmds.size()) + " commands byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion all[] = {{"giant component, bond, Poisson(5)", giant_bond_sim},
                           {"giant component, site, point mass 3", giant_site_sim},
                           {"site/bond coupling identities", coupling_identities},
                           {"critical behaviour", critical_behaviour},
                           {"k-core threshold identity at k=2", k2_identity},
                           {"k-core simulation, Poisson(10), k=3", kcore_sim},
                           {"phase-transition atlas", transition_atlas},
                           {"dyadic Poisson mixture", dyadic},
                           {"explosion-method equivalence", explosion_equivalence},
                           {"bootstrap percolation", bootstrap_checks},
                           {"branching oracle", branching_oracle},
                           {"determinism", determinism}};
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (int i = 0; i < int(std::size(all)); ++i) {
    if (only && only != i + 1) continue;
    Outcome o;
    try {
      o = all[i].fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s AC%d %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
