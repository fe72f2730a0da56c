#include "perclab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "perclab/analytic_giant.hpp"
#include "perclab/analytic_kcore.hpp"
#include "perclab/bootstrap.hpp"
#include "perclab/branching.hpp"
#include "perclab/dist_io.hpp"
#include "perclab/errors.hpp"
#include "perclab/multigraph.hpp"
#include "perclab/percolation.hpp"
#include "perclab/rng.hpp"

namespace perclab {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string dist;
  std::string degrees;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::size_t reps = 1;
  unsigned threads = 1;
  std::string mode = "site";
  double pi = 1.0;
  std::string pis;
  std::size_t m = 0;
  bool first_m = false;
  std::string method = "explosion";
  int k = 2;
  int d = 3;
  int ell = 2;
  std::optional<double> q;
  std::optional<std::size_t> infected;
  int depth = 0;
  bool root_variant = false;
  double budget = 1e7;
  std::size_t points = 0;
  bool simple = false;
  bool check = false;
  std::string what = "giant";
  double tol = 0.01;
  std::string out;
  std::string format = "json";
  bool strict = false;
};

// 12 significant digits; non-finite values become null or "inf".
ojson num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string csv_num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

struct Stat {
  double mean = 0;
  double stderr_ = 0;
};

Stat stat_of(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= double(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stderr_ = std::sqrt(ss / double(xs.size() - 1) / double(xs.size()));
  }
  return s;
}

// Runs fn(0..count-1) on `threads` workers; results are indexed so order is independent of scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

class Context {
 public:
  explicit Context(const RunConfig& c) : cfg(c) {}

  const RunConfig& cfg;
  std::vector<std::string> warnings;

  DegreeDistribution dist() const {
    if (cfg.dist.empty()) throw UsageError("--dist is required");
    return parse_distribution(cfg.dist);
  }

  std::uint64_t seed() const {
    if (!cfg.seed) throw UsageError("--seed is required for simulation");
    return *cfg.seed;
  }

  bool simulating() const { return cfg.n > 0 || !cfg.degrees.empty(); }

  PercolationSpec perc_spec() const {
    PercolationSpec s;
    if (cfg.mode == "site") {
      s = PercolationSpec::site(cfg.pi);
    } else if (cfg.mode == "bond") {
      s = PercolationSpec::bond(cfg.pi);
    } else if (cfg.mode == "site-per-degree") {
      if (cfg.pis.empty()) throw UsageError("--mode site-per-degree needs --pis");
      s = PercolationSpec::site_per_degree(parse_retention(cfg.pis));
    } else if (cfg.mode == "fixed") {
      s = PercolationSpec::fixed_count(cfg.m, cfg.first_m);
    } else {
      throw UsageError("unknown --mode '" + cfg.mode + "'");
    }
    s.validate();
    return s;
  }

  DegreeSequence sequence(std::uint64_t rep_seed) const {
    if (!cfg.degrees.empty()) {
      std::ifstream in(cfg.degrees);
      if (!in) throw UsageError("cannot open '" + cfg.degrees + "'");
      return read_degree_sequence(in);
    }
    if (cfg.n == 0) throw UsageError("--n must be positive");
    return sample_degree_sequence(dist(), cfg.n, derive_seed(rep_seed, 0));
  }

  std::uint64_t rep_seed(std::size_t i) const { return derive_seed(seed(), i); }

  Multigraph percolated(const DegreeSequence& seq, const PercolationSpec& spec, std::uint64_t rs) const {
    if (cfg.method == "explosion") return percolate_via_explosion(seq, spec, derive_seed(rs, 1));
    if (cfg.method == "direct") {
      Multigraph g = configuration_model(seq, derive_seed(rs, 1));
      return percolate_direct(g, spec, derive_seed(rs, 2));
    }
    throw UsageError("unknown --method '" + cfg.method + "'");
  }

  ojson header() const {
    ojson j;
    j["command"] = cfg.command;
    if (!cfg.dist.empty()) j["dist"] = dist().describe();
    return j;
  }
};

ojson warnings_json(const Context& ctx) {
  ojson w = ojson::array();
  for (auto& s : ctx.warnings) w.push_back(s);
  return w;
}

// ---- giant ----

struct GiantSim {
  std::vector<double> v, e, v2;
};

GiantSim simulate_giant(const Context& ctx, const PercolationSpec& spec) {
  GiantSim sim;
  std::size_t reps = ctx.cfg.reps;
  sim.v.resize(reps);
  sim.e.resize(reps);
  sim.v2.resize(reps);
  parallel_for(reps, ctx.cfg.threads, [&](std::size_t i) {
    auto rs = ctx.rep_seed(i);
    DegreeSequence seq = ctx.sequence(rs);
    Multigraph g = ctx.percolated(seq, spec, rs);
    ComponentReport comp = components(g);
    double n = double(seq.size());
    sim.v[i] = double(comp.size(0)) / n;
    sim.e[i] = double(comp.edges(0)) / n;
    sim.v2[i] = double(comp.size(1)) / n;
  });
  return sim;
}

GiantReport giant_analytic(Context& ctx, const PercolationSpec& spec) {
  DegreeDistribution d = ctx.dist();
  GiantReport r;
  switch (spec.mode) {
    case PercolationSpec::Mode::site_uniform: r = giant_site(d, spec.pi); break;
    case PercolationSpec::Mode::site_per_degree: r = giant_site(d, spec.pis); break;
    case PercolationSpec::Mode::bond: r = giant_bond(d, spec.pi); break;
    case PercolationSpec::Mode::fixed_count: {
      std::size_t n = ctx.cfg.n;
      if (n == 0 || spec.m > n) throw UsageError("--mode fixed needs --n >= --m");
      r = giant_site(d, 1.0 - double(spec.m) / double(n));
      break;
    }
  }
  if (r.near_threshold) ctx.warnings.push_back("pi within 1e-9 of pi_c: giant fraction numerically unreliable");
  if (r.degenerate) ctx.warnings.push_back("p0 + p2 = 1: critical law, no giant component");
  return r;
}

ojson cmd_giant(Context& ctx) {
  PercolationSpec spec = ctx.perc_spec();
  GiantReport r = giant_analytic(ctx, spec);
  ojson j = ctx.header();
  j["mode"] = ctx.cfg.mode;
  j["pi"] = num(r.pi);
  j["pi_c"] = num(r.pi_c);
  j["supercritical"] = r.supercritical;
  j["xi"] = num(r.xi);
  j["rho"] = num(r.rho);
  j["v_frac"] = num(r.v_frac);
  j["e_frac"] = num(r.e_frac);
  if (ctx.simulating()) {
    GiantSim sim = simulate_giant(ctx, spec);
    Stat sv = stat_of(sim.v), se = stat_of(sim.e), s2 = stat_of(sim.v2);
    j["sim_v_frac"] = num(sv.mean);
    j["sim_e_frac"] = num(se.mean);
    j["sim_v_frac_stderr"] = num(sv.stderr_);
    j["sim_e_frac_stderr"] = num(se.stderr_);
    j["sim_v2_frac"] = num(s2.mean);
    j["method"] = ctx.cfg.method;
    j["n"] = ctx.cfg.n;
    j["seed"] = ctx.seed();
    j["reps"] = ctx.cfg.reps;
  } else {
    j["sim_v_frac"] = nullptr;
    j["sim_e_frac"] = nullptr;
    j["n"] = 0;
    j["seed"] = ctx.cfg.seed ? ojson(*ctx.cfg.seed) : ojson(nullptr);
  }
  j["warnings"] = warnings_json(ctx);
  return j;
}

// ---- kcore ----

KCoreReport kcore_analytic(Context& ctx, const PercolationSpec& spec) {
  DegreeDistribution d = ctx.dist();
  KCoreReport r;
  switch (spec.mode) {
    case PercolationSpec::Mode::site_uniform: r = kcore_site(d, ctx.cfg.k, spec.pi); break;
    case PercolationSpec::Mode::bond: r = kcore_bond(d, ctx.cfg.k, spec.pi); break;
    case PercolationSpec::Mode::fixed_count: {
      std::size_t n = ctx.cfg.n;
      if (n == 0 || spec.m > n) throw UsageError("--mode fixed needs --n >= --m");
      r = kcore_site(d, ctx.cfg.k, 1.0 - double(spec.m) / double(n));
      break;
    }
    case PercolationSpec::Mode::site_per_degree:
      throw UsageError("kcore: --mode site-per-degree has no analytic prediction");
  }
  if (r.near_threshold) ctx.warnings.push_back("pi within 1e-9 of pi_c: core fraction numerically unreliable");
  if (r.at_local_max) ctx.warnings.push_back("p_max is a local maximum of phi: limit law not covered");
  return r;
}

struct KCoreSim {
  std::vector<double> v, e, empty;
};

KCoreSim simulate_kcore(const Context& ctx, const PercolationSpec& spec) {
  KCoreSim sim;
  std::size_t reps = ctx.cfg.reps;
  sim.v.resize(reps);
  sim.e.resize(reps);
  sim.empty.resize(reps);
  parallel_for(reps, ctx.cfg.threads, [&](std::size_t i) {
    auto rs = ctx.rep_seed(i);
    DegreeSequence seq = ctx.sequence(rs);
    Multigraph core = k_core(ctx.percolated(seq, spec, rs), ctx.cfg.k);
    double n = double(seq.size());
    sim.v[i] = double(core.num_vertices()) / n;
    sim.e[i] = double(core.num_edges()) / n;
    sim.empty[i] = core.num_vertices() == 0 ? 1.0 : 0.0;
  });
  return sim;
}

ojson cmd_kcore(Context& ctx) {
  PercolationSpec spec = ctx.perc_spec();
  KCoreReport r = kcore_analytic(ctx, spec);
  ojson j = ctx.header();
  j["mode"] = ctx.cfg.mode;
  j["k"] = r.k;
  j["pi"] = num(r.pi);
  j["pi_c"] = num(r.pi_c);
  j["p_max"] = num(r.p_max);
  j["v_frac"] = num(r.v_frac);
  j["e_frac"] = num(r.e_frac);
  j["empty"] = r.empty;
  ojson prof = ojson::array();
  for (double x : r.profile) prof.push_back(num(x));
  j["profile"] = prof;
  if (ctx.simulating()) {
    KCoreSim sim = simulate_kcore(ctx, spec);
    Stat sv = stat_of(sim.v), se = stat_of(sim.e), sz = stat_of(sim.empty);
    j["sim_v_frac"] = num(sv.mean);
    j["sim_e_frac"] = num(se.mean);
    j["sim_v_frac_stderr"] = num(sv.stderr_);
    j["sim_e_frac_stderr"] = num(se.stderr_);
    j["sim_empty_fraction"] = num(sz.mean);
    j["method"] = ctx.cfg.method;
    j["n"] = ctx.cfg.n;
    j["seed"] = ctx.seed();
    j["reps"] = ctx.cfg.reps;
  }
  j["warnings"] = warnings_json(ctx);
  return j;
}

// ---- kcore-curve / transitions ----

std::string cmd_kcore_curve(Context& ctx) {
  DegreeDistribution d = ctx.dist();
  std::vector<double> grid;
  if (ctx.cfg.points > 0) {
    for (std::size_t i = 1; i <= ctx.cfg.points; ++i) grid.push_back(double(i) / double(ctx.cfg.points));
  } else {
    grid = kcore_grid();
  }
  auto curve = kcore_curve(d, ctx.cfg.k, grid);
  std::ostringstream os;
  if (ctx.cfg.format == "json") {
    ojson j = ctx.header();
    j["k"] = ctx.cfg.k;
    ojson pts = ojson::array();
    for (auto& c : curve) pts.push_back({{"p", num(c.p)}, {"phi", num(c.phi)}, {"h", num(c.h)}, {"h1", num(c.h1)}});
    j["points"] = pts;
    os << j.dump(2) << '\n';
  } else {
    os << "p,phi,h,h1\n";
    for (auto& c : curve)
      os << csv_num(c.p) << ',' << csv_num(c.phi) << ',' << csv_num(c.h) << ',' << csv_num(c.h1) << '\n';
  }
  return os.str();
}

ojson cmd_transitions(Context& ctx) {
  DegreeDistribution d = ctx.dist();
  ojson j = ctx.header();
  j["k"] = ctx.cfg.k;
  ThresholdInfo th = kcore_threshold_info(d, ctx.cfg.k);
  j["pi_c"] = num(th.pi_c);
  j["sup_phi"] = num(th.sup_phi);
  ojson list = ojson::array();
  try {
    for (auto& t : enumerate_transitions(d, ctx.cfg.k))
      list.push_back({{"pi_tilde", num(t.pi_tilde)},
                      {"p_tilde", num(t.p_tilde)},
                      {"order", to_string(t.order)},
                      {"jump", num(t.jump)}});
  } catch (const UnresolvedTransitionError& e) {
    ctx.warnings.push_back(e.what());
  }
  j["transitions"] = list;
  j["warnings"] = warnings_json(ctx);
  return j;
}

// ---- bootstrap ----

BootstrapSpec boot_spec(const Context& ctx) {
  BootstrapSpec s;
  s.d = ctx.cfg.d;
  s.ell = ctx.cfg.ell;
  if (ctx.cfg.q && ctx.cfg.infected) throw UsageError("give only one of --q and --infected");
  if (ctx.cfg.infected) {
    s.initial = BootstrapSpec::Initial::count;
    s.m = *ctx.cfg.infected;
  } else {
    s.q = ctx.cfg.q.value_or(0.0);
  }
  s.validate();
  return s;
}

struct BootSim {
  std::vector<double> frac, full, corr;
};

BootSim simulate_bootstrap(const Context& ctx, const BootstrapSpec& spec) {
  if (ctx.cfg.n == 0) throw UsageError("--n must be positive");
  BootSim sim;
  std::size_t reps = ctx.cfg.reps;
  sim.frac.resize(reps);
  sim.full.resize(reps);
  sim.corr.resize(reps);
  DegreeSequence seq = sample_degree_sequence(DegreeDistribution::point_mass(spec.d), ctx.cfg.n, 0);
  if (seq.parity_fixed) throw UsageError("bootstrap: n * d must be even");
  parallel_for(reps, ctx.cfg.threads, [&](std::size_t i) {
    auto rs = ctx.rep_seed(i);
    Multigraph g = configuration_model(seq, derive_seed(rs, 1));
    BootstrapRun run = run_bootstrap(g, spec, derive_seed(rs, 2));
    sim.frac[i] = double(run.final_count) / double(ctx.cfg.n);
    sim.full[i] = run.fully_infected ? 1.0 : 0.0;
    if (ctx.cfg.check) sim.corr[i] = core_correspondence_check(g, spec, derive_seed(rs, 2)) ? 1.0 : 0.0;
  });
  return sim;
}

ojson cmd_bootstrap(Context& ctx) {
  BootstrapSpec spec = boot_spec(ctx);
  ojson j;
  j["command"] = ctx.cfg.command;
  j["d"] = spec.d;
  j["ell"] = spec.ell;
  j["k"] = spec.k();
  j["q_c"] = num(bootstrap_qc(spec.d, spec.ell));
  double q = spec.initial == BootstrapSpec::Initial::count
                 ? (ctx.cfg.n ? double(spec.m) / double(ctx.cfg.n) : 0.0)
                 : spec.q;
  BootstrapPrediction p = bootstrap_predict(spec.d, spec.ell, q);
  if (p.near_threshold) ctx.warnings.push_back("q within 1e-9 of q_c: no prediction");
  j["q"] = num(q);
  j["p_max"] = num(p.p_max);
  j["predicted_frac"] = num(p.predicted_frac);
  j["predicted_fully_infected"] = p.fully_infected;
  if (ctx.cfg.n > 0) {
    BootSim sim = simulate_bootstrap(ctx, spec);
    Stat sf = stat_of(sim.frac), su = stat_of(sim.full);
    j["sim_final_frac"] = num(sf.mean);
    j["sim_final_frac_stderr"] = num(sf.stderr_);
    j["sim_fully_infected_fraction"] = num(su.mean);
    if (ctx.cfg.check) j["correspondence_pass_fraction"] = num(stat_of(sim.corr).mean);
    j["n"] = ctx.cfg.n;
    j["seed"] = ctx.seed();
    j["reps"] = ctx.cfg.reps;
  }
  j["warnings"] = warnings_json(ctx);
  return j;
}

// ---- branching ----

ojson cmd_branching(Context& ctx) {
  DegreeDistribution d = ctx.dist();
  const int k = ctx.cfg.k;
  ojson j = ctx.header();
  j["k"] = k;
  try {
    j["p_max_recursion"] = num(pmax_recursion(d, k));
  } catch (const SlowConvergenceError& e) {
    ctx.warnings.push_back(e.what());
    j["p_max_recursion"] = num(e.last_iterate);
  }
  j["p_max_root"] = num(kcore_site(d, k, 1.0).p_max);
  j["survival_probability"] = num(survival_probability(d));
  if (ctx.cfg.seed && ctx.cfg.reps > 0) {
    int depth = ctx.cfg.depth > 0 ? ctx.cfg.depth : default_containment_depth(k, ctx.cfg.reps, ctx.cfg.budget);
    if (depth < 1) throw UsageError("branching: budget too small for depth 1");
    auto iters = pmax_iterates(d, k, std::size_t(depth));
    ojson it = ojson::array();
    for (double x : iters) it.push_back(num(x));
    j["iterates"] = it;
    BranchingModel model(d);
    ContainmentEstimate est =
        mc_tree_containment(model, k, depth, ctx.cfg.reps, ctx.seed(), ctx.cfg.root_variant, ctx.cfg.budget);
    double target = ctx.cfg.root_variant ? h1_func(d, k, iters[std::size_t(depth - 1)]) : iters.back();
    j["mc"] = {{"depth", depth},
               {"reps", ctx.cfg.reps},
               {"root_variant", ctx.cfg.root_variant},
               {"estimate", num(est.estimate)},
               {"stderr", num(est.stderr_)},
               {"nodes", est.nodes},
               {"target", num(target)},
               {"seed", ctx.seed()}};
  }
  j["warnings"] = warnings_json(ctx);
  return j;
}

// ---- generate / percolate ----

std::string cmd_generate(Context& ctx) {
  auto rs = ctx.rep_seed(0);
  DegreeSequence seq = ctx.sequence(rs);
  Multigraph g = ctx.cfg.simple ? configuration_model_simple(seq, derive_seed(rs, 1))
                                : configuration_model(seq, derive_seed(rs, 1));
  std::ostringstream os;
  if (ctx.cfg.format == "edges") {
    write_edge_list(os, g);
    return os.str();
  }
  GraphStats st = graph_stats(g);
  ComponentReport comp = components(g);
  ojson j = ctx.header();
  j["n"] = seq.size();
  j["seed"] = ctx.seed();
  j["edges"] = g.num_edges();
  j["parity_fixed"] = seq.parity_fixed;
  j["simple"] = is_simple(g);
  j["max_degree"] = seq.max_degree();
  j["c1_v"] = comp.size(0);
  j["c1_e"] = comp.edges(0);
  j["c2_v"] = comp.size(1);
  j["profile"] = st.profile;
  os << j.dump(2) << '\n';
  return os.str();
}

std::string cmd_percolate(Context& ctx) {
  PercolationSpec spec = ctx.perc_spec();
  std::size_t reps = ctx.cfg.reps;
  std::ostringstream os;
  if (ctx.cfg.format == "edges") {
    auto rs = ctx.rep_seed(0);
    write_edge_list(os, ctx.percolated(ctx.sequence(rs), spec, rs));
    return os.str();
  }
  std::vector<ojson> rows(reps);
  parallel_for(reps, ctx.cfg.threads, [&](std::size_t i) {
    auto rs = ctx.rep_seed(i);
    DegreeSequence seq = ctx.sequence(rs);
    Multigraph g = ctx.percolated(seq, spec, rs);
    GraphStats st = graph_stats(g);
    ComponentReport comp = components(g);
    ojson r;
    r["index"] = i;
    r["v"] = st.v;
    r["e"] = st.e;
    r["c1_v"] = comp.size(0);
    r["c1_e"] = comp.edges(0);
    r["c2_v"] = comp.size(1);
    Multigraph core = k_core(g, ctx.cfg.k);
    r["core_v"] = core.num_vertices();
    r["core_e"] = core.num_edges();
    rows[i] = std::move(r);
  });
  ojson j = ctx.header();
  j["mode"] = ctx.cfg.mode;
  j["method"] = ctx.cfg.method;
  j["k"] = ctx.cfg.k;
  j["n"] = ctx.cfg.n;
  j["seed"] = ctx.seed();
  j["reps"] = reps;
  if (spec.mode != PercolationSpec::Mode::fixed_count && !ctx.cfg.dist.empty()) {
    ExplodedProfile ep = predict_exploded_profile(ctx.dist(), spec, 16);
    ojson probs = ojson::array();
    for (double x : ep.probs) probs.push_back(num(x));
    j["predicted_exploded"] = {{"zeta", num(ep.zeta)},
                               {"lambda_tilde", num(ep.lambda_tilde)},
                               {"red_fraction", num(ep.red_fraction)},
                               {"probs", probs}};
  }
  ojson arr = ojson::array();
  for (auto& r : rows) arr.push_back(std::move(r));
  j["replicates"] = arr;
  os << j.dump(2) << '\n';
  return os.str();
}

// ---- compare ----

ojson check(const std::string& name, double theory, const Stat& sim, double tol) {
  double diff = std::abs(sim.mean - theory);
  bool pass = std::isfinite(theory) && diff <= tol;
  return {{"name", name}, {"theory", num(theory)}, {"sim_mean", num(sim.mean)}, {"sim_stderr", num(sim.stderr_)},
          {"abs_diff", num(diff)}, {"tol", num(tol)}, {"pass", pass}};
}

ojson cmd_compare(Context& ctx, bool& all_pass) {
  const double tol = ctx.cfg.tol;
  ojson checks = ojson::array();
  ojson j;
  j["command"] = ctx.cfg.command;
  j["what"] = ctx.cfg.what;
  if (ctx.cfg.what == "giant") {
    PercolationSpec spec = ctx.perc_spec();
    GiantReport r = giant_analytic(ctx, spec);
    GiantSim sim = simulate_giant(ctx, spec);
    checks.push_back(check("v_frac", r.v_frac, stat_of(sim.v), tol));
    checks.push_back(check("e_frac", r.e_frac, stat_of(sim.e), tol));
    j["pi"] = num(r.pi);
  } else if (ctx.cfg.what == "kcore") {
    PercolationSpec spec = ctx.perc_spec();
    KCoreReport r = kcore_analytic(ctx, spec);
    KCoreSim sim = simulate_kcore(ctx, spec);
    checks.push_back(check("v_frac", r.v_frac, stat_of(sim.v), tol));
    checks.push_back(check("e_frac", r.e_frac, stat_of(sim.e), tol));
    j["k"] = ctx.cfg.k;
    j["pi"] = num(r.pi);
  } else if (ctx.cfg.what == "bootstrap") {
    BootstrapSpec spec = boot_spec(ctx);
    if (spec.initial != BootstrapSpec::Initial::probability) throw UsageError("compare bootstrap needs --q");
    BootstrapPrediction p = bootstrap_predict(spec.d, spec.ell, spec.q);
    BootSim sim = simulate_bootstrap(ctx, spec);
    checks.push_back(check("final_frac", p.predicted_frac, stat_of(sim.frac), tol));
    j["d"] = spec.d;
    j["ell"] = spec.ell;
    j["q"] = num(spec.q);
  } else {
    throw UsageError("unknown --what '" + ctx.cfg.what + "'");
  }
  all_pass = true;
  for (auto& c : checks) all_pass = all_pass && c["pass"].get<bool>();
  j["n"] = ctx.cfg.n;
  j["seed"] = ctx.seed();
  j["reps"] = ctx.cfg.reps;
  j["checks"] = checks;
  j["pass"] = all_pass;
  j["warnings"] = warnings_json(ctx);
  return j;
}

void add_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--dist", c.dist, "degree law: inline JSON, shorthand or JSON file");
  sub->add_option("--degrees", c.degrees, "degree sequence file (one integer per line)")->check(CLI::ExistingFile);
  sub->add_option("--n", c.n, "number of vertices");
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--reps", c.reps, "replicates");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--mode", c.mode, "site | site-per-degree | bond | fixed")
      ->check(CLI::IsMember({"site", "site-per-degree", "bond", "fixed"}));
  sub->add_option("--pi", c.pi, "retention probability");
  sub->add_option("--pis", c.pis, "per-degree retention: JSON file or inline");
  sub->add_option("--m", c.m, "fixed mode: number of deleted vertices");
  sub->add_flag("--first-m", c.first_m, "fixed mode: delete vertices 0..m-1");
  sub->add_option("--method", c.method, "explosion | direct")->check(CLI::IsMember({"explosion", "direct"}));
  sub->add_option("--k", c.k, "core order")->check(CLI::Range(1, 1 << 20));
  sub->add_option("--d", c.d, "bootstrap degree");
  sub->add_option("--ell", c.ell, "bootstrap threshold");
  sub->add_option("--q", c.q, "bootstrap initial infection probability");
  sub->add_option("--infected", c.infected, "bootstrap: infect vertices 0..m-1 instead");
  sub->add_option("--depth", c.depth, "branching: tree depth (default from budget)");
  sub->add_flag("--root-variant", c.root_variant, "branching: root has offspring law D and needs k children");
  sub->add_option("--budget", c.budget, "branching: node budget");
  sub->add_option("--points", c.points, "kcore-curve: uniform grid size (default mixed grid)");
  sub->add_flag("--simple", c.simple, "generate: reject until simple");
  sub->add_flag("--check", c.check, "bootstrap: run the core correspondence check");
  sub->add_option("--what", c.what, "compare: giant | kcore | bootstrap");
  sub->add_option("--tol", c.tol, "compare: absolute tolerance");
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--format", c.format, "json | csv | edges")->check(CLI::IsMember({"json", "csv", "edges"}));
  sub->add_flag("--strict", c.strict, "exit 3 when a numeric warning is raised");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"percolation lab for configuration-model multigraphs", "perclab"};
  app.require_subcommand(1);
  RunConfig cfg;
  const char* names[] = {"generate", "percolate", "giant", "kcore", "kcore-curve",
                         "transitions", "bootstrap", "branching", "compare"};
  const char* about[] = {"sample a configuration-model multigraph",
                         "percolate sampled graphs and report component and core sizes",
                         "giant component prediction and simulation",
                         "k-core prediction and simulation",
                         "phi, h, h1 over a p-grid",
                         "k-core phase transitions in pi",
                         "bootstrap percolation on random regular multigraphs",
                         "branching-process oracle for p_max",
                         "simulation against theory with tolerances"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(names); ++i) {
    subs.push_back(app.add_subcommand(names[i], about[i]));
    add_options(subs.back(), cfg);
  }

  std::vector<std::string> argv_store{"perclab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (auto* s : subs)
    if (s->parsed()) cfg.command = s->get_name();

  Context ctx(cfg);
  std::string text;
  int code = kExitOk;
  try {
    if (cfg.reps == 0) throw UsageError("--reps must be positive");
    const std::string& c = cfg.command;
    if (c == "generate") {
      text = cmd_generate(ctx);
    } else if (c == "percolate") {
      text = cmd_percolate(ctx);
    } else if (c == "kcore-curve") {
      text = cmd_kcore_curve(ctx);
    } else {
      ojson j;
      if (c == "giant") j = cmd_giant(ctx);
      else if (c == "kcore") j = cmd_kcore(ctx);
      else if (c == "transitions") j = cmd_transitions(ctx);
      else if (c == "bootstrap") j = cmd_bootstrap(ctx);
      else if (c == "branching") j = cmd_branching(ctx);
      else if (c == "compare") {
        bool pass = false;
        j = cmd_compare(ctx, pass);
        if (!pass) code = kExitTolerance;
      }
      text = j.dump(2) + "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kExitUsage;
    }
    f << text;
  }
  for (auto& w : ctx.warnings) err << "warning: " << w << '\n';
  if (code == kExitOk && cfg.strict && !ctx.warnings.empty()) code = kExitStrict;
  return code;
}

}  // namespace perclab
