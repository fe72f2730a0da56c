#pragma once

#include <cstdint>
#include <vector>

#include "perclab/multigraph.hpp"

namespace perclab {

struct BootstrapSpec {
  enum class Initial { probability, count };
  int d = 3;
  int ell = 2;
  Initial initial = Initial::probability;
  double q = 0;       // each vertex initially infected with probability q
  std::size_t m = 0;  // count mode: vertices 0..m-1 initially infected

  int k() const { return d + 1 - ell; }
  void validate() const;
};

struct BootstrapRun {
  std::vector<char> initial;   // I_0
  std::vector<char> infected;  // I_f
  std::size_t initial_count = 0;
  std::size_t final_count = 0;
  bool fully_infected = false;
};

// Threshold-ell infection to its fixed point. Parallel edges count with multiplicity and loops
// never infect their own vertex. Throws RegularityError unless every degree equals spec.d.
BootstrapRun run_bootstrap(const Multigraph& g, const BootstrapSpec& spec, std::uint64_t seed);
BootstrapRun run_bootstrap_from(const Multigraph& g, int ell, std::vector<char> initial);

// V \ I_f equals the (d+1-ell)-core of the subgraph induced by V \ I_0.
bool core_correspondence_check(const Multigraph& g, const BootstrapSpec& spec, std::uint64_t seed);

double bootstrap_qc(int d, int ell);

struct BootstrapPrediction {
  double q = 0;
  double q_c = 0;
  double p_max = 1;
  double predicted_frac = 0;  // lim |I_f| / n (NaN within 1e-9 of q_c)
  bool fully_infected = false;  // asserted only for ell <= d - 2 above q_c
  bool near_threshold = false;
  int roots = 0;  // roots of P(Bi(d-1, 1-p) <= ell-1) / p = 1/(1-q) on (0, 1]
};

BootstrapPrediction bootstrap_predict(int d, int ell, double q);

}  // namespace perclab
