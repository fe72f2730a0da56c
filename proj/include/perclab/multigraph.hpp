#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "perclab/degree_model.hpp"
#include "perclab/rng.hpp"

namespace perclab {

using VertexId = std::uint32_t;

// One edge = one pair of half-edges. A loop is (v, v).
struct Edge {
  VertexId u;
  VertexId v;
};

class Multigraph {
 public:
  Multigraph() = default;
  Multigraph(std::size_t n, std::vector<Edge> edges, std::vector<VertexId> origin = {});

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<std::int64_t> degrees() const;
  // Label of v in the graph this one was cut from (identity for a freshly built graph).
  VertexId origin(VertexId v) const { return origin_.empty() ? v : origin_[v]; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<VertexId> origin_;
};

// Half-edge adjacency: a loop at v lists v twice in v's row.
struct Adjacency {
  std::vector<std::size_t> offset;
  std::vector<VertexId> nbr;
  std::size_t degree(VertexId v) const { return offset[v + 1] - offset[v]; }
};
Adjacency build_adjacency(const Multigraph& g);

struct ComponentReport {
  std::vector<std::size_t> sizes;       // non-increasing
  std::vector<std::size_t> edge_counts; // aligned with sizes
  std::vector<VertexId> smallest_vertex;
  std::vector<std::size_t> largest_degree_profile;  // v_j(C_1)
  std::vector<std::uint32_t> label;                  // component rank of each vertex

  std::size_t size(std::size_t rank) const { return rank < sizes.size() ? sizes[rank] : 0; }
  std::size_t edges(std::size_t rank) const { return rank < edge_counts.size() ? edge_counts[rank] : 0; }
};

struct GraphStats {
  std::size_t v = 0;
  std::size_t e = 0;
  std::vector<std::size_t> profile;  // v_j
};

Multigraph configuration_model(const DegreeSequence& seq, std::uint64_t seed);
Multigraph configuration_model(const DegreeSequence& seq, Rng& rng);
// Rejection sampling until simple; throws SimplicityError after max_attempts.
Multigraph configuration_model_simple(const DegreeSequence& seq, std::uint64_t seed,
                                      std::size_t max_attempts = 10000);

bool is_simple(const Multigraph& g);
ComponentReport components(const Multigraph& g);
Multigraph induced_subgraph(const Multigraph& g, const std::vector<char>& keep);

// Membership mask of the k-core. Peeling starts from vertices in `order` (all, if empty).
std::vector<char> k_core_mask(const Multigraph& g, int k, std::span<const VertexId> order = {});
Multigraph k_core(const Multigraph& g, int k);
GraphStats graph_stats(const Multigraph& g);

void write_edge_list(std::ostream& os, const Multigraph& g);
DegreeSequence read_degree_sequence(std::istream& is);

}  // namespace perclab
