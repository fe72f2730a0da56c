#include "perclab/multigraph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "perclab/errors.hpp"

namespace perclab {

Multigraph::Multigraph(std::size_t n, std::vector<Edge> edges, std::vector<VertexId> origin)
    : n_(n), edges_(std::move(edges)), origin_(std::move(origin)) {
  if (!origin_.empty() && origin_.size() != n_) throw std::invalid_argument("Multigraph: origin size mismatch");
  for (auto& e : edges_)
    if (e.u >= n_ || e.v >= n_) throw std::invalid_argument("Multigraph: edge endpoint out of range");
}

std::vector<std::int64_t> Multigraph::degrees() const {
  std::vector<std::int64_t> d(n_, 0);
  for (auto& e : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

Adjacency build_adjacency(const Multigraph& g) {
  Adjacency a;
  const std::size_t n = g.num_vertices();
  a.offset.assign(n + 1, 0);
  for (auto& e : g.edges()) {
    ++a.offset[e.u + 1];
    ++a.offset[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) a.offset[i + 1] += a.offset[i];
  a.nbr.resize(a.offset[n]);
  std::vector<std::size_t> pos(a.offset.begin(), a.offset.end() - 1);
  for (auto& e : g.edges()) {
    a.nbr[pos[e.u]++] = e.v;
    a.nbr[pos[e.v]++] = e.u;
  }
  return a;
}

Multigraph configuration_model(const DegreeSequence& seq, Rng& rng) {
  std::int64_t total = 0;
  for (auto d : seq.degrees) {
    if (d < 0) throw std::invalid_argument("configuration_model: negative degree");
    total += d;
  }
  if (total % 2 != 0) throw ParityError("configuration_model: odd number of half-edges");
  std::vector<VertexId> stubs;
  stubs.reserve(std::size_t(total));
  for (std::size_t v = 0; v < seq.size(); ++v)
    for (std::int64_t i = 0; i < seq.degrees[v]; ++i) stubs.push_back(VertexId(v));
  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<Edge> edges(stubs.size() / 2);
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = {stubs[2 * i], stubs[2 * i + 1]};
  return Multigraph(seq.size(), std::move(edges));
}

Multigraph configuration_model(const DegreeSequence& seq, std::uint64_t seed) {
  Rng rng(seed);
  return configuration_model(seq, rng);
}

Multigraph configuration_model_simple(const DegreeSequence& seq, std::uint64_t seed, std::size_t max_attempts) {
  Rng rng(seed);
  for (std::size_t a = 0; a < max_attempts; ++a) {
    Multigraph g = configuration_model(seq, rng);
    if (is_simple(g)) return g;
  }
  double s1 = 0, s2 = 0;
  for (auto d : seq.degrees) {
    s1 += double(d);
    s2 += double(d) * double(d);
  }
  std::ostringstream os;
  os << "no simple graph after " << max_attempts << " attempts; sum d^2 / sum d = " << (s1 > 0 ? s2 / s1 : 0.0)
     << " (a simple realization is likely only when sum d^2 = O(sum d))";
  throw SimplicityError(os.str());
}

bool is_simple(const Multigraph& g) {
  std::vector<std::pair<VertexId, VertexId>> p;
  p.reserve(g.num_edges());
  for (auto& e : g.edges()) {
    if (e.u == e.v) return false;
    p.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(p.begin(), p.end());
  return std::adjacent_find(p.begin(), p.end()) == p.end();
}

namespace {

struct DisjointSets {
  std::vector<VertexId> parent;
  std::vector<std::uint32_t> size;
  explicit DisjointSets(std::size_t n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  VertexId find(VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

}  // namespace

ComponentReport components(const Multigraph& g) {
  const std::size_t n = g.num_vertices();
  ComponentReport r;
  if (n == 0) return r;
  DisjointSets ds(n);
  for (auto& e : g.edges()) ds.unite(e.u, e.v);

  std::vector<std::uint32_t> root_index(n, UINT32_MAX);
  struct Comp {
    std::size_t size = 0, edges = 0;
    VertexId min_v = 0;
  };
  std::vector<Comp> comps;
  std::vector<std::uint32_t> comp_of(n);
  for (VertexId v = 0; v < n; ++v) {
    VertexId root = ds.find(v);
    if (root_index[root] == UINT32_MAX) {
      root_index[root] = std::uint32_t(comps.size());
      comps.push_back({0, 0, v});  // vertices visited in increasing order, so v is the minimum
    }
    comp_of[v] = root_index[root];
    ++comps[comp_of[v]].size;
  }
  for (auto& e : g.edges()) ++comps[comp_of[e.u]].edges;

  std::vector<std::uint32_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (comps[a].size != comps[b].size) return comps[a].size > comps[b].size;
    return comps[a].min_v < comps[b].min_v;
  });
  std::vector<std::uint32_t> rank(comps.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = std::uint32_t(i);
    r.sizes.push_back(comps[order[i]].size);
    r.edge_counts.push_back(comps[order[i]].edges);
    r.smallest_vertex.push_back(comps[order[i]].min_v);
  }
  r.label.resize(n);
  for (VertexId v = 0; v < n; ++v) r.label[v] = rank[comp_of[v]];

  auto deg = g.degrees();
  for (VertexId v = 0; v < n; ++v) {
    if (r.label[v] != 0) continue;
    auto d = std::size_t(deg[v]);
    if (r.largest_degree_profile.size() <= d) r.largest_degree_profile.resize(d + 1, 0);
    ++r.largest_degree_profile[d];
  }
  return r;
}

Multigraph induced_subgraph(const Multigraph& g, const std::vector<char>& keep) {
  const std::size_t n = g.num_vertices();
  if (keep.size() != n) throw std::invalid_argument("induced_subgraph: mask size mismatch");
  std::vector<VertexId> new_id(n, UINT32_MAX);
  std::vector<VertexId> origin;
  for (VertexId v = 0; v < n; ++v)
    if (keep[v]) {
      new_id[v] = VertexId(origin.size());
      origin.push_back(g.origin(v));
    }
  std::vector<Edge> edges;
  for (auto& e : g.edges())
    if (keep[e.u] && keep[e.v]) edges.push_back({new_id[e.u], new_id[e.v]});
  const std::size_t m = origin.size();
  return Multigraph(m, std::move(edges), std::move(origin));
}

std::vector<char> k_core_mask(const Multigraph& g, int k, std::span<const VertexId> order) {
  if (k < 2) throw std::invalid_argument("k_core: k must be >= 2");
  const std::size_t n = g.num_vertices();
  Adjacency adj = build_adjacency(g);
  std::vector<std::int64_t> deg(n);
  for (VertexId v = 0; v < n; ++v) deg[v] = std::int64_t(adj.degree(v));
  std::vector<char> removed(n, 0);
  std::vector<VertexId> stack;
  auto seed_vertex = [&](VertexId v) {
    if (!removed[v] && deg[v] < k) {
      removed[v] = 1;
      stack.push_back(v);
    }
  };
  if (order.empty())
    for (VertexId v = 0; v < n; ++v) seed_vertex(v);
  else
    for (VertexId v : order) seed_vertex(v);
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (std::size_t i = adj.offset[v]; i < adj.offset[v + 1]; ++i) {
      VertexId u = adj.nbr[i];
      if (u == v || removed[u]) continue;
      if (--deg[u] < k) {
        removed[u] = 1;
        stack.push_back(u);
      }
    }
  }
  std::vector<char> keep(n);
  for (VertexId v = 0; v < n; ++v) keep[v] = !removed[v];
  return keep;
}

Multigraph k_core(const Multigraph& g, int k) { return induced_subgraph(g, k_core_mask(g, k)); }

GraphStats graph_stats(const Multigraph& g) {
  GraphStats s;
  s.v = g.num_vertices();
  s.e = g.num_edges();
  for (auto d : g.degrees()) {
    if (s.profile.size() <= std::size_t(d)) s.profile.resize(std::size_t(d) + 1, 0);
    ++s.profile[std::size_t(d)];
  }
  return s;
}

void write_edge_list(std::ostream& os, const Multigraph& g) {
  for (auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

DegreeSequence read_degree_sequence(std::istream& is) {
  DegreeSequence seq;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long d;
    std::string rest;
    if (!(ls >> d) || (ls >> rest) || d < 0)
      throw std::invalid_argument("degree sequence: bad entry on line " + std::to_string(lineno));
    seq.degrees.push_back(d);
  }
  if (seq.degrees.empty()) throw std::invalid_argument("degree sequence: empty input");
  return seq;
}

}  // namespace perclab
