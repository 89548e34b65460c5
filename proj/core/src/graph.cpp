#include "palette/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "palette/coloring.hpp"
#include "palette/errors.hpp"

namespace palette {

void require_valid_k(int k) {
  if (k < 1 || k > kMaxColors) {
    throw ParameterError("number of colors k must lie in 1.." + std::to_string(kMaxColors) +
                         ", got " + std::to_string(k));
  }
}

EdgeId Graph::add_edge(VertexId u, VertexId v) {
  if (u == v) throw StructuralError("self-loop at vertex " + std::to_string(u));
  if (has_edge(u, v)) {
    throw StructuralError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  const auto needed = static_cast<std::size_t>(std::max(u, v)) + 1;
  if (incident_.size() < needed) incident_.resize(needed);
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({u, v});
  incident_[u].push_back(id);
  incident_[v].push_back(id);
  return id;
}

std::span<const EdgeId> Graph::incident(VertexId v) const {
  if (v >= incident_.size()) return {};
  return incident_[v];
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& inc : incident_) best = std::max(best, inc.size());
  return best;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  // Scan the smaller incidence list; degrees in the constructions are small.
  const auto iu = incident(u);
  const auto iv = incident(v);
  const bool scan_u = iu.size() <= iv.size();
  const VertexId from = scan_u ? u : v;
  const VertexId to = scan_u ? v : u;
  for (EdgeId e : scan_u ? iu : iv) {
    if (other_end(e, from) == to) return true;
  }
  return false;
}

bool Graph::adjacent(EdgeId a, EdgeId b) const {
  if (a == b) return false;
  const auto ea = edges_[a];
  const auto eb = edges_[b];
  return ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v;
}

bool is_isolated_at_reveal(const Graph& g, EdgeId e) {
  const auto ends = g.endpoints(e);
  for (VertexId x : {ends.u, ends.v}) {
    for (EdgeId f : g.incident(x)) {
      if (f < e) return false;
    }
  }
  return true;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t non_isolated_vertices(const Graph& g) {
  std::size_t n = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) n += g.degree(v) > 0 ? 1 : 0;
  return n;
}

}  // namespace

bool is_acyclic(const Graph& g) {
  DisjointSets sets(g.num_vertices());
  for (const auto& e : g.edges()) {
    if (!sets.unite(e.u, e.v)) return false;
  }
  return true;
}

bool is_tree(const Graph& g) {
  if (!is_acyclic(g)) return false;
  // An acyclic graph is connected iff |E| = |V| - 1 over its non-isolated vertices.
  return g.num_edges() == 0 || g.num_edges() + 1 == non_isolated_vertices(g);
}

GraphClass classify(const Graph& g) {
  if (g.num_edges() == 0) return {GraphKind::Path, 0};
  if (!is_tree(g)) return {GraphKind::Other, 0};
  const std::size_t delta = g.max_degree();
  if (delta <= 2) return {GraphKind::Path, 0};
  if (delta == g.num_edges()) return {GraphKind::Star, g.num_edges()};
  return {GraphKind::Tree, 0};
}

std::vector<EdgeId> path_walk(const Graph& g) {
  if (classify(g).kind != GraphKind::Path) throw StructuralError("graph is not a path");
  std::vector<EdgeId> order;
  if (g.num_edges() == 0) return order;
  VertexId start = 0;
  while (g.degree(start) != 1) ++start;
  VertexId at = start;
  EdgeId prev = static_cast<EdgeId>(g.num_edges());
  order.reserve(g.num_edges());
  while (order.size() < g.num_edges()) {
    for (EdgeId e : g.incident(at)) {
      if (e != prev) {
        order.push_back(e);
        prev = e;
        at = g.other_end(e, at);
        break;
      }
    }
  }
  return order;
}

// --- PartialColoring -------------------------------------------------------

PartialColoring::PartialColoring(int k) : k_(k) { require_valid_k(k); }

EdgeStatus PartialColoring::status(EdgeId e) const {
  if (e >= assignment_.size() || assignment_[e] == 0) return EdgeStatus::Pending;
  return assignment_[e] < 0 ? EdgeStatus::Rejected : EdgeStatus::Colored;
}

std::optional<Color> PartialColoring::color_of(EdgeId e) const {
  if (e >= assignment_.size() || assignment_[e] <= 0) return std::nullopt;
  return Color(assignment_[e]);
}

ColorSet PartialColoring::colors_at(VertexId v) const {
  return v < at_vertex_.size() ? at_vertex_[v] : ColorSet{};
}

ColorSet PartialColoring::available(const Graph& g, EdgeId e) const {
  const auto ends = g.endpoints(e);
  return (colors_at(ends.u) | colors_at(ends.v)).complement(k_);
}

void PartialColoring::grow(const Graph& g, EdgeId e) {
  if (e >= g.num_edges()) throw StructuralError("edge " + std::to_string(e) + " not in graph");
  if (assignment_.size() <= e) assignment_.resize(e + 1, 0);
  if (at_vertex_.size() < g.num_vertices()) at_vertex_.resize(g.num_vertices());
  if (assignment_[e] != 0) throw StructuralError("edge " + std::to_string(e) + " already decided");
}

void PartialColoring::assign(const Graph& g, EdgeId e, Color c) {
  grow(g, e);
  if (c.value() < 1 || c.value() > k_) {
    throw StructuralError("color " + std::to_string(c.value()) + " outside 1.." + std::to_string(k_));
  }
  if (!available(g, e).contains(c)) {
    throw StructuralError("color " + std::to_string(c.value()) + " not available at edge " +
                          std::to_string(e));
  }
  const auto ends = g.endpoints(e);
  assignment_[e] = c.value();
  at_vertex_[ends.u].insert(c);
  at_vertex_[ends.v].insert(c);
  ++colored_;
}

void PartialColoring::reject(const Graph& g, EdgeId e) {
  grow(g, e);
  assignment_[e] = -1;
  ++rejected_;
}

std::vector<std::size_t> PartialColoring::color_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(k_), 0);
  for (int a : assignment_) {
    if (a > 0) ++counts[static_cast<std::size_t>(a - 1)];
  }
  return counts;
}

ColorSet recompute_colors_at(const Graph& g, const PartialColoring& state, VertexId v) {
  ColorSet s;
  for (EdgeId e : g.incident(v)) {
    if (auto c = state.color_of(e)) s.insert(*c);
  }
  return s;
}

bool is_proper(const Graph& g, const PartialColoring& state) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    ColorSet seen;
    for (EdgeId e : g.incident(v)) {
      const auto c = state.color_of(e);
      if (!c) continue;
      if (seen.contains(*c)) return false;
      seen.insert(*c);
    }
  }
  return true;
}

bool cache_coherent(const Graph& g, const PartialColoring& state) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (recompute_colors_at(g, state, v) != state.colors_at(v)) return false;
  }
  return true;
}

}  // namespace palette
