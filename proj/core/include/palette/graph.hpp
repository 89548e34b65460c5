#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "palette/color.hpp"

namespace palette {

// Dense 0-based identifiers. Edge ids are assigned in reveal order.
using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Endpoints {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Endpoints&, const Endpoints&) = default;
};

// Simple undirected graph grown one edge at a time. Vertices come into
// existence the first time an edge mentions them; every id below the largest
// mentioned id exists (possibly isolated).
class Graph {
 public:
  Graph() = default;

  // Throws StructuralError on a self-loop or a parallel edge.
  EdgeId add_edge(VertexId u, VertexId v);

  std::size_t num_vertices() const { return incident_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  Endpoints endpoints(EdgeId e) const { return edges_[e]; }
  std::span<const Endpoints> edges() const { return edges_; }
  std::span<const EdgeId> incident(VertexId v) const;
  std::size_t degree(VertexId v) const { return incident(v).size(); }
  std::size_t max_degree() const;

  VertexId other_end(EdgeId e, VertexId v) const {
    const auto& ends = edges_[e];
    return ends.u == v ? ends.v : ends.u;
  }
  bool has_edge(VertexId u, VertexId v) const;
  bool adjacent(EdgeId a, EdgeId b) const;

 private:
  std::vector<Endpoints> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

// True iff neither endpoint of e touches an edge revealed before e, i.e. both
// endpoints had degree 0 when e arrived. Rejected neighbours count.
bool is_isolated_at_reveal(const Graph& g, EdgeId e);

enum class GraphKind { Path, Star, Tree, Other };

struct GraphClass {
  GraphKind kind = GraphKind::Other;
  std::size_t star_edges = 0;  // m for Star(m)

  friend bool operator==(const GraphClass&, const GraphClass&) = default;
};

// Structural class of the whole graph, ignoring isolated vertices. Paths take
// precedence over stars (K_{1,2} is a path); Star(m) needs m >= 3. The empty
// graph is the path with no edges. Forests with more than one component are
// Other.
GraphClass classify(const Graph& g);

bool is_acyclic(const Graph& g);
bool is_tree(const Graph& g);  // acyclic and connected over non-isolated vertices

// Edges of a path graph in walk order starting from the lower-id end vertex.
// Throws StructuralError if g is not a path.
std::vector<EdgeId> path_walk(const Graph& g);

}  // namespace palette
