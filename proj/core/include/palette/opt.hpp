#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "palette/coloring.hpp"
#include "palette/graph.hpp"

namespace palette {

// An optimal offline solution: the chosen edge set with a proper coloring.
struct OptWitness {
  int k = 1;
  std::vector<std::optional<Color>> assignment;  // per edge; nullopt = not chosen
  std::size_t opt_count = 0;

  bool contains(EdgeId e) const { return e < assignment.size() && assignment[e].has_value(); }
  std::vector<EdgeId> chosen_edges() const;
  PartialColoring as_coloring(const Graph& g) const;
};

// Maximum colorable edges of a path with m edges: m for k >= 2, a maximum
// matching (ceil(m/2)) for k = 1. Throws ParameterError for k < 1.
std::size_t opt_path(std::size_t m, int k);

// Exact optimum on a forest. On trees k colors suffice for any subgraph of
// maximum degree k, so the optimum is a maximum degree-k-bounded edge subset;
// the witness coloring is built top-down from each component root. Throws
// StructuralError if g has a cycle.
OptWitness opt_tree(const Graph& g, int k);

inline constexpr std::size_t kBruteForceEdgeLimit = 16;

// Exhaustive search over edge subsets and colorings; any simple graph with at
// most kBruteForceEdgeLimit edges. Throws ParameterError above the guard.
OptWitness opt_bruteforce(const Graph& g, int k);

// opt_tree for forests, opt_bruteforce for small graphs with cycles.
OptWitness opt_exact(const Graph& g, int k);

// The witness is a proper coloring with colors in 1..k, its size matches
// opt_count and no vertex has more than k chosen edges.
bool audit_witness(const Graph& g, const OptWitness& witness);

}  // namespace palette
