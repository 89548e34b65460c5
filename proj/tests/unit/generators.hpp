#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "palette/coloring.hpp"
#include "palette/graph.hpp"
#include "palette/rng.hpp"

namespace palette::testing {

// Random labeled tree on edges+1 vertices: each new vertex hangs off a
// uniformly chosen earlier one, then vertices and reveal order are shuffled.
inline std::vector<Endpoints> random_tree_edges(std::size_t edges, RngStream& rng) {
  const std::size_t n = edges + 1;
  std::vector<VertexId> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<VertexId>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[rng.below(i)]);
  std::vector<Endpoints> out;
  for (std::size_t v = 1; v < n; ++v) out.push_back({label[rng.below(v)], label[v]});
  for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng.below(i)]);
  return out;
}

// Forest: a random tree with some edges dropped.
inline std::vector<Endpoints> random_forest_edges(std::size_t max_edges, RngStream& rng) {
  const auto tree = random_tree_edges(1 + rng.below(max_edges), rng);
  std::vector<Endpoints> out;
  for (const auto& e : tree) {
    if (rng.below(4) != 0) out.push_back(e);
  }
  if (out.empty()) out.push_back(tree.front());
  return out;
}

// Proper coloring choosing, per edge in order, a uniform free color or
// leaving it pending.
inline PartialColoring random_proper_coloring(const Graph& g, int k, RngStream& rng) {
  PartialColoring state(k);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto free = state.available(g, e).to_vector();
    if (free.empty() || rng.below(5) == 0) {
      state.reject(g, e);
    } else {
      state.assign(g, e, free[rng.below(free.size())]);
    }
  }
  return state;
}

}  // namespace palette::testing

namespace palette::testing {

// Tree whose new vertices attach to one of the first `hubs` vertices, so
// degrees get large enough for rejections at bigger k.
inline std::vector<Endpoints> random_bushy_tree_edges(std::size_t edges, std::size_t hubs, RngStream& rng) {
  std::vector<Endpoints> out;
  for (std::size_t v = 1; v <= edges; ++v) {
    const std::size_t pool = std::min(v, hubs);
    out.push_back({static_cast<VertexId>(rng.below(pool)), static_cast<VertexId>(v)});
  }
  for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng.below(i)]);
  return out;
}

}  // namespace palette::testing
