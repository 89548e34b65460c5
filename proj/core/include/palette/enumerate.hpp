#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "palette/engine.hpp"
#include "palette/opt.hpp"

namespace palette::enumerate {

using OrderVisitor = std::function<void(std::span<const Endpoints>)>;

// Every reveal order of the path with m edges (edge i joins vertices i-1, i).
void for_each_path_order(std::size_t m, const OrderVisitor& visit);

// Every way of revealing a tree with `edges` edges, up to renaming vertices.
// Vertices are numbered by first appearance, so each step either joins two
// fresh vertices, hangs a fresh vertex off an old one, or joins two old
// vertices from different components. Every labeled tree with every reveal
// order is a relabeling of exactly one visited sequence.
void for_each_tree_order(std::size_t edges, const OrderVisitor& visit);

// Every run a fair algorithm can produce on `order`: at each step, each
// free color, or rejection when none is free.
void for_each_fair_trace(std::span<const Endpoints> order, int k, const std::function<void(const Trace&)>& visit);

inline constexpr std::size_t kWitnessEdgeLimit = 20;

// All maximum edge sets of a forest with at most k chosen edges per vertex,
// each with a proper coloring. Throws ParameterError above kWitnessEdgeLimit
// edges and StructuralError on a cycle.
std::vector<OptWitness> optimal_witnesses(const Graph& g, int k);

}  // namespace palette::enumerate
