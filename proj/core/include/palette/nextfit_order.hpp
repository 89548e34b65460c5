#pragma once

#include <cstddef>
#include <vector>

#include "palette/coloring.hpp"
#include "palette/engine.hpp"
#include "palette/graph.hpp"

namespace palette::adversary {

struct NextFitOrder {
  RevealSequence sequence;            // colored edges only, in reveal order
  std::vector<EdgeId> source_edges;   // sequence.edges[i] is source_edges[i] of the input graph
  std::vector<int> renaming;          // renaming[c-1]: color Next-Fit will give to input color c
  std::size_t base_count = 0;         // n: every color is used n or n+1 times
};

// Reveal order under which Next-Fit reproduces `coloring` up to renaming.
// Colors used n+1 times are renamed to 1..h, the others to h+1..k; then
// round r reveals the r-th edge of each renamed color 1, 2, ..., k in turn.
// Every reveal's target color is the one after Next-Fit's last color and is
// free at both endpoints, because the target coloring is proper.
//
// Throws ParameterError when the counts over all k colors do not take at
// most two consecutive values, and StructuralError for an improper coloring.
NextFitOrder nextfit_order(const Graph& g, const PartialColoring& coloring);

// Maps a coloring of the reveal sequence (edge i = sequence edge i) back onto
// the input graph's edge ids; edges outside the sequence stay pending.
PartialColoring pull_back(const Graph& g, const NextFitOrder& order, const PartialColoring& replayed);

}  // namespace palette::adversary
