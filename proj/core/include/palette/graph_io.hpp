#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "palette/graph.hpp"

namespace palette {

// Edge-list text format: one reveal per line, "u v" as whitespace separated
// non-negative integers, reveal order = line order. Blank lines and lines
// whose first non-blank character is '#' are skipped.
//
// Throws StructuralError with the offending line number on malformed input.
std::vector<Endpoints> read_edge_list(std::istream& in);

void write_edge_list(std::ostream& out, std::span<const Endpoints> edges);

// Builds a graph by adding the edges in order.
Graph build_graph(std::span<const Endpoints> edges);

}  // namespace palette
