#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "palette/engine.hpp"

namespace palette::adversary {

// Paths are laid out on vertices 0..m with edge e_i = (i-1, i), 1-based i.
inline Endpoints path_edge(std::size_t i) {
  return {static_cast<VertexId>(i - 1), static_cast<VertexId>(i)};
}

// The path e_1..e_m revealed in order of the given 1-based indices.
RevealSequence path_order(std::size_t m, const std::vector<std::size_t>& indices, int k = 2);

// Path of 2m+1 edges: odd-numbered edges ascending, then even-numbered ones.
// Next-Fit alternates colors on the odd edges and must reject every even one.
RevealSequence nf_path_killer(std::size_t m);

// n disjoint two-edge paths, then connectors chosen from the algorithm's
// decisions so that at most 2n of the 3n-1 edges can be colored. Throws
// ParameterError for n = 0 and PreconditionError for randomized algorithms.
std::unique_ptr<AdversaryScript> det_path_killer(std::size_t n, const OnlineAlgorithm& alg);

// Edges with index = 1 (mod 3), then = 0 (mod 3), then the rest. Requires
// 3 | m - 1.
RevealSequence rp_strategy_mod3(std::size_t m);

// Odd-numbered edges, then even-numbered ones. Requires odd m.
RevealSequence rp_strategy_oddeven(std::size_t m);

// N stars of k+1 edges; star i+1 is centred at an endpoint of a colored edge
// of star i when one exists, otherwise at the lowest leaf. With tie_seed the
// choice among eligible leaves is uniform instead of lowest-id. Throws
// PreconditionError for algorithms that are both randomized and unfair.
std::unique_ptr<AdversaryScript> star_chain(int k, std::size_t N, const OnlineAlgorithm& alg,
                                            std::optional<std::uint64_t> tie_seed = std::nullopt);

// Path of m edges; if the algorithm's expected colored count on it exceeds
// km/(k+1), a k-edge star at every path vertex. The expectation is exact for
// deterministic algorithms and the mean of `trials` fresh-seed replays
// otherwise.
std::unique_ptr<AdversaryScript> path_then_stars(int k, std::size_t m, const OnlineAlgorithm& alg,
                                                 std::size_t trials = 1000, std::uint64_t seed = 1);

// Colorings equal up to renaming of colors: same colored and rejected edges,
// and a bijection between colors mapping one onto the other. Edges beyond
// either coloring's size count as pending.
bool equivalent(const PartialColoring& a, const PartialColoring& b);

}  // namespace palette::adversary
