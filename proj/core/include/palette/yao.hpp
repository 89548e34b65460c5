#pragma once

#include <cstddef>
#include <vector>

#include "palette/engine.hpp"
#include "palette/rng.hpp"

namespace palette::adversary {

// One draw from the hard input distribution on the path of a-2 edges,
// a = 3^b. Edge indices are 1-based path positions.
//
//  - `subphases` (L of them): subphase i reveals a/3^i isolated edges,
//    e_{2N_{i-1}+2j-1}, where N_i counts edges of the first i subphases.
//  - `spread`: a/3^{L+1} isolated edges e_{2N_L+3j-2}, every third edge of
//    the rest of the path.
//  - everything else afterwards, ascending.
struct YaoInstance {
  int b = 1;
  std::size_t a = 3;
  int levels = 0;  // L

  std::vector<std::vector<std::size_t>> subphases;       // E_1..E_L
  std::vector<std::size_t> spread;                       // E_{L+1}
  std::vector<std::vector<std::size_t>> gap_edges;       // F_1..F_L: join two edges of E_i
  std::vector<std::size_t> block_links;                  // joins last of E_i to first of E_{i+1}
  std::vector<std::size_t> spread_gaps;                  // F_{L+1}
  std::vector<std::size_t> order;                        // full reveal order

  std::size_t path_edges() const { return a - 2; }
  RevealSequence sequence() const;
};

// Deterministic instance with L fixed. Throws ParameterError unless
// b >= 1 and 0 <= levels <= b-1.
YaoInstance yao_instance(int b, int levels);

// Samples L with Pr[L = i] = 2^-(i+1) for i <= b-2 and Pr[L = b-1] = 2^-(b-1),
// i.e. a further subphase is added with probability 1/2 while L < b-1.
YaoInstance yao_sample(int b, RngStream& rng);

// Pr[L = i] under the sampling law.
double yao_level_probability(int b, int levels);

// Upper bound on any deterministic algorithm's expected colored count under
// the distribution: (4/5)a + 1/(5 a^(log_3 6 - 1)) + 1.
double yao_colored_bound(int b);

}  // namespace palette::adversary
