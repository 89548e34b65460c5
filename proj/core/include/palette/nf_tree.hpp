#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "palette/engine.hpp"

namespace palette::adversary {

// Worst-case tree for Next-Fit built from bunches of stars.
//
// One copy T: for each of N bunches a large star centred at v_i with k-s
// edges colored 1..k-s, and s-1 small stars with s edges each colored
// k-s+1..k. The unmarked edges join v_i to every small-star centre of its
// bunch, and v_{i+1} to the last small-star centre of bunch i. Every unmarked
// edge then sees all k colors, so Next-Fit rejects it.
//
// k copies of T carry the k cyclic shifts of that coloring, so every color is
// used equally often and a Next-Fit order for the marked edges exists. The
// reveal order is: marked edges (Next-Fit order), unmarked edges copy by
// copy, then k-1 edges joining leaves of consecutive copies into one tree.
struct BunchPlan {
  int k = 4;
  std::size_t bunches = 1;
  int small_size = 2;  // s

  std::vector<Endpoints> tree_edges;   // T, vertices 0..copy_vertices-1
  std::vector<bool> marked;            // per edge of T
  std::vector<int> target;             // color per edge of T, 0 when unmarked
  std::size_t copy_vertices = 0;       // copy t uses t*copy_vertices + vertex of T
  std::vector<Endpoints> joiners;
  RevealSequence sequence;

  std::size_t marked_per_copy() const;
  std::size_t unmarked_per_copy() const;
  std::size_t expected_colored() const;  // k * marked + k - 1
  std::size_t expected_rejected() const;  // k * unmarked
  std::size_t total_edges() const { return sequence.edges.size(); }
};

// Bunch construction with small-star size s. Throws ParameterError unless
// 2 <= s, s + 2 <= k (maximum degree stays at most k) and N >= 1.
BunchPlan plan_bunches(int k, std::size_t N, int s);

// s = sqrt(k); k must be a perfect square n^2 with n >= 2.
RevealSequence nf_tree_worstcase(int k, std::size_t N);

// s = ceil(sqrt(k)) for any k >= 4.
RevealSequence nf_tree_rounded(int k, std::size_t N);

// Integer square root; nullopt unless k is a perfect square.
std::optional<int> exact_sqrt(int k);
int ceil_sqrt(int k);

}  // namespace palette::adversary
