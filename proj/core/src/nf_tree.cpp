#include "palette/nf_tree.hpp"

#include <string>

#include "palette/coloring.hpp"
#include "palette/errors.hpp"
#include "palette/graph.hpp"
#include "palette/nextfit_order.hpp"

namespace palette::adversary {

std::optional<int> exact_sqrt(int k) {
  if (k < 0) return std::nullopt;
  int r = 0;
  while ((r + 1) * (r + 1) <= k) ++r;
  return r * r == k ? std::optional<int>(r) : std::nullopt;
}

int ceil_sqrt(int k) {
  int r = 0;
  while (r * r < k) ++r;
  return r;
}

std::size_t BunchPlan::marked_per_copy() const {
  std::size_t n = 0;
  for (bool b : marked) n += b ? 1 : 0;
  return n;
}

std::size_t BunchPlan::unmarked_per_copy() const { return tree_edges.size() - marked_per_copy(); }

std::size_t BunchPlan::expected_colored() const {
  return static_cast<std::size_t>(k) * marked_per_copy() + static_cast<std::size_t>(k - 1);
}

std::size_t BunchPlan::expected_rejected() const { return static_cast<std::size_t>(k) * unmarked_per_copy(); }

BunchPlan plan_bunches(int k, std::size_t N, int s) {
  require_valid_k(k);
  if (N == 0) throw ParameterError("bunch construction needs N >= 1");
  if (s < 2 || s + 2 > k) {
    throw ParameterError("bunch construction needs 2 <= s <= k-2, got s = " + std::to_string(s) +
                         " for k = " + std::to_string(k));
  }
  BunchPlan plan;
  plan.k = k;
  plan.bunches = N;
  plan.small_size = s;

  VertexId next = 0;
  const auto add = [&](VertexId a, VertexId b, int color) {
    plan.tree_edges.push_back({a, b});
    plan.marked.push_back(color > 0);
    plan.target.push_back(color);
  };
  std::vector<VertexId> centers;               // v_i
  std::vector<std::vector<VertexId>> smalls;   // small-star centres per bunch
  std::vector<VertexId> leaves;
  for (std::size_t i = 0; i < N; ++i) {
    const VertexId v = next++;
    centers.push_back(v);
    for (int c = 1; c <= k - s; ++c) {
      leaves.push_back(next);
      add(v, next++, c);
    }
    auto& bunch_smalls = smalls.emplace_back();
    for (int j = 0; j < s - 1; ++j) {
      const VertexId w = next++;
      bunch_smalls.push_back(w);
      for (int c = k - s + 1; c <= k; ++c) {
        leaves.push_back(next);
        add(w, next++, c);
      }
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    for (VertexId w : smalls[i]) add(centers[i], w, 0);
  }
  for (std::size_t i = 0; i + 1 < N; ++i) add(centers[i + 1], smalls[i].back(), 0);
  plan.copy_vertices = next;

  // All marked edges of all copies, copy t shifted cyclically by t colors.
  Graph marked_forest;
  std::vector<std::pair<EdgeId, Color>> colors;
  for (int t = 0; t < k; ++t) {
    const auto offset = static_cast<VertexId>(static_cast<std::size_t>(t) * plan.copy_vertices);
    for (std::size_t e = 0; e < plan.tree_edges.size(); ++e) {
      if (!plan.marked[e]) continue;
      const auto id = marked_forest.add_edge(plan.tree_edges[e].u + offset, plan.tree_edges[e].v + offset);
      colors.emplace_back(id, Color((plan.target[e] - 1 + t) % k + 1));
    }
  }
  PartialColoring target(k);
  for (const auto& [e, c] : colors) target.assign(marked_forest, e, c);
  const NextFitOrder order = nextfit_order(marked_forest, target);

  plan.sequence.k = k;
  plan.sequence.construction = "nf-tree";
  plan.sequence.parameters = {{"k", k}, {"N", static_cast<double>(N)}, {"s", s}};
  plan.sequence.edges = order.sequence.edges;
  for (int t = 0; t < k; ++t) {
    const auto offset = static_cast<VertexId>(static_cast<std::size_t>(t) * plan.copy_vertices);
    for (std::size_t e = 0; e < plan.tree_edges.size(); ++e) {
      if (!plan.marked[e]) plan.sequence.edges.push_back({plan.tree_edges[e].u + offset, plan.tree_edges[e].v + offset});
    }
  }
  // Copy t is joined to copy t+1 through its first leaf; its second leaf
  // receives the edge from copy t-1.
  for (int t = 0; t + 1 < k; ++t) {
    const auto here = static_cast<VertexId>(static_cast<std::size_t>(t) * plan.copy_vertices);
    const auto there = static_cast<VertexId>(static_cast<std::size_t>(t + 1) * plan.copy_vertices);
    const Endpoints join{leaves[0] + here, leaves[1] + there};
    plan.joiners.push_back(join);
    plan.sequence.edges.push_back(join);
  }
  return plan;
}

RevealSequence nf_tree_worstcase(int k, std::size_t N) {
  const auto root = exact_sqrt(k);
  if (!root || *root < 2) {
    throw ParameterError("nf-tree needs k = n^2 for an integer n >= 2, got k = " + std::to_string(k));
  }
  return plan_bunches(k, N, *root).sequence;
}

RevealSequence nf_tree_rounded(int k, std::size_t N) {
  if (k < 4) throw ParameterError("nf-tree-rounded needs k >= 4, got k = " + std::to_string(k));
  auto seq = plan_bunches(k, N, ceil_sqrt(k)).sequence;
  seq.construction = "nf-tree-rounded";
  return seq;
}

}  // namespace palette::adversary
