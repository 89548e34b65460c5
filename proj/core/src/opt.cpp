#include "palette/opt.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "palette/errors.hpp"

namespace palette {

std::vector<EdgeId> OptWitness::chosen_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < assignment.size(); ++e) {
    if (assignment[e]) out.push_back(e);
  }
  return out;
}

PartialColoring OptWitness::as_coloring(const Graph& g) const {
  PartialColoring state(k);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (contains(e)) {
      state.assign(g, e, *assignment[e]);
    } else {
      state.reject(g, e);
    }
  }
  return state;
}

std::size_t opt_path(std::size_t m, int k) {
  if (k < 1) throw ParameterError("opt_path needs k >= 1");
  return k >= 2 ? m : (m + 1) / 2;
}

namespace {

struct Rooted {
  std::vector<VertexId> order;  // preorder over all components
  std::vector<std::optional<EdgeId>> parent_edge;
};

Rooted root_forest(const Graph& g) {
  Rooted r;
  r.parent_edge.assign(g.num_vertices(), std::nullopt);
  std::vector<bool> seen(g.num_vertices(), false);
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < g.num_vertices(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      r.order.push_back(v);
      for (EdgeId e : g.incident(v)) {
        const VertexId w = g.other_end(e, v);
        if (r.parent_edge[v] == e) continue;
        if (seen[w]) throw StructuralError("opt_tree: graph has a cycle");
        seen[w] = true;
        r.parent_edge[w] = e;
        stack.push_back(w);
      }
    }
  }
  return r;
}

}  // namespace

OptWitness opt_tree(const Graph& g, int k) {
  require_valid_k(k);
  if (!is_acyclic(g)) throw StructuralError("opt_tree: graph has a cycle");
  const Rooted rooted = root_forest(g);
  const std::size_t n = g.num_vertices();

  // free_best[v]: max kept edges in v's subtree if v's parent edge is dropped
  // (v may keep k child edges); tied_best[v]: same with the parent edge kept
  // (v may keep k-1 child edges).
  std::vector<std::size_t> free_best(n, 0), tied_best(n, 0);
  // Child edges kept in each scenario, for reconstruction.
  std::vector<std::vector<EdgeId>> free_keep(n), tied_keep(n);

  for (auto it = rooted.order.rbegin(); it != rooted.order.rend(); ++it) {
    const VertexId v = *it;
    std::size_t base = 0;
    std::vector<std::pair<std::size_t, EdgeId>> gains;  // (gain, child edge)
    for (EdgeId e : g.incident(v)) {
      if (rooted.parent_edge[v] == e) continue;
      const VertexId c = g.other_end(e, v);
      base += free_best[c];
      const std::size_t with_edge = tied_best[c] + 1;
      if (with_edge > free_best[c]) gains.emplace_back(with_edge - free_best[c], e);
    }
    std::stable_sort(gains.begin(), gains.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    const auto pick = [&](std::size_t cap, std::size_t& best, std::vector<EdgeId>& keep) {
      best = base;
      for (std::size_t i = 0; i < gains.size() && i < cap; ++i) {
        best += gains[i].first;
        keep.push_back(gains[i].second);
      }
    };
    pick(static_cast<std::size_t>(k), free_best[v], free_keep[v]);
    pick(static_cast<std::size_t>(k - 1), tied_best[v], tied_keep[v]);
  }

  OptWitness w;
  w.k = k;
  w.assignment.assign(g.num_edges(), std::nullopt);
  std::vector<bool> parent_kept(n, false);
  for (VertexId v : rooted.order) {  // preorder: parents before children
    const auto pe = rooted.parent_edge[v];
    const std::optional<Color> parent_color = pe ? w.assignment[*pe] : std::nullopt;
    const auto& keep = (pe && parent_kept[v]) ? tied_keep[v] : free_keep[v];
    int next = 1;
    for (EdgeId e : keep) {
      if (parent_color && next == parent_color->value()) ++next;
      w.assignment[e] = Color(next++);
      parent_kept[g.other_end(e, v)] = true;
    }
  }
  for (VertexId v : rooted.order) {
    if (!rooted.parent_edge[v]) w.opt_count += free_best[v];
  }
  return w;
}

OptWitness opt_bruteforce(const Graph& g, int k) {
  require_valid_k(k);
  const std::size_t m = g.num_edges();
  if (m > kBruteForceEdgeLimit) {
    throw ParameterError("opt_bruteforce is limited to " + std::to_string(kBruteForceEdgeLimit) +
                         " edges, got " + std::to_string(m));
  }
  std::vector<int> current(m, 0), best(m, 0);
  std::size_t best_count = 0;
  std::vector<ColorSet> at(g.num_vertices());

  // Decide edges in id order. Colors are introduced in increasing order only
  // (a new color is at most one above the largest used so far), which removes
  // color-permutation symmetry without losing any optimum.
  std::function<void(std::size_t, std::size_t, int)> search = [&](std::size_t i, std::size_t count, int used) {
    if (count + (m - i) <= best_count) return;
    if (i == m) {
      best_count = count;
      best = current;
      return;
    }
    const auto ends = g.endpoints(static_cast<EdgeId>(i));
    const ColorSet blocked = at[ends.u] | at[ends.v];
    const int limit = std::min(k, used + 1);
    for (int c = 1; c <= limit; ++c) {
      const Color color(c);
      if (blocked.contains(color)) continue;
      at[ends.u].insert(color);
      at[ends.v].insert(color);
      current[i] = c;
      search(i + 1, count + 1, std::max(used, c));
      at[ends.u].erase(color);
      at[ends.v].erase(color);
      current[i] = 0;
    }
    search(i + 1, count, used);
  };
  search(0, 0, 0);

  OptWitness w;
  w.k = k;
  w.opt_count = best_count;
  w.assignment.assign(m, std::nullopt);
  for (std::size_t i = 0; i < m; ++i) {
    if (best[i] > 0) w.assignment[i] = Color(best[i]);
  }
  return w;
}

OptWitness opt_exact(const Graph& g, int k) {
  if (is_acyclic(g)) return opt_tree(g, k);
  return opt_bruteforce(g, k);
}

bool audit_witness(const Graph& g, const OptWitness& witness) {
  if (witness.assignment.size() != g.num_edges()) return false;
  std::size_t count = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    ColorSet seen;
    int chosen = 0;
    for (EdgeId e : g.incident(v)) {
      const auto c = witness.assignment[e];
      if (!c) continue;
      if (c->value() < 1 || c->value() > witness.k || seen.contains(*c)) return false;
      seen.insert(*c);
      ++chosen;
    }
    if (chosen > witness.k) return false;
  }
  for (const auto& c : witness.assignment) count += c ? 1 : 0;
  return count == witness.opt_count;
}

}  // namespace palette
