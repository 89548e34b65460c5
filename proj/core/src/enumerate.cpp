#include "palette/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "palette/errors.hpp"

namespace palette::enumerate {

void for_each_path_order(std::size_t m, const OrderVisitor& visit) {
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  std::vector<Endpoints> order(m);
  do {
    for (std::size_t i = 0; i < m; ++i) {
      order[i] = {static_cast<VertexId>(perm[i] - 1), static_cast<VertexId>(perm[i])};
    }
    visit(order);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

namespace {

struct TreeBuilder {
  std::size_t total;
  const OrderVisitor& visit;
  std::vector<Endpoints> edges;
  std::vector<std::size_t> component;  // per vertex

  std::size_t components() const {
    std::vector<std::size_t> ids(component);
    std::sort(ids.begin(), ids.end());
    return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
  }

  void extend() {
    const std::size_t left = total - edges.size();
    const std::size_t parts = components();
    if (left == 0) {
      if (parts == 1) visit(edges);
      return;
    }
    // Each remaining edge merges at most two components.
    if (parts > left + 1) return;
    const auto n = static_cast<VertexId>(component.size());

    if (parts + 1 <= left) {
      edges.push_back({n, n + 1});
      component.push_back(n);
      component.push_back(n);
      extend();
      component.resize(n);
      edges.pop_back();
    }
    for (VertexId v = 0; v < n; ++v) {
      edges.push_back({v, n});
      component.push_back(component[v]);
      extend();
      component.pop_back();
      edges.pop_back();
    }
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        if (component[a] == component[b]) continue;
        const auto saved = component;
        const std::size_t from = component[b];
        for (auto& c : component) {
          if (c == from) c = component[a];
        }
        edges.push_back({a, b});
        extend();
        edges.pop_back();
        component = saved;
      }
    }
  }
};

void fair_branch(std::span<const Endpoints> order, std::size_t i, Trace& trace,
                 const std::function<void(const Trace&)>& visit) {
  if (i == order.size()) {
    visit(trace);
    return;
  }
  const EdgeId e = trace.graph.add_edge(order[i].u, order[i].v);
  const ColorSet free = trace.coloring.available(trace.graph, e);
  const auto descend = [&](Decision d) {
    Trace next = trace;
    if (d.is_colored()) {
      next.coloring.assign(next.graph, e, d.color());
    } else {
      next.coloring.reject(next.graph, e);
    }
    next.steps.push_back({e, order[i], d});
    fair_branch(order, i + 1, next, visit);
  };
  if (free.empty()) {
    descend(Decision::rejected());
  } else {
    for (Color c : free.to_vector()) descend(Decision::colored(c));
  }
}

// Roots every component of the chosen forest and gives each vertex's child
// edges the lowest colors other than its parent edge's color.
std::vector<std::optional<Color>> color_forest(const Graph& g, const std::vector<bool>& chosen) {
  std::vector<std::optional<Color>> colors(g.num_edges());
  std::vector<bool> seen(g.num_vertices(), false);
  std::vector<int> parent_color(g.num_vertices(), 0);
  for (VertexId r = 0; r < g.num_vertices(); ++r) {
    if (seen[r]) continue;
    seen[r] = true;
    std::vector<VertexId> stack{r};
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      int next = 1;
      for (EdgeId e : g.incident(v)) {
        const VertexId w = g.other_end(e, v);
        if (seen[w] || !chosen[e]) continue;
        if (next == parent_color[v]) ++next;
        colors[e] = Color(next);
        parent_color[w] = next;
        ++next;
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return colors;
}

}  // namespace

void for_each_tree_order(std::size_t edges, const OrderVisitor& visit) {
  if (edges == 0) {
    visit({});
    return;
  }
  TreeBuilder builder{edges, visit, {}, {}};
  builder.extend();
}

void for_each_fair_trace(std::span<const Endpoints> order, int k, const std::function<void(const Trace&)>& visit) {
  require_valid_k(k);
  Trace trace(k);
  trace.algorithm = "fair";
  fair_branch(order, 0, trace, visit);
}

std::vector<OptWitness> optimal_witnesses(const Graph& g, int k) {
  require_valid_k(k);
  const std::size_t m = g.num_edges();
  if (m > kWitnessEdgeLimit) {
    throw ParameterError("witness enumeration is limited to " + std::to_string(kWitnessEdgeLimit) + " edges");
  }
  if (!is_acyclic(g)) throw StructuralError("witness enumeration needs a forest");
  const std::size_t best = opt_tree(g, k).opt_count;
  std::vector<OptWitness> out;
  std::vector<int> load(g.num_vertices(), 0);
  std::vector<bool> chosen(m, false);
  std::size_t count = 0;
  // Plain include/exclude search, pruned when the optimum is out of reach.
  const std::function<void(EdgeId)> search = [&](EdgeId e) {
    if (count + (m - e) < best) return;
    if (e == m) {
      OptWitness w;
      w.k = k;
      w.opt_count = best;
      w.assignment = color_forest(g, chosen);
      out.push_back(std::move(w));
      return;
    }
    const auto ends = g.endpoints(e);
    if (load[ends.u] < k && load[ends.v] < k) {
      ++load[ends.u];
      ++load[ends.v];
      chosen[e] = true;
      ++count;
      search(e + 1);
      --count;
      chosen[e] = false;
      --load[ends.u];
      --load[ends.v];
    }
    search(e + 1);
  };
  search(0);
  return out;
}

}  // namespace palette::enumerate
