#include "palette/nextfit_order.hpp"

#include <algorithm>
#include <string>

#include "palette/errors.hpp"

namespace palette::adversary {

NextFitOrder nextfit_order(const Graph& g, const PartialColoring& coloring) {
  if (!is_proper(g, coloring)) throw StructuralError("nextfit_order: coloring is not proper");
  const int k = coloring.k();
  std::vector<std::vector<EdgeId>> classes(static_cast<std::size_t>(k));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (auto c = coloring.color_of(e)) classes[static_cast<std::size_t>(c->value() - 1)].push_back(e);
  }
  std::size_t lo = classes[0].size(), hi = lo;
  for (const auto& cls : classes) {
    lo = std::min(lo, cls.size());
    hi = std::max(hi, cls.size());
  }
  if (hi > lo + 1) {
    throw ParameterError("nextfit_order: color usage counts range over " + std::to_string(lo) + ".." +
                         std::to_string(hi) + "; they must take at most two consecutive values");
  }

  NextFitOrder out;
  out.base_count = lo;
  out.renaming.assign(static_cast<std::size_t>(k), 0);
  std::vector<std::size_t> renamed;  // renamed[r] = input color index of new color r+1
  for (int heavy = 1; heavy >= 0; --heavy) {
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const bool is_heavy = classes[c].size() == lo + 1 && hi == lo + 1;
      if (is_heavy == (heavy == 1)) {
        out.renaming[c] = static_cast<int>(renamed.size()) + 1;
        renamed.push_back(c);
      }
    }
  }

  out.sequence.k = k;
  out.sequence.construction = "nf-order";
  for (std::size_t round = 0; round <= lo; ++round) {
    for (std::size_t c : renamed) {
      if (round < classes[c].size()) {
        const EdgeId e = classes[c][round];
        out.source_edges.push_back(e);
        out.sequence.edges.push_back(g.endpoints(e));
      }
    }
  }
  return out;
}

PartialColoring pull_back(const Graph& g, const NextFitOrder& order, const PartialColoring& replayed) {
  PartialColoring state(replayed.k());
  std::vector<int> target(g.num_edges(), 0);
  for (std::size_t i = 0; i < order.source_edges.size(); ++i) {
    const auto e = static_cast<EdgeId>(i);
    if (auto c = replayed.color_of(e)) {
      target[order.source_edges[i]] = c->value();
    } else if (replayed.is_rejected(e)) {
      target[order.source_edges[i]] = -1;
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (target[e] > 0) {
      state.assign(g, e, Color(target[e]));
    } else if (target[e] < 0) {
      state.reject(g, e);
    }
  }
  return state;
}

}  // namespace palette::adversary
