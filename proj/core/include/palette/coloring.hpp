#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "palette/color.hpp"
#include "palette/graph.hpp"

namespace palette {

enum class EdgeStatus : std::uint8_t { Pending, Colored, Rejected };

// Per-edge decisions plus the per-vertex color sets they induce. Rejected
// edges never contribute to a vertex's color set.
class PartialColoring {
 public:
  explicit PartialColoring(int k = 1);

  int k() const { return k_; }
  std::size_t size() const { return assignment_.size(); }

  EdgeStatus status(EdgeId e) const;
  std::optional<Color> color_of(EdgeId e) const;
  bool is_colored(EdgeId e) const { return status(e) == EdgeStatus::Colored; }
  bool is_rejected(EdgeId e) const { return status(e) == EdgeStatus::Rejected; }

  // Colors on colored edges incident to v; empty for unknown vertices.
  ColorSet colors_at(VertexId v) const;
  // Colors missing at both endpoints of e.
  ColorSet available(const Graph& g, EdgeId e) const;

  // Throws StructuralError if e already has a decision, c is outside 1..k, or
  // c is used at either endpoint.
  void assign(const Graph& g, EdgeId e, Color c);
  void reject(const Graph& g, EdgeId e);

  std::size_t colored_count() const { return colored_; }
  std::size_t rejected_count() const { return rejected_; }

  // Usage count per color, index c-1.
  std::vector<std::size_t> color_counts() const;

 private:
  void grow(const Graph& g, EdgeId e);

  int k_;
  std::vector<int> assignment_;  // 0 pending, -1 rejected, c > 0 colored
  std::vector<ColorSet> at_vertex_;
  std::size_t colored_ = 0;
  std::size_t rejected_ = 0;
};

inline ColorSet colors_at(const PartialColoring& state, const Graph&, VertexId v) {
  return state.colors_at(v);
}

// Recomputes the color set at v from the edge assignments alone.
ColorSet recompute_colors_at(const Graph& g, const PartialColoring& state, VertexId v);

// No two adjacent colored edges share a color.
bool is_proper(const Graph& g, const PartialColoring& state);

// The cached per-vertex color sets agree with a from-scratch recomputation.
bool cache_coherent(const Graph& g, const PartialColoring& state);

}  // namespace palette
