#include "palette/adversaries.hpp"

#include <algorithm>
#include <string>

#include "palette/errors.hpp"

namespace palette::adversary {

RevealSequence path_order(std::size_t m, const std::vector<std::size_t>& indices, int k) {
  RevealSequence seq;
  seq.k = k;
  seq.construction = "path";
  seq.parameters["m"] = static_cast<double>(m);
  seq.edges.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i < 1 || i > m) throw ParameterError("path index " + std::to_string(i) + " outside 1..m");
    seq.edges.push_back(path_edge(i));
  }
  return seq;
}

RevealSequence nf_path_killer(std::size_t m) {
  const std::size_t edges = 2 * m + 1;
  std::vector<std::size_t> order;
  order.reserve(edges);
  for (std::size_t i = 1; i <= edges; i += 2) order.push_back(i);
  for (std::size_t i = 2; i <= edges; i += 2) order.push_back(i);
  auto seq = path_order(edges, order);
  seq.construction = "nf-path-killer";
  seq.parameters = {{"m", static_cast<double>(m)}};
  return seq;
}

RevealSequence rp_strategy_mod3(std::size_t m) {
  if (m == 0 || (m - 1) % 3 != 0) {
    throw ParameterError("rp-mod3 needs m >= 1 with 3 | m-1, got m = " + std::to_string(m));
  }
  std::vector<std::size_t> order;
  order.reserve(m);
  for (std::size_t residue : {1u, 0u, 2u}) {
    for (std::size_t i = 1; i <= m; ++i) {
      if (i % 3 == residue) order.push_back(i);
    }
  }
  auto seq = path_order(m, order);
  seq.construction = "rp-mod3";
  return seq;
}

RevealSequence rp_strategy_oddeven(std::size_t m) {
  if (m % 2 == 0) throw ParameterError("rp-oddeven needs odd m, got m = " + std::to_string(m));
  std::vector<std::size_t> order;
  order.reserve(m);
  for (std::size_t i = 1; i <= m; i += 2) order.push_back(i);
  for (std::size_t i = 2; i <= m; i += 2) order.push_back(i);
  auto seq = path_order(m, order);
  seq.construction = "rp-oddeven";
  return seq;
}

namespace {

// Emits a precomputed list, then asks `plan` for a continuation once.
class PhasedScript : public AdversaryScript {
 public:
  std::optional<Endpoints> next(const Trace& so_far) override {
    while (cursor_ >= pending_.size()) {
      if (!advance(so_far)) return std::nullopt;
    }
    return pending_[cursor_++];
  }

 protected:
  // Appends the next batch of edges to pending_; false when done.
  virtual bool advance(const Trace& so_far) = 0;

  std::vector<Endpoints> pending_;
  std::size_t cursor_ = 0;
};

class DetPathKiller final : public PhasedScript {
 public:
  explicit DetPathKiller(std::size_t n) : n_(n) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto a = static_cast<VertexId>(3 * j);
      pending_.push_back({a, a + 1});
      pending_.push_back({a + 1, a + 2});
    }
  }

  std::string name() const override { return "det-path-killer"; }
  std::size_t reveal_bound() const override { return 3 * n_ - 1; }

 private:
  bool advance(const Trace& so_far) override {
    if (connected_) return false;
    connected_ = true;
    // Free ends of each initial path j: vertex 3j (first edge) and 3j+2
    // (second edge).
    std::vector<std::size_t> full, partial;
    for (std::size_t j = 0; j < n_; ++j) {
      const bool both = so_far.coloring.is_colored(static_cast<EdgeId>(2 * j)) &&
                        so_far.coloring.is_colored(static_cast<EdgeId>(2 * j + 1));
      (both ? full : partial).push_back(j);
    }
    // In a fully colored path the two edges carry colors 1 and 2. Chain the
    // color-1 end of f_i to the color-2 end of f_{i+1}, so every connector
    // sees both colors.
    const auto end_with_color = [&](std::size_t j, int color) {
      const auto first = static_cast<EdgeId>(2 * j);
      const bool first_has = so_far.coloring.color_of(first)->value() == color;
      return static_cast<VertexId>(first_has ? 3 * j : 3 * j + 2);
    };
    for (std::size_t i = 0; i + 1 < full.size(); ++i) {
      pending_.push_back({end_with_color(full[i], 1), end_with_color(full[i + 1], 2)});
    }
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) {
      pending_.push_back({static_cast<VertexId>(3 * partial[i] + 2), static_cast<VertexId>(3 * partial[i + 1])});
    }
    if (!full.empty() && !partial.empty()) {
      pending_.push_back({end_with_color(full.back(), 1), static_cast<VertexId>(3 * partial.front())});
    }
    return cursor_ < pending_.size();
  }

  std::size_t n_;
  bool connected_ = false;
};

class StarChain final : public PhasedScript {
 public:
  StarChain(int k, std::size_t N, std::optional<std::uint64_t> tie_seed)
      : k_(k), stars_(N), rng_(tie_seed.value_or(0)), randomize_(tie_seed.has_value()) {}

  std::string name() const override { return "star-chain"; }
  std::size_t reveal_bound() const override { return stars_ * static_cast<std::size_t>(k_ + 1); }

 private:
  bool advance(const Trace& so_far) override {
    if (built_ == stars_) return false;
    VertexId center = 0;
    if (built_ > 0) {
      // Leaves of the previous star and whether their edge got a color.
      std::vector<VertexId> colored_leaves, all_leaves;
      for (EdgeId e = last_star_first_; e < last_star_first_ + static_cast<EdgeId>(k_ + 1); ++e) {
        const VertexId leaf = so_far.graph.other_end(e, last_center_);
        all_leaves.push_back(leaf);
        if (so_far.coloring.is_colored(e)) colored_leaves.push_back(leaf);
      }
      const auto& pool = colored_leaves.empty() ? all_leaves : colored_leaves;
      center = randomize_ ? pool[rng_.below(pool.size())] : *std::min_element(pool.begin(), pool.end());
    }
    last_center_ = center;
    last_star_first_ = static_cast<EdgeId>(so_far.graph.num_edges());
    auto next_vertex = static_cast<VertexId>(std::max<std::size_t>(so_far.graph.num_vertices(), 1));
    for (int i = 0; i <= k_; ++i) pending_.push_back({center, next_vertex++});
    ++built_;
    return true;
  }

  int k_;
  std::size_t stars_;
  std::size_t built_ = 0;
  VertexId last_center_ = 0;
  EdgeId last_star_first_ = 0;
  RngStream rng_;
  bool randomize_;
};

class PathThenStars final : public PhasedScript {
 public:
  PathThenStars(int k, std::size_t m, std::unique_ptr<OnlineAlgorithm> alg, std::size_t trials, std::uint64_t seed)
      : k_(k), m_(m), alg_(std::move(alg)), trials_(trials), seed_(seed) {
    for (std::size_t i = 1; i <= m; ++i) pending_.push_back(path_edge(i));
  }

  std::string name() const override { return "path-then-stars"; }
  std::size_t reveal_bound() const override { return m_ + static_cast<std::size_t>(k_) * (m_ + 1); }

  std::optional<double> path_estimate() const { return estimate_; }

 private:
  bool advance(const Trace& so_far) override {
    if (estimate_) return false;
    if (alg_->is_deterministic()) {
      estimate_ = static_cast<double>(so_far.colored_count());
    } else {
      const std::vector<Endpoints> path(pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(m_));
      double total = 0.0;
      for (std::size_t t = 0; t < trials_; ++t) {
        auto replica = alg_->clone();
        total += static_cast<double>(run(*replica, path, k_, RngStream::derive(seed_, t)()).colored_count());
      }
      estimate_ = total / static_cast<double>(trials_);
    }
    const double threshold = static_cast<double>(k_) * static_cast<double>(m_) / (k_ + 1.0);
    if (*estimate_ <= threshold) return false;
    auto leaf = static_cast<VertexId>(m_ + 1);
    for (std::size_t i = 0; i <= m_; ++i) {
      for (int j = 0; j < k_; ++j) pending_.push_back({static_cast<VertexId>(i), leaf++});
    }
    return true;
  }

  int k_;
  std::size_t m_;
  std::unique_ptr<OnlineAlgorithm> alg_;
  std::size_t trials_;
  std::uint64_t seed_;
  std::optional<double> estimate_;
};

}  // namespace

std::unique_ptr<AdversaryScript> det_path_killer(std::size_t n, const OnlineAlgorithm& alg) {
  if (n == 0) throw ParameterError("det-path-killer needs n >= 1");
  if (!alg.is_deterministic()) {
    throw PreconditionError("det-path-killer classifies paths by the algorithm's decisions and needs a "
                            "deterministic algorithm; " + alg.name() + " is randomized");
  }
  return std::make_unique<DetPathKiller>(n);
}

std::unique_ptr<AdversaryScript> star_chain(int k, std::size_t N, const OnlineAlgorithm& alg,
                                            std::optional<std::uint64_t> tie_seed) {
  if (k < 2) throw ParameterError("star-chain needs k >= 2");
  if (N == 0) throw ParameterError("star-chain needs N >= 1");
  if (!alg.is_deterministic() && !alg.is_fair()) {
    throw PreconditionError("star-chain needs a deterministic or fair algorithm; " + alg.name() + " is neither");
  }
  return std::make_unique<StarChain>(k, N, tie_seed);
}

std::unique_ptr<AdversaryScript> path_then_stars(int k, std::size_t m, const OnlineAlgorithm& alg,
                                                 std::size_t trials, std::uint64_t seed) {
  if (k < 2) throw ParameterError("path-then-stars needs k >= 2");
  if (m == 0) throw ParameterError("path-then-stars needs m >= 1");
  if (trials == 0) throw ParameterError("path-then-stars needs trials >= 1");
  return std::make_unique<PathThenStars>(k, m, alg.clone(), trials, seed);
}

bool equivalent(const PartialColoring& a, const PartialColoring& b) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<int> forward(kMaxColors + 1, 0), backward(kMaxColors + 1, 0);
  for (EdgeId e = 0; e < n; ++e) {
    if (a.status(e) != b.status(e)) return false;
    const auto ca = a.color_of(e);
    if (!ca) continue;
    const int x = ca->value();
    const int y = b.color_of(e)->value();
    if (forward[x] == 0 && backward[y] == 0) {
      forward[x] = y;
      backward[y] = x;
    } else if (forward[x] != y || backward[y] != x) {
      return false;
    }
  }
  return true;
}

}  // namespace palette::adversary
