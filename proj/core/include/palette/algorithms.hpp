#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "palette/engine.hpp"

namespace palette {

// Lowest color available at both endpoints, else reject.
Decision first_fit_decide(const PartialColoring& state, const Graph& g, EdgeId e);

// Scans c_last+1, ..., k, 1, ..., c_last and takes the first color available
// at both endpoints. Before the first coloring (no c_last) the scan starts at
// color 1. c_last is only updated when an edge is colored.
std::pair<Decision, std::optional<Color>> next_fit_decide(const PartialColoring& state,
                                                          std::optional<Color> c_last, const Graph& g,
                                                          EdgeId e);

// k = 2 only. No colored edge adjacent to e: color 1 with probability p, else
// color 2. Exactly one color free: that color. None free: reject. The rng is
// consumed only in the first case.
Decision rp_decide(const PartialColoring& state, const Graph& g, EdgeId e, double p, RngStream& rng);

class FirstFit final : public OnlineAlgorithm {
 public:
  std::string name() const override { return "ff"; }
  bool is_deterministic() const override { return true; }
  bool is_fair() const override { return true; }
  void reset(int k, RngStream) override;
  Decision decide(const Graph& g, const PartialColoring& state, EdgeId e) override;
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<FirstFit>(*this); }
};

class NextFit final : public OnlineAlgorithm {
 public:
  std::string name() const override { return "nf"; }
  bool is_deterministic() const override { return true; }
  bool is_fair() const override { return true; }
  void reset(int k, RngStream) override;
  Decision decide(const Graph& g, const PartialColoring& state, EdgeId e) override;
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<NextFit>(*this); }

  std::optional<Color> last_color() const { return last_; }

 private:
  std::optional<Color> last_;
};

// RP_p for two colors. Throws ParameterError for p outside [1/2, 1] and from
// reset() for k != 2.
class RandomParity final : public OnlineAlgorithm {
 public:
  explicit RandomParity(double p);

  std::string name() const override;
  bool is_deterministic() const override { return p_ == 1.0; }
  bool is_fair() const override { return true; }
  void reset(int k, RngStream rng) override;
  Decision decide(const Graph& g, const PartialColoring& state, EdgeId e) override;
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<RandomParity>(*this); }

  double p() const { return p_; }

 private:
  double p_;
  RngStream rng_;
};

struct AlgorithmId {
  enum class Kind { FirstFit, NextFit, RandomParity, External };

  Kind kind = Kind::FirstFit;
  double p = 1.0;     // RandomParity only
  std::string name;   // External only

  static AlgorithmId first_fit() { return {Kind::FirstFit, 1.0, {}}; }
  static AlgorithmId next_fit() { return {Kind::NextFit, 1.0, {}}; }
  static AlgorithmId random_parity(double p) { return {Kind::RandomParity, p, {}}; }
  static AlgorithmId external(std::string name) { return {Kind::External, 1.0, std::move(name)}; }

  // "ff", "nf", "rp" (with the given p) or a registered external name.
  static AlgorithmId parse(std::string_view text, double p = 1.0);
  std::string to_string() const;
};

using AlgorithmFactory = std::function<std::unique_ptr<OnlineAlgorithm>()>;

// Makes a user-supplied strategy available to make_algorithm() under `name`.
void register_external_algorithm(const std::string& name, AlgorithmFactory factory);
bool has_external_algorithm(const std::string& name);

// Throws ParameterError for an unknown external name or a bad p.
std::unique_ptr<OnlineAlgorithm> make_algorithm(const AlgorithmId& id);

}  // namespace palette
