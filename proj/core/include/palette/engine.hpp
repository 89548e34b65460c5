#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "palette/coloring.hpp"
#include "palette/graph.hpp"
#include "palette/rng.hpp"

namespace palette {

class Decision {
 public:
  static Decision colored(Color c) { return Decision(c); }
  static Decision rejected() { return Decision(std::nullopt); }

  bool is_colored() const { return color_.has_value(); }
  bool is_rejected() const { return !color_.has_value(); }
  // Precondition: is_colored().
  Color color() const { return *color_; }

  friend bool operator==(const Decision&, const Decision&) = default;

 private:
  explicit Decision(std::optional<Color> c) : color_(c) {}

  std::optional<Color> color_;
};

struct TraceStep {
  EdgeId edge = 0;
  Endpoints ends;
  Decision decision = Decision::rejected();
};

// Complete record of one online run. The graph and coloring are the state at
// the end of the run; steps replay to exactly that state.
struct Trace {
  explicit Trace(int colors = 1) : k(colors), coloring(colors) {}

  int k;
  std::uint64_t seed = 0;
  std::string algorithm;
  Graph graph;
  PartialColoring coloring;
  std::vector<TraceStep> steps;

  std::size_t colored_count() const { return coloring.colored_count(); }
  std::size_t size() const { return steps.size(); }
};

// A fixed reveal order.
struct RevealSequence {
  std::vector<Endpoints> edges;
  int k = 2;
  std::string construction;
  std::map<std::string, double> parameters;
};

// Adaptive input: sees the run so far and either yields the next edge or
// halts. Implementations must halt within reveal_bound() reveals.
class AdversaryScript {
 public:
  virtual ~AdversaryScript() = default;

  virtual std::string name() const = 0;
  virtual std::size_t reveal_bound() const = 0;
  virtual std::optional<Endpoints> next(const Trace& so_far) = 0;
};

class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  virtual std::string name() const = 0;
  virtual bool is_deterministic() const = 0;
  // True if the algorithm only rejects an edge when all k colors already
  // appear on adjacent edges.
  virtual bool is_fair() const = 0;

  // Called before the first reveal of every run.
  virtual void reset(int k, RngStream rng) = 0;
  // Decide on the just-revealed edge e; state holds all earlier decisions.
  virtual Decision decide(const Graph& g, const PartialColoring& state, EdgeId e) = 0;

  virtual std::unique_ptr<OnlineAlgorithm> clone() const = 0;
};

// Drives one online run edge by edge. Rejects algorithm decisions that break
// properness with StructuralError.
class Game {
 public:
  Game(OnlineAlgorithm& alg, int k, std::uint64_t seed);

  const TraceStep& reveal(Endpoints edge);
  const Trace& trace() const { return trace_; }
  Trace release() { return std::move(trace_); }

 private:
  OnlineAlgorithm& alg_;
  Trace trace_;
};

Trace run(OnlineAlgorithm& alg, std::span<const Endpoints> sequence, int k, std::uint64_t seed = 1);
Trace run(OnlineAlgorithm& alg, const RevealSequence& sequence, std::uint64_t seed = 1);
Trace run(OnlineAlgorithm& alg, AdversaryScript& script, int k, std::uint64_t seed = 1);

// Rebuilds the coloring by applying the recorded decisions in order.
PartialColoring replay(const Trace& trace);

// True iff every rejection happened while all k colors were present at the
// edge's endpoints.
bool audit_fair(const Trace& trace);

// Trace CSV: header "step,u,v,decision,color", step is 1-based, decision is C
// or R, color is empty on R.
void write_trace_csv(std::ostream& out, const Trace& trace);
// Throws StructuralError on malformed rows or decisions that break properness.
Trace read_trace_csv(std::istream& in, int k);

}  // namespace palette
