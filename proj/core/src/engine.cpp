#include "palette/engine.hpp"

#include <string>

#include "palette/errors.hpp"

namespace palette {

Game::Game(OnlineAlgorithm& alg, int k, std::uint64_t seed) : alg_(alg), trace_(k) {
  require_valid_k(k);
  trace_.seed = seed;
  trace_.algorithm = alg.name();
  alg_.reset(k, RngStream(seed));
}

const TraceStep& Game::reveal(Endpoints edge) {
  const EdgeId e = trace_.graph.add_edge(edge.u, edge.v);
  const Decision d = alg_.decide(trace_.graph, trace_.coloring, e);
  if (d.is_colored()) {
    trace_.coloring.assign(trace_.graph, e, d.color());
  } else {
    trace_.coloring.reject(trace_.graph, e);
  }
  trace_.steps.push_back({e, edge, d});
  return trace_.steps.back();
}

Trace run(OnlineAlgorithm& alg, std::span<const Endpoints> sequence, int k, std::uint64_t seed) {
  Game game(alg, k, seed);
  for (const auto& edge : sequence) game.reveal(edge);
  return game.release();
}

Trace run(OnlineAlgorithm& alg, const RevealSequence& sequence, std::uint64_t seed) {
  return run(alg, sequence.edges, sequence.k, seed);
}

Trace run(OnlineAlgorithm& alg, AdversaryScript& script, int k, std::uint64_t seed) {
  Game game(alg, k, seed);
  const std::size_t bound = script.reveal_bound();
  while (auto edge = script.next(game.trace())) {
    if (game.trace().size() >= bound) {
      throw StructuralError("adversary " + script.name() + " exceeded its reveal bound of " +
                            std::to_string(bound));
    }
    game.reveal(*edge);
  }
  return game.release();
}

PartialColoring replay(const Trace& trace) {
  Graph g;
  PartialColoring state(trace.k);
  for (const auto& step : trace.steps) {
    const EdgeId e = g.add_edge(step.ends.u, step.ends.v);
    if (step.decision.is_colored()) {
      state.assign(g, e, step.decision.color());
    } else {
      state.reject(g, e);
    }
  }
  return state;
}

bool audit_fair(const Trace& trace) {
  Graph g;
  PartialColoring state(trace.k);
  for (const auto& step : trace.steps) {
    const EdgeId e = g.add_edge(step.ends.u, step.ends.v);
    if (step.decision.is_colored()) {
      state.assign(g, e, step.decision.color());
      continue;
    }
    if (!state.available(g, e).empty()) return false;
    state.reject(g, e);
  }
  return true;
}

}  // namespace palette
