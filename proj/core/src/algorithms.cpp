#include "palette/algorithms.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "palette/errors.hpp"

namespace palette {

Decision first_fit_decide(const PartialColoring& state, const Graph& g, EdgeId e) {
  if (auto c = state.available(g, e).lowest()) return Decision::colored(*c);
  return Decision::rejected();
}

std::pair<Decision, std::optional<Color>> next_fit_decide(const PartialColoring& state,
                                                          std::optional<Color> c_last, const Graph& g,
                                                          EdgeId e) {
  const ColorSet free = state.available(g, e);
  const int k = state.k();
  // With no previous color the scan starts at 1, i.e. as if c_last were k.
  const int start = c_last ? c_last->value() : k;
  for (int step = 1; step <= k; ++step) {
    const Color c((start + step - 1) % k + 1);
    if (free.contains(c)) return {Decision::colored(c), c};
  }
  return {Decision::rejected(), c_last};
}

Decision rp_decide(const PartialColoring& state, const Graph& g, EdgeId e, double p, RngStream& rng) {
  if (state.k() != 2) throw ParameterError("RP_p is defined for k = 2 only");
  if (!(p >= 0.5 && p <= 1.0)) throw ParameterError("RP_p requires p in [1/2, 1]");
  const ColorSet free = state.available(g, e);
  switch (free.size()) {
    case 2:
      return Decision::colored(Color(rng.uniform() < p ? 1 : 2));
    case 1:
      return Decision::colored(*free.lowest());
    default:
      return Decision::rejected();
  }
}

void FirstFit::reset(int k, RngStream) { require_valid_k(k); }

Decision FirstFit::decide(const Graph& g, const PartialColoring& state, EdgeId e) {
  return first_fit_decide(state, g, e);
}

void NextFit::reset(int k, RngStream) {
  require_valid_k(k);
  last_.reset();
}

Decision NextFit::decide(const Graph& g, const PartialColoring& state, EdgeId e) {
  auto [decision, last] = next_fit_decide(state, last_, g, e);
  last_ = last;
  return decision;
}

RandomParity::RandomParity(double p) : p_(p) {
  if (!(p >= 0.5 && p <= 1.0)) {
    throw ParameterError("RP_p requires p in [1/2, 1], got " + std::to_string(p));
  }
}

std::string RandomParity::name() const {
  std::ostringstream out;
  out << "rp(" << p_ << ")";
  return out.str();
}

void RandomParity::reset(int k, RngStream rng) {
  if (k != 2) throw ParameterError("RP_p is defined for k = 2 only, got k = " + std::to_string(k));
  rng_ = rng;
}

Decision RandomParity::decide(const Graph& g, const PartialColoring& state, EdgeId e) {
  return rp_decide(state, g, e, p_, rng_);
}

namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::string, AlgorithmFactory> factories;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

void register_external_algorithm(const std::string& name, AlgorithmFactory factory) {
  if (name == "ff" || name == "nf" || name == "rp") {
    throw ParameterError("external algorithm name '" + name + "' shadows a built-in");
  }
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  r.factories[name] = std::move(factory);
}

bool has_external_algorithm(const std::string& name) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  return r.factories.contains(name);
}

AlgorithmId AlgorithmId::parse(std::string_view text, double p) {
  if (text == "ff") return first_fit();
  if (text == "nf") return next_fit();
  if (text == "rp") return random_parity(p);
  return external(std::string(text));
}

std::string AlgorithmId::to_string() const {
  switch (kind) {
    case Kind::FirstFit:
      return "ff";
    case Kind::NextFit:
      return "nf";
    case Kind::RandomParity: {
      std::ostringstream out;
      out << "rp(" << p << ")";
      return out.str();
    }
    case Kind::External:
      return name;
  }
  return "?";
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(const AlgorithmId& id) {
  switch (id.kind) {
    case AlgorithmId::Kind::FirstFit:
      return std::make_unique<FirstFit>();
    case AlgorithmId::Kind::NextFit:
      return std::make_unique<NextFit>();
    case AlgorithmId::Kind::RandomParity:
      return std::make_unique<RandomParity>(id.p);
    case AlgorithmId::Kind::External: {
      auto& r = registry();
      std::lock_guard lock(r.mutex);
      auto it = r.factories.find(id.name);
      if (it == r.factories.end()) throw ParameterError("unknown algorithm '" + id.name + "'");
      return it->second();
    }
  }
  throw ParameterError("unknown algorithm kind");
}

}  // namespace palette
