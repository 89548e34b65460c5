#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "palette/engine.hpp"
#include "palette/errors.hpp"
#include "palette/graph.hpp"
#include "palette/opt.hpp"

namespace palette::charging {

// Overflow throws std::overflow_error instead of wrapping.
using Integer = boost::multiprecision::checked_int128_t;
using Rational = boost::rational<Integer>;

std::string to_string(const Rational& r);
double to_double(const Rational& r);

// A transfer that would take more than the source holds.
class LedgerOverdraft : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class EdgeClass : std::uint8_t {
  Double,   // colored by the algorithm and in OPT
  Single,   // colored by the algorithm only
  OptOnly,  // in OPT, rejected by the algorithm
  Neither,
};

std::string_view to_string(EdgeClass c);

struct VertexTally {
  int colored = 0;   // d_c
  int doubled = 0;   // d_d
  int single = 0;    // d_s
  int opt_only = 0;  // d_r
};

struct EdgeClassification {
  std::vector<EdgeClass> edge;
  std::vector<VertexTally> vertex;
};

// Throws PreconditionError if the witness or coloring does not cover g.
EdgeClassification classify_edges(const Graph& g, const PartialColoring& alg, const OptWitness& witness);

// A forest rooted at `root` for its component and at the lowest vertex of
// every other component.
struct RootedView {
  std::vector<std::optional<EdgeId>> parent_edge;  // per vertex
  std::vector<std::vector<EdgeId>> child_edges;    // per vertex
  std::vector<VertexId> upper;                     // per edge: endpoint nearer the root
  std::vector<int> highest_free;                   // per vertex: largest color absent at v, 0 if none

  VertexId lower(const Graph& g, EdgeId e) const { return g.other_end(e, upper[e]); }

  // Throws StructuralError if g has a cycle and PreconditionError for an
  // unknown root.
  static RootedView build(const Graph& g, const PartialColoring& state, VertexId root = 0);
};

template <class Value>
Value ledger_tolerance() {
  if constexpr (std::is_floating_point_v<Value>) {
    return Value(1e-12);
  } else {
    return Value(0);
  }
}

enum class Node : std::uint8_t { Edge, Vertex };

template <class Value>
struct Transfer {
  Node from_kind;
  std::uint32_t from;
  Node to_kind;
  std::uint32_t to;
  Value amount;
  std::string_view rule;
};

// Initial values, surplus and every transfer for one run at target ratio C.
// Edges may only give what they hold above C (OPT edges) or above 0 (other
// edges); vertices may only pass on what they received.
template <class Value>
class ChargeLedger {
 public:
  ChargeLedger(Value target, std::vector<Value> initial, std::vector<bool> in_opt, std::size_t vertices)
      : target_(target),
        initial_(std::move(initial)),
        value_(initial_),
        in_opt_(std::move(in_opt)),
        held_(vertices, Value(0)) {
    if (initial_.size() != in_opt_.size()) throw PreconditionError("ledger: value and OPT vectors differ in size");
  }

  const Value& target() const { return target_; }
  std::size_t edge_count() const { return initial_.size(); }
  std::size_t vertex_count() const { return held_.size(); }
  bool in_opt(EdgeId e) const { return in_opt_.at(e); }

  const Value& initial(EdgeId e) const { return initial_.at(e); }
  const Value& value(EdgeId e) const { return value_.at(e); }
  const Value& held(VertexId v) const { return held_.at(v); }

  // v_+(e): initial value minus C for OPT edges, initial value otherwise.
  Value surplus(EdgeId e) const { return in_opt(e) ? initial(e) - target_ : initial(e); }
  bool in_positive(EdgeId e) const { return surplus(e) > Value(0); }
  bool in_negative(EdgeId e) const { return surplus(e) < Value(0); }

  // What e can still give away.
  Value spare(EdgeId e) const {
    const Value s = in_opt(e) ? value(e) - target_ : value(e);
    return s > Value(0) ? s : Value(0);
  }

  Value margin(EdgeId e) const { return value(e) - target_; }

  void edge_to_vertex(EdgeId e, VertexId v, const Value& amount, std::string_view rule) {
    take_from_edge(e, amount, rule);
    held_.at(v) += amount;
    log_.push_back({Node::Edge, e, Node::Vertex, v, amount, rule});
  }

  void vertex_to_edge(VertexId v, EdgeId e, const Value& amount, std::string_view rule) {
    check_amount(amount, rule);
    if (amount > held_.at(v) + ledger_tolerance<Value>()) {
      throw LedgerOverdraft(std::string(rule) + ": vertex " + std::to_string(v) + " gives more than it holds");
    }
    held_[v] -= amount;
    value_.at(e) += amount;
    log_.push_back({Node::Vertex, v, Node::Edge, e, amount, rule});
  }

  void edge_to_edge(EdgeId from, EdgeId to, const Value& amount, std::string_view rule) {
    take_from_edge(from, amount, rule);
    value_.at(to) += amount;
    log_.push_back({Node::Edge, from, Node::Edge, to, amount, rule});
  }

  const std::vector<Transfer<Value>>& transfers() const { return log_; }

  Value total_initial() const { return sum(initial_); }
  Value total_final() const { return sum(value_); }
  Value total_held() const { return sum(held_); }

  // Edge values plus whatever vertices still hold equal the initial total.
  bool conserved() const {
    const Value drift = total_final() + total_held() - total_initial();
    if constexpr (std::is_floating_point_v<Value>) {
      const Value tol = ledger_tolerance<Value>() * static_cast<Value>(edge_count() + 1);
      return drift <= tol && -drift <= tol;
    } else {
      return drift == Value(0);
    }
  }

 private:
  static void check_amount(const Value& amount, std::string_view rule) {
    if (amount < Value(0)) throw LedgerOverdraft(std::string(rule) + ": negative transfer");
  }

  void take_from_edge(EdgeId e, const Value& amount, std::string_view rule) {
    check_amount(amount, rule);
    if (amount > spare(e) + ledger_tolerance<Value>()) {
      throw LedgerOverdraft(std::string(rule) + ": edge " + std::to_string(e) + " gives more than its surplus");
    }
    value_.at(e) -= amount;
  }

  static Value sum(const std::vector<Value>& xs) {
    Value s(0);
    for (const auto& x : xs) s += x;
    return s;
  }

  Value target_;
  std::vector<Value> initial_;
  std::vector<Value> value_;
  std::vector<bool> in_opt_;
  std::vector<Value> held_;
  std::vector<Transfer<Value>> log_;
};

// Deterministic ledger: v_i = 1 for edges the trace colored, 0 otherwise.
// Throws ParameterError for C outside [0, 1] and PreconditionError when the
// witness does not match the trace's graph.
ChargeLedger<Rational> build_ledger(const Trace& trace, const OptWitness& witness, const Rational& C);

struct VerdictRow {
  EdgeId edge = 0;
  std::string cls;
  bool in_opt = false;
  double initial = 0;
  double final_value = 0;
  std::optional<double> margin;  // OPT edges only
  std::optional<int> case_id;    // which case of the strategy covered the edge
};

struct VerdictReport {
  std::string strategy;
  int k = 2;
  double target = 0;
  std::string target_exact;  // empty for floating-point ledgers
  std::vector<VerdictRow> rows;
  std::vector<std::string> violations;  // failed facts, inequalities or margins
  bool conserved = true;
  std::size_t transfer_count = 0;

  // Smallest v_f - C over OPT edges, and over rejected OPT edges only.
  std::optional<double> min_margin;
  std::optional<double> min_rejected_margin;
  std::optional<Rational> exact_min_margin;
  std::optional<Rational> exact_min_rejected_margin;

  bool passed() const { return violations.empty() && conserved; }
};

// Columns edge,class,v_i,v_f,margin,case.
void write_verdict_csv(std::ostream& out, const VerdictReport& report);

struct TreeChargeOptions {
  VertexId root = 0;
  bool check_facts = true;
};

// First-Fit on a forest with C = (k-1)/k. Throws PreconditionError when the
// trace is not what First-Fit does on its reveal order, and StructuralError
// when the graph has a cycle.
VerdictReport ff_tree_charge(const Trace& trace, const OptWitness& witness, const TreeChargeOptions& options = {});

// (2s-2)/(2s-1) with s = sqrt(k). For non-square k, s is replaced by the
// rational isqrt(k * 10^6) / 1000, which is at most sqrt(k), so the target is
// a lower bound on the irrational one.
Rational fair_tree_target(int k);

// (1-C) z^2 + ((2k-1) C - (2k-2)) z + (1-C)(k^2-k).
Rational fair_tree_quadratic(int k, const Rational& C, const Rational& z);

// Any fair algorithm on a forest with C = fair_tree_target(k). Throws
// PreconditionError for an unfair trace.
VerdictReport fair_tree_charge(const Trace& trace, const OptWitness& witness, const TreeChargeOptions& options = {});

// Reveal structure of a path order: which edges were critical (both path
// neighbours revealed earlier) and l(e) for the others.
struct PathRevealAnalysis {
  std::vector<EdgeId> walk;          // edge ids (reveal indices) in path order
  std::vector<std::size_t> position;  // position[e] in walk
  std::vector<bool> critical;
  std::vector<std::size_t> level;     // l(e); 0 for critical edges
};

// Throws PreconditionError unless the order spells a single path.
PathRevealAnalysis analyze_path_order(const RevealSequence& order);

// Throws PreconditionError if e is critical or out of range.
std::size_t compute_l(const RevealSequence& order, EdgeId e);

// min{p^2 - p + 1, (2/3)(1 + p - p^2)}.
double rp_target(double p);

// Random-parity algorithm on a path, k = 2, exact initial values from the
// parity of l. C defaults to rp_target(p). Throws ParameterError for p
// outside [1/2, 1] or k != 2, PreconditionError for non-path input.
VerdictReport rp_path_charge(const RevealSequence& order, double p, std::optional<double> C = std::nullopt);

// Largest C at which rp_path_charge passes, by bisection to within tol.
double rp_max_passing_target(const RevealSequence& order, double p, double tol = 1e-9);

}  // namespace palette::charging
