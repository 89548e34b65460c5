#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "palette/charging.hpp"

namespace palette::charging {

std::string to_string(const Rational& r) {
  std::ostringstream out;
  out << r.numerator();
  if (r.denominator() != 1) out << '/' << r.denominator();
  return out.str();
}

double to_double(const Rational& r) {
  return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

std::string_view to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::Double:
      return "double";
    case EdgeClass::Single:
      return "single";
    case EdgeClass::OptOnly:
      return "opt-only";
    case EdgeClass::Neither:
      return "neither";
  }
  return "?";
}

EdgeClassification classify_edges(const Graph& g, const PartialColoring& alg, const OptWitness& witness) {
  if (witness.assignment.size() != g.num_edges()) {
    throw PreconditionError("witness covers " + std::to_string(witness.assignment.size()) + " edges, graph has " +
                            std::to_string(g.num_edges()));
  }
  if (alg.size() > g.num_edges()) throw PreconditionError("coloring has more edges than the graph");
  EdgeClassification out;
  out.edge.resize(g.num_edges());
  out.vertex.resize(g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const bool colored = e < alg.size() && alg.is_colored(e);
    const bool opt = witness.contains(e);
    const EdgeClass c = colored ? (opt ? EdgeClass::Double : EdgeClass::Single)
                                : (opt ? EdgeClass::OptOnly : EdgeClass::Neither);
    out.edge[e] = c;
    for (VertexId v : {g.endpoints(e).u, g.endpoints(e).v}) {
      auto& t = out.vertex[v];
      t.colored += colored ? 1 : 0;
      t.doubled += c == EdgeClass::Double ? 1 : 0;
      t.single += c == EdgeClass::Single ? 1 : 0;
      t.opt_only += c == EdgeClass::OptOnly ? 1 : 0;
    }
  }
  return out;
}

RootedView RootedView::build(const Graph& g, const PartialColoring& state, VertexId root) {
  if (!is_acyclic(g)) throw StructuralError("rooted view needs a forest");
  const std::size_t n = g.num_vertices();
  if (n > 0 && root >= n) throw PreconditionError("root " + std::to_string(root) + " is not a vertex");
  RootedView view;
  view.parent_edge.assign(n, std::nullopt);
  view.child_edges.assign(n, {});
  view.upper.assign(g.num_edges(), 0);
  view.highest_free.assign(n, 0);

  std::vector<bool> seen(n, false);
  std::vector<VertexId> stack;
  const auto grow_from = [&](VertexId r) {
    seen[r] = true;
    stack.push_back(r);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(v)) {
        const VertexId w = g.other_end(e, v);
        if (seen[w]) continue;
        seen[w] = true;
        view.parent_edge[w] = e;
        view.child_edges[v].push_back(e);
        view.upper[e] = v;
        stack.push_back(w);
      }
    }
  };
  if (n > 0) grow_from(root);
  for (VertexId v = 0; v < n; ++v) {
    if (!seen[v]) grow_from(v);
  }
  for (auto& children : view.child_edges) std::sort(children.begin(), children.end());

  const int k = state.k();
  for (VertexId v = 0; v < n; ++v) {
    const ColorSet missing = state.colors_at(v).complement(k);
    const auto top = missing.highest();
    view.highest_free[v] = top ? top->value() : 0;
  }
  return view;
}

ChargeLedger<Rational> build_ledger(const Trace& trace, const OptWitness& witness, const Rational& C) {
  if (C < Rational(0) || C > Rational(1)) throw ParameterError("target ratio C must lie in [0, 1], got " + to_string(C));
  const Graph& g = trace.graph;
  if (witness.assignment.size() != g.num_edges()) {
    throw PreconditionError("witness and trace describe different graphs");
  }
  std::vector<Rational> initial(g.num_edges(), Rational(0));
  std::vector<bool> in_opt(g.num_edges(), false);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (e < trace.coloring.size() && trace.coloring.is_colored(e)) initial[e] = Rational(1);
    in_opt[e] = witness.contains(e);
  }
  return ChargeLedger<Rational>(C, std::move(initial), std::move(in_opt), g.num_vertices());
}

void write_verdict_csv(std::ostream& out, const VerdictReport& report) {
  out << "edge,class,v_i,v_f,margin,case\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(12);
  for (const auto& row : report.rows) {
    out << row.edge << ',' << row.cls << ',' << row.initial << ',' << row.final_value << ',';
    if (row.margin) out << *row.margin;
    out << ',';
    if (row.case_id) out << *row.case_id;
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace palette::charging
