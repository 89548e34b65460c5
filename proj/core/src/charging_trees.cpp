#include <algorithm>
#include <string>

#include "palette/algorithms.hpp"
#include "palette/charging.hpp"
#include "palette/nf_tree.hpp"

namespace palette::charging {

namespace {

Rational frac(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

std::string edge_name(const Graph& g, EdgeId e) {
  const auto ends = g.endpoints(e);
  return "edge " + std::to_string(e) + " (" + std::to_string(ends.u) + "," + std::to_string(ends.v) + ")";
}

std::vector<Endpoints> reveal_order(const Trace& trace) {
  std::vector<Endpoints> order;
  order.reserve(trace.steps.size());
  for (const auto& step : trace.steps) order.push_back(step.ends);
  return order;
}

void require_complete(const Trace& trace) {
  if (!is_acyclic(trace.graph)) throw StructuralError("tree charging needs a forest");
  if (trace.steps.size() != trace.graph.num_edges()) {
    throw PreconditionError("trace has " + std::to_string(trace.steps.size()) + " steps for " +
                            std::to_string(trace.graph.num_edges()) + " edges");
  }
}

void require_first_fit(const Trace& trace) {
  FirstFit ff;
  const auto order = reveal_order(trace);
  const Trace again = run(ff, order, trace.k);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!(again.steps[i].decision == trace.steps[i].decision)) {
      throw PreconditionError("trace is not a First-Fit run: step " + std::to_string(i + 1) + " differs");
    }
  }
}

// Per-edge rows, margins and conservation.
void finish(VerdictReport& report, const Graph& g, const ChargeLedger<Rational>& ledger,
            const EdgeClassification& cls, const std::vector<std::optional<int>>& cases) {
  report.target = to_double(ledger.target());
  report.target_exact = to_string(ledger.target());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    VerdictRow row;
    row.edge = e;
    row.cls = std::string(to_string(cls.edge[e]));
    row.in_opt = ledger.in_opt(e);
    row.initial = to_double(ledger.initial(e));
    row.final_value = to_double(ledger.value(e));
    row.case_id = cases[e];
    if (row.in_opt) {
      const Rational m = ledger.margin(e);
      row.margin = to_double(m);
      if (!report.exact_min_margin || m < *report.exact_min_margin) report.exact_min_margin = m;
      if (cls.edge[e] == EdgeClass::OptOnly &&
          (!report.exact_min_rejected_margin || m < *report.exact_min_rejected_margin)) {
        report.exact_min_rejected_margin = m;
      }
      if (m < Rational(0)) {
        report.violations.push_back(edge_name(g, e) + ": final value " + to_string(ledger.value(e)) + " below C");
      }
    }
    report.rows.push_back(std::move(row));
  }
  if (report.exact_min_margin) report.min_margin = to_double(*report.exact_min_margin);
  if (report.exact_min_rejected_margin) report.min_rejected_margin = to_double(*report.exact_min_rejected_margin);
  report.conserved = ledger.conserved();
  report.transfer_count = ledger.transfers().size();
}

// Step 2, shared by both tree strategies: a vertex pays its rejected parent
// edge up to `cap`, then splits the rest evenly over its rejected child edges.
void settle_vertices(const Graph& g, const RootedView& view, const EdgeClassification& cls,
                     ChargeLedger<Rational>& ledger, const Rational& cap, std::string_view rule_parent,
                     std::string_view rule_children) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto parent = view.parent_edge[v];
    if (parent && cls.edge[*parent] == EdgeClass::OptOnly) {
      const Rational amount = std::min(ledger.held(v), cap);
      if (amount > Rational(0)) ledger.vertex_to_edge(v, *parent, amount, rule_parent);
    }
    std::vector<EdgeId> rejected;
    for (EdgeId f : view.child_edges[v]) {
      if (cls.edge[f] == EdgeClass::OptOnly) rejected.push_back(f);
    }
    if (rejected.empty() || ledger.held(v) <= Rational(0)) continue;
    const Rational share = ledger.held(v) / Rational(Integer(rejected.size()));
    for (EdgeId f : rejected) ledger.vertex_to_edge(v, f, share, rule_children);
  }
}

struct Receipt {
  Rational from_upper{0};
  Rational from_lower{0};
};

// What each edge received from its upper and lower endpoint in Step 2.
std::vector<Receipt> receipts(const ChargeLedger<Rational>& ledger, const RootedView& view) {
  std::vector<Receipt> out(ledger.edge_count());
  for (const auto& t : ledger.transfers()) {
    if (t.from_kind != Node::Vertex || t.to_kind != Node::Edge) continue;
    (t.from == view.upper[t.to] ? out[t.to].from_upper : out[t.to].from_lower) += t.amount;
  }
  return out;
}

}  // namespace

VerdictReport ff_tree_charge(const Trace& trace, const OptWitness& witness, const TreeChargeOptions& options) {
  require_complete(trace);
  require_first_fit(trace);
  const Graph& g = trace.graph;
  const PartialColoring& col = trace.coloring;
  const int k = trace.k;
  const Rational C = frac(k - 1, k);
  const Rational unit = frac(1, k);

  auto ledger = build_ledger(trace, witness, C);
  const auto cls = classify_edges(g, col, witness);
  const auto view = RootedView::build(g, col, options.root);
  const auto is_double = [&](std::optional<EdgeId> e) { return e && cls.edge[*e] == EdgeClass::Double; };

  VerdictReport report;
  report.strategy = "ff-tree";
  report.k = k;

  // Step 1: a colored edge under a higher-colored double edge pays 1/k to
  // the grandparent vertex, then hands the rest of its surplus upward.
  std::vector<Rational> to_upper(g.num_edges(), Rational(0));
  std::vector<Rational> to_grandparent(g.num_edges(), Rational(0));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!col.is_colored(e)) continue;
    const VertexId v = view.upper[e];
    const auto parent = view.parent_edge[v];
    if (is_double(parent) && col.color_of(*parent)->value() > col.color_of(e)->value()) {
      ledger.edge_to_vertex(e, g.other_end(*parent, v), unit, "ff.1a");
      to_grandparent[e] = unit;
    }
    const Rational rest = ledger.spare(e);
    if (rest > Rational(0)) {
      ledger.edge_to_vertex(e, v, rest, "ff.1b");
      to_upper[e] = rest;
    }
  }
  std::vector<Rational> m(g.num_vertices(), Rational(0));
  for (VertexId v = 0; v < g.num_vertices(); ++v) m[v] = ledger.held(v);

  settle_vertices(g, view, cls, ledger, C, "ff.2a", "ff.2b");

  const auto fail = [&](const std::string& what) { report.violations.push_back(what); };
  if (options.check_facts) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (!col.is_colored(e)) continue;
      const VertexId v = view.upper[e];
      const VertexId u = view.lower(g, e);
      const auto parent = view.parent_edge[v];
      const int c = col.color_of(e)->value();
      if (cls.edge[e] == EdgeClass::Single) {
        const Rational need = is_double(parent) ? C : Rational(1);
        if (to_upper[e] < need) fail(edge_name(g, e) + ": single edge passes less than " + to_string(need) + " upward");
      } else if (!is_double(parent) && to_upper[e] != unit) {
        fail(edge_name(g, e) + ": double edge under a non-double parent does not pass 1/k upward");
      }
      // Lower-colored edges at both endpoints feed m(v) when v's own parent
      // edge is uncolored.
      if (!(parent && col.is_colored(*parent)) && m[v] < frac(c, k)) {
        fail("vertex " + std::to_string(v) + ": m(v) = " + to_string(m[v]) + " below c/k for " + edge_name(g, e));
      }
      if (cls.edge[e] == EdgeClass::Double && c > view.highest_free[v]) {
        Rational from_children(0);
        for (EdgeId f : view.child_edges[u]) from_children += to_grandparent[f];
        const Rational need = frac(k - cls.vertex[v].colored, k);
        if (from_children < need) {
          fail(edge_name(g, e) + ": high-colored double edge's children pay " + to_string(from_children) +
               " < " + to_string(need));
        }
      }
    }
  }

  const auto received = receipts(ledger, view);
  std::vector<std::optional<int>> cases(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (cls.edge[e] != EdgeClass::OptOnly) continue;
    const VertexId x = view.upper[e];
    const auto parent = view.parent_edge[x];
    const EdgeClass pc = parent ? cls.edge[*parent] : EdgeClass::Neither;
    cases[e] = pc == EdgeClass::Double ? 1 : pc == EdgeClass::OptOnly ? 3 : 2;
    if (!options.check_facts) continue;
    const Rational& from_x = received[e].from_upper;
    const Rational& from_y = received[e].from_lower;
    const int c_hat = view.highest_free[x];
    const Rational need_y = std::min(C, frac(c_hat, k));
    if (from_y < need_y) fail(edge_name(g, e) + ": receives " + to_string(from_y) + " from below, need " + to_string(need_y));
    if (c_hat < k - 1) {
      const Rational need_x = frac(k - c_hat - 1, k);
      if (from_x < need_x) {
        fail(edge_name(g, e) + ": receives " + to_string(from_x) + " from above, need " + to_string(need_x));
      }
    }
  }

  finish(report, g, ledger, cls, cases);
  return report;
}

Rational fair_tree_target(int k) {
  require_valid_k(k);
  Rational s;
  if (const auto root = adversary::exact_sqrt(k)) {
    s = frac(*root);
  } else {
    const long long scaled = static_cast<long long>(k) * 1000000LL;
    long long q = 0;
    while ((q + 1) * (q + 1) <= scaled) ++q;
    s = frac(q, 1000);
  }
  return (Rational(2) * s - Rational(2)) / (Rational(2) * s - Rational(1));
}

Rational fair_tree_quadratic(int k, const Rational& C, const Rational& z) {
  const Rational K(k);
  const Rational one(1);
  return (one - C) * z * z + ((Rational(2) * K - one) * C - (Rational(2) * K - Rational(2))) * z +
         (one - C) * (K * K - K);
}

VerdictReport fair_tree_charge(const Trace& trace, const OptWitness& witness, const TreeChargeOptions& options) {
  require_complete(trace);
  if (!audit_fair(trace)) throw PreconditionError("trace is not fair: some edge was rejected while a color was free");
  const Graph& g = trace.graph;
  const PartialColoring& col = trace.coloring;
  const int k = trace.k;
  const Rational C = fair_tree_target(k);
  const Rational one(1);

  auto ledger = build_ledger(trace, witness, C);
  const auto cls = classify_edges(g, col, witness);
  const auto view = RootedView::build(g, col, options.root);

  VerdictReport report;
  report.strategy = "fair-tree";
  report.k = k;
  const auto fail = [&](const std::string& what) { report.violations.push_back(what); };

  // Step 1: every colored edge hands its whole surplus to its upper vertex.
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!col.is_colored(e)) continue;
    const Rational rest = ledger.spare(e);
    if (rest > Rational(0)) ledger.edge_to_vertex(e, view.upper[e], rest, "fair.1");
  }
  settle_vertices(g, view, cls, ledger, C, "fair.2a", "fair.2b");

  if (options.check_facts) {
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const auto& t = cls.vertex[v];
      if (t.doubled + t.opt_only > k) fail("vertex " + std::to_string(v) + ": more than k OPT edges");
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (!col.is_rejected(e)) continue;
      const auto ends = g.endpoints(e);
      if (cls.vertex[ends.u].colored + cls.vertex[ends.v].colored < k) {
        fail(edge_name(g, e) + ": rejected with fewer than k colored neighbours");
      }
    }
  }

  const auto received = receipts(ledger, view);
  std::vector<std::optional<int>> cases(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (cls.edge[e] != EdgeClass::OptOnly) continue;
    const VertexId x = view.upper[e];
    const VertexId y = view.lower(g, e);
    const auto parent = view.parent_edge[x];
    const EdgeClass pc = parent ? cls.edge[*parent] : EdgeClass::Neither;
    const int id = pc == EdgeClass::OptOnly ? 1 : pc == EdgeClass::Single ? 2 : pc == EdgeClass::Double ? 3 : 4;
    cases[e] = id;
    if (!options.check_facts) continue;

    const Rational& from_x = received[e].from_upper;
    const Rational& from_y = received[e].from_lower;
    const auto& tx = cls.vertex[x];
    const auto& ty = cls.vertex[y];
    const Rational dc(tx.colored), dd(tx.doubled), dcy(ty.colored), K(k);
    const Rational expect_y = std::min(C, dcy - C * Rational(ty.doubled));
    if (from_y != expect_y) {
      fail(edge_name(g, e) + ": receives " + to_string(from_y) + " from below, expected " + to_string(expect_y));
    }
    if (expect_y >= C) continue;
    if (ty.colored != ty.doubled) fail(edge_name(g, e) + ": short lower vertex has a single-colored edge");

    Rational bound_x;
    Rational chain[3];
    const Rational s = one - C;
    switch (id) {
      case 1:
        bound_x = (dc - C * dd - C) / (K - dd - one);
        chain[0] = dc + s * dcy * (K - dd - one);
        chain[1] = dc + s * dcy * (K - dc - one);
        chain[2] = dc + s * (K - dc) * (K - dc - one);
        break;
      case 2:
        bound_x = (dc - C * dd - one) / (K - dd);
        chain[0] = dc - one + s * dcy * (K - dd);
        chain[1] = dc - one + s * dcy * (K - dc + one);
        chain[2] = dc - one + s * (K - dc) * (K - dc + one);
        break;
      default:
        bound_x = (dc - C * dd + C - one) / (K - dd);
        chain[0] = dc + C - one + s * dcy * (K - dd);
        chain[1] = dc + C - one + s * dcy * (K - dc);
        chain[2] = dc + C - one + s * (K - dc) * (K - dc);
        break;
    }
    if (from_x < bound_x) {
      fail(edge_name(g, e) + ": receives " + to_string(from_x) + " from above, case " + std::to_string(id) +
           " bound " + to_string(bound_x));
    }
    if (bound_x + expect_y < C) fail(edge_name(g, e) + ": case " + std::to_string(id) + " bounds sum below C");
    for (int i = 0; i < 3; ++i) {
      if (chain[i] < C * K) {
        fail(edge_name(g, e) + ": case " + std::to_string(id) + " inequality " + std::to_string(i + 1) +
             " fails with " + to_string(chain[i]) + " < " + to_string(C * K));
      }
    }
  }

  finish(report, g, ledger, cls, cases);
  return report;
}

}  // namespace palette::charging
