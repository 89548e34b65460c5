#include <algorithm>
#include <cmath>
#include <string>

#include "palette/charging.hpp"

namespace palette::charging {

namespace {

constexpr double kMarginTolerance = 1e-9;

}  // namespace

PathRevealAnalysis analyze_path_order(const RevealSequence& order) {
  Graph g;
  for (const auto& ends : order.edges) g.add_edge(ends.u, ends.v);
  PathRevealAnalysis out;
  if (g.num_edges() > 0 && classify(g).kind != GraphKind::Path) {
    throw PreconditionError("reveal order does not spell a single path");
  }
  out.walk = path_walk(g);
  const std::size_t m = out.walk.size();
  out.position.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) out.position[out.walk[i]] = i;

  out.critical.assign(m, false);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const EdgeId e = out.walk[i];
    out.critical[e] = out.walk[i - 1] < e && out.walk[i + 1] < e;
  }

  // Each maximal run of non-critical edges grows from its earliest edge.
  out.level.assign(m, 0);
  std::size_t i = 0;
  while (i < m) {
    if (out.critical[out.walk[i]]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    std::size_t first = i;
    while (j < m && !out.critical[out.walk[j]]) {
      if (out.walk[j] < out.walk[first]) first = j;
      ++j;
    }
    for (std::size_t t = i; t < j; ++t) out.level[out.walk[t]] = (t > first ? t - first : first - t) + 1;
    i = j;
  }
  return out;
}

std::size_t compute_l(const RevealSequence& order, EdgeId e) {
  const auto a = analyze_path_order(order);
  if (e >= a.walk.size()) throw PreconditionError("edge " + std::to_string(e) + " is not in the order");
  if (a.critical[e]) throw PreconditionError("edge " + std::to_string(e) + " is critical; l is undefined");
  return a.level[e];
}

double rp_target(double p) { return std::min(p * p - p + 1.0, (2.0 / 3.0) * (1.0 + p - p * p)); }

VerdictReport rp_path_charge(const RevealSequence& order, double p, std::optional<double> C) {
  if (!(p >= 0.5 && p <= 1.0)) throw ParameterError("p must lie in [1/2, 1], got " + std::to_string(p));
  if (order.k != 2) throw ParameterError("path charging is defined for k = 2, got k = " + std::to_string(order.k));
  const double target = C.value_or(rp_target(p));
  if (!(target >= 0.0 && target <= 1.0)) throw ParameterError("target ratio C must lie in [0, 1]");

  const auto a = analyze_path_order(order);
  const std::size_t m = a.walk.size();
  const auto odd = [&](EdgeId e) { return a.level[e] % 2 == 1; };

  std::vector<double> initial(m, 1.0);
  for (EdgeId e = 0; e < m; ++e) {
    if (!a.critical[e]) continue;
    const std::size_t pos = a.position[e];
    const bool same = odd(a.walk[pos - 1]) == odd(a.walk[pos + 1]);
    initial[e] = same ? p * p + (1 - p) * (1 - p) : 2 * p * (1 - p);
  }
  ChargeLedger<double> ledger(target, initial, std::vector<bool>(m, true), 0);

  VerdictReport report;
  report.strategy = "rp-path";
  report.k = 2;
  report.target = target;
  std::vector<std::optional<int>> cases(m);
  const double half = 0.5 * (1.0 - target);
  try {
    for (std::size_t pos = 0; pos < m; ++pos) {
      const EdgeId e = a.walk[pos];
      if (!a.critical[e]) continue;
      const EdgeId left = a.walk[pos - 1];
      const EdgeId right = a.walk[pos + 1];
      if (odd(left) == odd(right)) {
        cases[e] = 2;
        ledger.edge_to_edge(left, e, half, "rp.same-parity");
        ledger.edge_to_edge(right, e, half, "rp.same-parity");
        continue;
      }
      cases[e] = 1;
      const bool right_even = !odd(right);
      const EdgeId even = right_even ? right : left;
      const EdgeId other = right_even ? left : right;
      // An even edge has l >= 2, so its far neighbour lies in its own run.
      const std::size_t even_pos = a.position[even];
      const std::size_t far_pos = right_even ? even_pos + 1 : even_pos - 1;
      if (far_pos >= m || a.critical[a.walk[far_pos]]) {
        report.violations.push_back("critical edge " + std::to_string(e) + ": even neighbour has no non-critical far neighbour");
        continue;
      }
      ledger.edge_to_edge(other, e, half, "rp.mixed-parity.odd");
      ledger.edge_to_edge(even, e, 2 * half, "rp.mixed-parity.even");
      ledger.edge_to_edge(a.walk[far_pos], e, half, "rp.mixed-parity.far");
    }
  } catch (const LedgerOverdraft& err) {
    report.violations.push_back(err.what());
  }

  for (std::size_t pos = 0; pos < m; ++pos) {
    const EdgeId e = a.walk[pos];
    VerdictRow row;
    row.edge = e;
    row.cls = a.critical[e] ? "critical" : "non-critical";
    row.in_opt = true;
    row.initial = ledger.initial(e);
    row.final_value = ledger.value(e);
    row.margin = ledger.margin(e);
    row.case_id = cases[e];
    if (!report.min_margin || *row.margin < *report.min_margin) report.min_margin = row.margin;
    if (a.critical[e] && (!report.min_rejected_margin || *row.margin < *report.min_rejected_margin)) {
      report.min_rejected_margin = row.margin;
    }
    if (*row.margin < -kMarginTolerance) {
      report.violations.push_back("edge " + std::to_string(e) + ": final value " + std::to_string(row.final_value) +
                                  " below C");
    }
    report.rows.push_back(std::move(row));
  }
  report.conserved = ledger.conserved();
  report.transfer_count = ledger.transfers().size();
  return report;
}

double rp_max_passing_target(const RevealSequence& order, double p, double tol) {
  if (rp_path_charge(order, p, 1.0).passed()) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (rp_path_charge(order, p, mid).passed() ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace palette::charging
