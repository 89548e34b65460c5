// palette: command-line driver for online dual edge coloring experiments.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "palette/algorithms.hpp"
#include "palette/charging.hpp"
#include "palette/errors.hpp"
#include "palette/graph_io.hpp"
#include "palette/harness.hpp"
#include "palette/nextfit_order.hpp"
#include "palette/opt.hpp"

namespace {

using namespace palette;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParameterError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  return in;
}

// A ratio above the forced upper bound (beyond 3 standard errors for
// randomized runs) contradicts the construction.
bool exceeds_bound(const harness::RatioReport& r) {
  if (!r.bound) return false;
  const double slack = 3.0 * r.ratio_stderr.value_or(0.0) + 1e-9;
  return r.ratio > *r.bound + slack;
}

struct RunOptions {
  std::string alg = "ff";
  double p = 0.7236067977499790;
  int k = 2;
  std::string adv;
  std::size_t m = 0, n = 0, N = 0;
  int b = 6;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string out;
};

void add_seed(CLI::App* cmd, std::uint64_t& seed) {
  cmd->add_option("--seed", seed, "Experiment seed")->envname("PALETTE_SEED");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online dual edge coloring: algorithms, adversaries, optima and charging verifiers"};
  app.require_subcommand(1);

  RunOptions ro;
  auto* run_cmd = app.add_subcommand("run", "Play an algorithm against a construction");
  run_cmd->add_option("--alg", ro.alg, "ff, nf, rp or a registered external algorithm");
  run_cmd->add_option("--p", ro.p, "rp: probability of color 1 on a fresh component");
  run_cmd->add_option("--k", ro.k, "Number of colors");
  run_cmd->add_option("--adv", ro.adv, "Construction name (see `list`)")->required();
  run_cmd->add_option("--m", ro.m);
  run_cmd->add_option("--n", ro.n);
  run_cmd->add_option("--N", ro.N);
  run_cmd->add_option("--b", ro.b);
  run_cmd->add_option("--trials", ro.trials);
  run_cmd->add_option("--threads", ro.threads, "Worker threads, 0 for all cores");
  add_seed(run_cmd, ro.seed);
  run_cmd->add_option("--out", ro.out, "CSV output path");

  std::vector<std::string> yao_algs;
  int yao_b = 6;
  std::size_t yao_trials = 100000;
  std::uint64_t yao_seed = 1;
  std::size_t yao_threads = 0;
  std::string yao_out;
  auto* yao_cmd = app.add_subcommand("yao", "Deterministic algorithms on the hard random path distribution");
  yao_cmd->add_option("--alg", yao_algs, "Deterministic algorithms (repeatable)")->default_val(std::vector<std::string>{"ff", "nf"});
  yao_cmd->add_option("--b", yao_b, "Path has 3^b - 2 edges");
  yao_cmd->add_option("--trials", yao_trials);
  yao_cmd->add_option("--threads", yao_threads);
  add_seed(yao_cmd, yao_seed);
  yao_cmd->add_option("--out", yao_out);

  harness::ExhaustiveConfig ex;
  std::string ex_class = "path";
  std::string ex_out;
  auto* ex_cmd = app.add_subcommand("exhaustive", "Check a strict ratio bound over every small instance");
  ex_cmd->add_option("--class", ex_class)->check(CLI::IsMember({"path", "tree"}));
  ex_cmd->add_option("--max-edges", ex.max_edges);
  ex_cmd->add_option("--k", ex.k);
  ex_cmd->add_option("--alg", ex.algorithm, "ff, nf, or fair (every fair run)")->check(CLI::IsMember({"ff", "nf", "fair"}));
  ex_cmd->add_flag("--charge", ex.verify_charging, "Trees: also run the charging verifier from every root");
  ex_cmd->add_option("--out", ex_out);

  harness::VerifyConfig vc;
  std::string v_alg = "ff";
  std::optional<double> v_C;
  std::string v_out;
  auto* v_cmd = app.add_subcommand("verify", "Run a charging verifier");
  v_cmd->add_option("--strategy", vc.strategy)->required()->check(CLI::IsMember({"ff-tree", "fair-tree", "rp-path"}));
  v_cmd->add_option("--source", vc.source, "random, trace, or a construction name");
  v_cmd->add_option("--alg", v_alg, "fair-tree: algorithm producing the traces");
  v_cmd->add_option("--k", vc.k);
  v_cmd->add_option("--p", vc.p);
  v_cmd->add_option("--C", v_C, "rp-path: target ratio");
  v_cmd->add_option("--m", vc.m);
  v_cmd->add_option("--N", vc.N);
  v_cmd->add_option("--instances", vc.instances);
  v_cmd->add_option("--max-edges", vc.max_edges);
  v_cmd->add_option("--trace", vc.trace_path, "Trace CSV for --source trace");
  add_seed(v_cmd, vc.seed);
  v_cmd->add_option("--out", v_out);

  std::string opt_input, opt_out;
  int opt_k = 2;
  auto* opt_cmd = app.add_subcommand("opt", "Offline optimum of an edge list, witness as trace CSV");
  opt_cmd->add_option("--input", opt_input, "Edge list file")->required();
  opt_cmd->add_option("--k", opt_k);
  opt_cmd->add_option("--out", opt_out);

  std::string nfo_trace, nfo_out;
  int nfo_k = 2;
  auto* nfo_cmd = app.add_subcommand("nf-order", "Reveal order that makes Next-Fit reproduce a coloring");
  nfo_cmd->add_option("--trace", nfo_trace, "Trace CSV holding the target coloring")->required();
  nfo_cmd->add_option("--k", nfo_k);
  nfo_cmd->add_option("--out", nfo_out);

  auto* list_cmd = app.add_subcommand("list", "List constructions and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run_cmd) {
      harness::ExperimentConfig c;
      c.algorithm = AlgorithmId::parse(ro.alg, ro.p);
      c.construction = ro.adv;
      c.k = ro.k;
      c.m = ro.m;
      c.n = ro.n;
      c.N = ro.N;
      c.b = ro.b;
      c.trials = ro.trials;
      c.seed = ro.seed;
      c.threads = ro.threads;
      const auto report = harness::cmd_run(c);
      Output out(ro.out);
      harness::write_ratio_csv(out.stream(), {report});
      return exceeds_bound(report) ? kExitViolation : kExitOk;
    }
    if (*yao_cmd) {
      std::vector<AlgorithmId> ids;
      for (const auto& a : yao_algs) ids.push_back(AlgorithmId::parse(a));
      const auto reports = harness::cmd_yao(yao_b, ids, yao_trials, yao_seed, yao_threads);
      Output out(yao_out);
      harness::write_ratio_csv(out.stream(), reports);
      for (const auto& r : reports) {
        if (exceeds_bound(r)) return kExitViolation;
      }
      return kExitOk;
    }
    if (*ex_cmd) {
      ex.instances = ex_class == "tree" ? harness::InstanceClass::Tree : harness::InstanceClass::Path;
      const auto summary = harness::cmd_exhaustive(ex);
      Output out(ex_out);
      harness::write_exhaustive_csv(out.stream(), summary);
      for (const auto& v : summary.violations) std::cerr << v << '\n';
      return summary.passed() ? kExitOk : kExitViolation;
    }
    if (*v_cmd) {
      vc.algorithm = AlgorithmId::parse(v_alg, vc.p);
      vc.C = v_C;
      const auto summary = harness::cmd_verify(vc);
      Output out(v_out);
      harness::write_verify_csv(out.stream(), summary);
      if (summary.first_failure) {
        for (const auto& v : summary.first_failure->violations) std::cerr << v << '\n';
      }
      return summary.passed() ? kExitOk : kExitViolation;
    }
    if (*opt_cmd) {
      auto in = open_input(opt_input);
      const auto edges = read_edge_list(in);
      const Graph g = build_graph(edges);
      const auto witness = opt_exact(g, opt_k);
      Trace t(opt_k);
      t.algorithm = "opt";
      for (EdgeId e : witness.chosen_edges()) {
        const EdgeId id = t.graph.add_edge(edges[e].u, edges[e].v);
        t.coloring.assign(t.graph, id, *witness.assignment[e]);
        t.steps.push_back({id, edges[e], Decision::colored(*witness.assignment[e])});
      }
      Output out(opt_out);
      write_trace_csv(out.stream(), t);
      std::cerr << "opt_count " << witness.opt_count << " of " << g.num_edges() << " edges\n";
      return kExitOk;
    }
    if (*nfo_cmd) {
      auto in = open_input(nfo_trace);
      const Trace target = read_trace_csv(in, nfo_k);
      const auto order = adversary::nextfit_order(target.graph, target.coloring);
      Output out(nfo_out);
      write_edge_list(out.stream(), order.sequence.edges);
      return kExitOk;
    }
    if (*list_cmd) {
      std::cout << "name,parameters,adaptive,description\n";
      for (const auto& c : harness::constructions()) {
        std::cout << c.name << ",\"" << c.parameters << "\"," << (c.adaptive ? "yes" : "no") << ",\"" << c.summary
                  << "\"\n";
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
