#include "palette/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "palette/adversaries.hpp"
#include "palette/enumerate.hpp"
#include "palette/errors.hpp"
#include "palette/nf_tree.hpp"
#include "palette/opt.hpp"
#include "palette/yao.hpp"

namespace palette::harness {

using charging::Integer;
using charging::Rational;

namespace {

constexpr std::size_t kMaxListedViolations = 20;

bool is_path_construction(const std::string& name) {
  return name == "nf-path-killer" || name == "det-path-killer" || name == "rp-mod3" || name == "rp-oddeven" ||
         name == "yao";
}

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t w = requested;
  if (w == 0) w = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(w, jobs));
}

// Calls job(t) for t in [0, count) across workers; rethrows the first error.
template <class Job>
void parallel_for(std::size_t count, std::size_t threads, const Job& job) {
  const std::size_t workers = worker_count(threads, count);
  if (workers == 1) {
    for (std::size_t t = 0; t < count; ++t) job(t);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < count; t += workers) job(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

std::size_t opt_of(const ExperimentConfig& config, const Trace& trace) {
  if (is_path_construction(config.construction)) return opt_path(trace.graph.num_edges(), config.k);
  return opt_tree(trace.graph, config.k).opt_count;
}

// Upper bound on the ratio the construction forces on this algorithm, when
// one is known.
std::optional<double> ratio_bound(const ExperimentConfig& c, double opt) {
  const double k = c.k;
  const double m = static_cast<double>(c.m);
  const auto kind = c.algorithm.kind;
  const double p = kind == AlgorithmId::Kind::RandomParity ? c.algorithm.p : 1.0;
  const bool parity = kind == AlgorithmId::Kind::RandomParity || kind == AlgorithmId::Kind::FirstFit;
  const bool next_fit = kind == AlgorithmId::Kind::NextFit;
  if (c.construction == "nf-path-killer" && next_fit) return (m + 1) / (2 * m + 1);
  if (c.construction == "det-path-killer") {
    const double n = static_cast<double>(c.n);
    return 2 * n / (3 * n - 1);
  }
  if (c.construction == "rp-mod3" && parity) return ((2.0 / 3.0) * (-p * p + p + 1) * (m - 1) + 1) / m;
  if (c.construction == "rp-oddeven" && parity) return ((p * p - p + 1) * (m - 1) + 1) / m;
  if (c.construction == "yao") return adversary::yao_colored_bound(c.b) / opt;
  if (c.construction == "star-chain") {
    const double N = static_cast<double>(c.N);
    return ((k - 1) * N + 1) / (k * N);
  }
  if (c.construction == "path-then-stars") return k / (k + 1) + k / ((k + 1) * opt);
  if ((c.construction == "nf-tree" || c.construction == "nf-tree-rounded") && next_fit) {
    const int s = c.construction == "nf-tree" ? *adversary::exact_sqrt(c.k) : adversary::ceil_sqrt(c.k);
    const auto plan = adversary::plan_bunches(c.k, c.N, s);
    return static_cast<double>(plan.expected_colored()) / opt;
  }
  return std::nullopt;
}

void write_optional(std::ostream& out, const std::optional<double>& x) {
  if (x) out << *x;
}

std::string describe(std::span<const Endpoints> order) {
  std::ostringstream out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) out << ' ';
    out << '(' << order[i].u << ',' << order[i].v << ')';
  }
  return out.str();
}

Graph graph_of(std::span<const Endpoints> order) {
  Graph g;
  for (const auto& e : order) g.add_edge(e.u, e.v);
  return g;
}

std::vector<std::size_t> shuffled(std::size_t n, RngStream& rng) {
  std::vector<std::size_t> xs(n);
  std::iota(xs.begin(), xs.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(xs[i - 1], xs[rng.below(i)]);
  return xs;
}

}  // namespace

const std::vector<ConstructionInfo>& constructions() {
  static const std::vector<ConstructionInfo> list = {
      {"nf-path-killer", "--m", false, "path of 2m+1 edges, odd edges first (k = 2)"},
      {"det-path-killer", "--n", true, "n two-edge paths joined by decision-dependent connectors (k = 2)"},
      {"rp-mod3", "--m (3 divides m-1)", false, "path edges = 1 (mod 3), then = 0 (mod 3), then the rest (k = 2)"},
      {"rp-oddeven", "--m (odd)", false, "path odd edges, then even edges (k = 2)"},
      {"yao", "--b (1..19)", false, "random instance from the hard path distribution on 3^b - 2 edges (k = 2)"},
      {"star-chain", "--k --N", true, "N stars of k+1 edges, each centred on a colored leaf of the last"},
      {"path-then-stars", "--k --m", true, "path of m edges, then k-edge stars at every vertex if it went well"},
      {"nf-tree", "--k (perfect square >= 4) --N", false, "k shifted copies of N bunches of stars"},
      {"nf-tree-rounded", "--k (>= 4) --N", false, "bunch construction with small stars of ceil(sqrt k) edges"},
  };
  return list;
}

void ExperimentConfig::validate() const {
  const auto& list = constructions();
  if (std::none_of(list.begin(), list.end(), [&](const auto& c) { return c.name == construction; })) {
    throw ParameterError("unknown construction '" + construction + "'; see `palette list`");
  }
  require_valid_k(k);
  if (trials == 0) throw ParameterError("--trials must be at least 1");
  if (algorithm.kind == AlgorithmId::Kind::RandomParity && k != 2) {
    throw ParameterError("rp is defined for k = 2 only");
  }
  if (is_path_construction(construction) && k != 2) {
    throw ParameterError(construction + " is a two-color construction; use --k 2");
  }
  const auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw ParameterError(construction + " needs " + what);
  };
  if (construction == "nf-path-killer") need(m >= 1, "--m >= 1");
  if (construction == "det-path-killer") {
    need(n >= 1, "--n >= 1");
    if (algorithm.kind == AlgorithmId::Kind::RandomParity && algorithm.p != 1.0) {
      throw ParameterError("det-path-killer adapts to a deterministic algorithm; rp with p < 1 is randomized");
    }
  }
  if (construction == "rp-mod3") need(m >= 1 && (m - 1) % 3 == 0, "--m with 3 dividing m-1");
  if (construction == "rp-oddeven") need(m % 2 == 1, "odd --m");
  if (construction == "yao") need(b >= 1 && b <= 19, "--b in 1..19");
  if (construction == "star-chain") need(N >= 1, "--N >= 1");
  if (construction == "path-then-stars") need(m >= 1, "--m >= 1");
  if (construction == "nf-tree") {
    const auto root = adversary::exact_sqrt(k);
    need(root && *root >= 2, "--k a perfect square >= 4");
    need(N >= 1, "--N >= 1");
  }
  if (construction == "nf-tree-rounded") need(k >= 4 && N >= 1, "--k >= 4 and --N >= 1");
}

Trace play(const ExperimentConfig& config, OnlineAlgorithm& alg, std::uint64_t trial) {
  RngStream rng = RngStream::derive(config.seed, trial);
  const std::uint64_t alg_seed = rng();
  const auto& c = config.construction;
  if (c == "nf-path-killer") return run(alg, adversary::nf_path_killer(config.m), alg_seed);
  if (c == "det-path-killer") {
    auto script = adversary::det_path_killer(config.n, alg);
    return run(alg, *script, 2, alg_seed);
  }
  if (c == "rp-mod3") return run(alg, adversary::rp_strategy_mod3(config.m), alg_seed);
  if (c == "rp-oddeven") return run(alg, adversary::rp_strategy_oddeven(config.m), alg_seed);
  if (c == "yao") return run(alg, adversary::yao_sample(config.b, rng).sequence(), alg_seed);
  if (c == "star-chain") {
    auto script = adversary::star_chain(config.k, config.N, alg);
    return run(alg, *script, config.k, alg_seed);
  }
  if (c == "path-then-stars") {
    auto script = adversary::path_then_stars(config.k, config.m, alg, 1000, rng());
    return run(alg, *script, config.k, alg_seed);
  }
  if (c == "nf-tree") return run(alg, adversary::nf_tree_worstcase(config.k, config.N), alg_seed);
  if (c == "nf-tree-rounded") return run(alg, adversary::nf_tree_rounded(config.k, config.N), alg_seed);
  throw ParameterError("unknown construction '" + c + "'");
}

RatioReport cmd_run(const ExperimentConfig& config) {
  config.validate();
  const auto prototype = make_algorithm(config.algorithm);
  const std::size_t T = config.trials;
  std::vector<double> colored(T), opt(T);
  std::vector<std::size_t> edges(T);
  parallel_for(T, config.threads, [&](std::size_t t) {
    auto alg = prototype->clone();
    const Trace trace = play(config, *alg, t);
    colored[t] = static_cast<double>(trace.colored_count());
    opt[t] = static_cast<double>(opt_of(config, trace));
    edges[t] = trace.graph.num_edges();
  });

  RatioReport r;
  r.algorithm = config.algorithm.to_string();
  r.construction = config.construction;
  r.k = config.k;
  r.trials = T;
  r.seed = config.seed;
  r.edges = edges.back();
  const double n = static_cast<double>(T);
  r.colored = std::accumulate(colored.begin(), colored.end(), 0.0) / n;
  r.opt = std::accumulate(opt.begin(), opt.end(), 0.0) / n;
  r.ratio = r.opt > 0 ? r.colored / r.opt : 1.0;
  const bool randomized = !prototype->is_deterministic() || config.construction == "yao";
  if (randomized) {
    double ss = 0;
    for (double x : colored) ss += (x - r.colored) * (x - r.colored);
    const double var = T > 1 ? ss / (n - 1) : 0.0;
    r.colored_stderr = std::sqrt(var / n);
    if (r.opt > 0) r.ratio_stderr = *r.colored_stderr / r.opt;
  }
  r.bound = ratio_bound(config, r.opt);
  if (r.bound) r.margin = *r.bound - r.ratio;
  return r;
}

std::vector<RatioReport> cmd_yao(int b, const std::vector<AlgorithmId>& algorithms, std::size_t trials,
                                 std::uint64_t seed, std::size_t threads) {
  if (b < 2) throw ParameterError("yao needs b >= 2");
  std::vector<RatioReport> out;
  for (const auto& id : algorithms) {
    ExperimentConfig c;
    c.algorithm = id;
    c.construction = "yao";
    c.b = b;
    c.trials = trials;
    c.seed = seed;
    c.threads = threads;
    out.push_back(cmd_run(c));
  }
  return out;
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioReport>& reports) {
  out << "algorithm,construction,k,trials,seed,edges,colored,colored_stderr,opt,ratio,ratio_stderr,bound,margin\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(10);
  for (const auto& r : reports) {
    out << r.algorithm << ',' << r.construction << ',' << r.k << ',' << r.trials << ',' << r.seed << ',' << r.edges
        << ',' << r.colored << ',';
    write_optional(out, r.colored_stderr);
    out << ',' << r.opt << ',' << r.ratio << ',';
    write_optional(out, r.ratio_stderr);
    out << ',';
    write_optional(out, r.bound);
    out << ',';
    write_optional(out, r.margin);
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

ExhaustiveSummary cmd_exhaustive(const ExhaustiveConfig& config) {
  if (config.k < 2) throw ParameterError("exhaustive checks need k >= 2");
  if (config.max_edges < 1 || config.max_edges > kExhaustiveEdgeLimit) {
    throw ParameterError("exhaustive checks take 1 <= max edges <= " + std::to_string(kExhaustiveEdgeLimit));
  }
  const std::string& alg = config.algorithm;
  if (alg != "ff" && alg != "nf" && alg != "fair") throw ParameterError("exhaustive algorithm must be ff, nf or fair");
  const bool trees = config.instances == InstanceClass::Tree;
  const int k = config.k;

  ExhaustiveSummary s;
  if (trees) {
    s.bound = alg == "ff" ? Rational(Integer(k - 1), Integer(k)) : charging::fair_tree_target(k);
  } else {
    s.bound = alg == "ff" ? Rational(Integer(k), Integer(2 * k - 1)) : Rational(Integer(1), Integer(2));
  }

  const auto note = [&](std::string what) {
    if (s.violations.size() < kMaxListedViolations) s.violations.push_back(std::move(what));
  };
  const auto check = [&](std::span<const Endpoints> order, const Trace& trace, const OptWitness* witness,
                         std::size_t opt) {
    ++s.runs;
    const auto colored = static_cast<long long>(trace.colored_count());
    if (opt > 0) {
      const Rational ratio{Integer(colored), Integer(opt)};
      if (ratio < s.min_ratio) {
        s.min_ratio = ratio;
        s.worst_order.assign(order.begin(), order.end());
      }
      if (ratio < s.bound) note("ratio " + charging::to_string(ratio) + " below bound on " + describe(order));
    }
    if (!witness) return;
    for (VertexId root = 0; root < trace.graph.num_vertices(); ++root) {
      const charging::TreeChargeOptions options{root, true};
      const auto report = alg == "ff" ? charging::ff_tree_charge(trace, *witness, options)
                                      : charging::fair_tree_charge(trace, *witness, options);
      ++s.charge_checks;
      if (!report.passed()) {
        note("charging fails from root " + std::to_string(root) + " on " + describe(order) + ": " +
             (report.violations.empty() ? std::string("ledger not conserved") : report.violations.front()));
      }
    }
  };

  const auto visit = [&](std::span<const Endpoints> order) {
    ++s.instances;
    const Graph g = graph_of(order);
    std::optional<OptWitness> witness;
    std::size_t opt = 0;
    if (trees) {
      witness = opt_tree(g, k);
      opt = witness->opt_count;
    } else {
      opt = opt_path(order.size(), k);
    }
    const OptWitness* w = trees && config.verify_charging ? &*witness : nullptr;
    if (alg == "fair") {
      enumerate::for_each_fair_trace(order, k, [&](const Trace& t) { check(order, t, w, opt); });
    } else {
      auto a = make_algorithm(AlgorithmId::parse(alg));
      check(order, run(*a, order, k), w, opt);
    }
  };

  for (std::size_t m = 1; m <= config.max_edges; ++m) {
    if (trees) {
      enumerate::for_each_tree_order(m, visit);
    } else {
      enumerate::for_each_path_order(m, visit);
    }
  }
  return s;
}

void write_exhaustive_csv(std::ostream& out, const ExhaustiveSummary& s) {
  out << "instances,runs,charge_checks,bound,min_ratio,passed,worst_order\n";
  out << s.instances << ',' << s.runs << ',' << s.charge_checks << ',' << charging::to_string(s.bound) << ','
      << charging::to_string(s.min_ratio) << ',' << (s.passed() ? "yes" : "no") << ",\"" << describe(s.worst_order)
      << "\"\n";
}

std::vector<Endpoints> random_tree(std::size_t edges, RngStream& rng) {
  std::vector<Endpoints> out;
  const std::size_t n = edges + 1;
  if (edges == 1) out.push_back({0, 1});
  if (edges >= 2) {
    std::vector<std::size_t> code(n - 2);
    for (auto& x : code) x = rng.below(n);
    std::vector<std::size_t> degree(n, 1);
    for (auto x : code) ++degree[x];
    std::set<std::size_t> leaves;
    for (std::size_t v = 0; v < n; ++v) {
      if (degree[v] == 1) leaves.insert(v);
    }
    for (auto x : code) {
      const std::size_t leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      out.push_back({static_cast<VertexId>(leaf), static_cast<VertexId>(x)});
      if (--degree[x] == 1) leaves.insert(x);
    }
    const std::size_t a = *leaves.begin();
    const std::size_t b = *std::next(leaves.begin());
    out.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b)});
  }
  std::vector<Endpoints> order;
  for (std::size_t i : shuffled(out.size(), rng)) order.push_back(out[i]);
  return order;
}

RevealSequence random_path_order(std::size_t m, RngStream& rng) {
  std::vector<std::size_t> idx;
  for (std::size_t i : shuffled(m, rng)) idx.push_back(i + 1);
  return adversary::path_order(m, idx, 2);
}

namespace {

Trace load_trace(const VerifyConfig& config) {
  std::ifstream in(config.trace_path);
  if (!in) throw ParameterError("cannot open trace file '" + config.trace_path + "'");
  return read_trace_csv(in, config.k);
}

charging::VerdictReport verify_tree(const VerifyConfig& config, const Trace& trace) {
  const auto witness = opt_tree(trace.graph, trace.k);
  return config.strategy == "ff-tree" ? charging::ff_tree_charge(trace, witness)
                                      : charging::fair_tree_charge(trace, witness);
}

}  // namespace

VerifySummary cmd_verify(const VerifyConfig& config) {
  const auto& st = config.strategy;
  if (st != "ff-tree" && st != "fair-tree" && st != "rp-path") {
    throw ParameterError("unknown strategy '" + st + "'; expected ff-tree, fair-tree or rp-path");
  }
  VerifySummary summary;
  summary.strategy = st;
  const auto record = [&](std::size_t index, std::size_t edges, charging::VerdictReport report) {
    VerifyInstance row;
    row.index = index;
    row.edges = edges;
    row.passed = report.passed();
    row.min_margin = st == "rp-path" ? report.min_margin : report.min_rejected_margin;
    if (!report.violations.empty()) row.first_violation = report.violations.front();
    if (!row.passed && !summary.first_failure) summary.first_failure = report;
    summary.instances.push_back(std::move(row));
    summary.last = std::move(report);
  };

  if (st == "rp-path") {
    if (config.source == "trace") {
      const Trace trace = load_trace(config);
      RevealSequence seq;
      for (const auto& step : trace.steps) seq.edges.push_back(step.ends);
      record(0, seq.edges.size(), charging::rp_path_charge(seq, config.p, config.C));
    } else if (config.source == "random") {
      if (config.max_edges == 0) throw ParameterError("random path orders need max edges >= 1");
      for (std::size_t i = 0; i < config.instances; ++i) {
        RngStream rng = RngStream::derive(config.seed, i);
        const std::size_t m = config.m > 0 ? config.m : 1 + rng.below(config.max_edges);
        const auto seq = random_path_order(m, rng);
        record(i, m, charging::rp_path_charge(seq, config.p, config.C));
      }
    } else if (config.source == "rp-mod3" || config.source == "rp-oddeven") {
      const auto seq = config.source == "rp-mod3" ? adversary::rp_strategy_mod3(config.m)
                                                  : adversary::rp_strategy_oddeven(config.m);
      record(0, seq.edges.size(), charging::rp_path_charge(seq, config.p, config.C));
    } else {
      throw ParameterError("rp-path sources are random, trace, rp-mod3 and rp-oddeven");
    }
    return summary;
  }

  AlgorithmId id = st == "ff-tree" ? AlgorithmId::first_fit() : config.algorithm;
  if (config.source == "trace") {
    const Trace trace = load_trace(config);
    record(0, trace.graph.num_edges(), verify_tree(config, trace));
  } else if (config.source == "random") {
    if (config.max_edges == 0) throw ParameterError("random trees need max edges >= 1");
    const auto prototype = make_algorithm(id);
    for (std::size_t i = 0; i < config.instances; ++i) {
      RngStream rng = RngStream::derive(config.seed, i);
      const auto order = random_tree(1 + rng.below(config.max_edges), rng);
      auto alg = prototype->clone();
      const Trace trace = run(*alg, order, config.k, rng());
      record(i, order.size(), verify_tree(config, trace));
    }
  } else {
    ExperimentConfig ec;
    ec.algorithm = id;
    ec.construction = config.source;
    ec.k = config.k;
    ec.m = config.m;
    ec.N = config.N;
    ec.seed = config.seed;
    ec.validate();
    auto alg = make_algorithm(id);
    const Trace trace = play(ec, *alg, 0);
    record(0, trace.graph.num_edges(), verify_tree(config, trace));
  }
  return summary;
}

void write_verify_csv(std::ostream& out, const VerifySummary& summary) {
  if (summary.instances.size() == 1) {
    charging::write_verdict_csv(out, summary.last);
    return;
  }
  out << "instance,edges,passed,min_margin,violation\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(12);
  for (const auto& row : summary.instances) {
    out << row.index << ',' << row.edges << ',' << (row.passed ? "yes" : "no") << ',';
    write_optional(out, row.min_margin);
    out << ",\"" << row.first_violation << "\"\n";
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace palette::harness
