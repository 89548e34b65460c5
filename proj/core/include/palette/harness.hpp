#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "palette/algorithms.hpp"
#include "palette/charging.hpp"
#include "palette/engine.hpp"

namespace palette::harness {

struct ConstructionInfo {
  std::string name;
  std::string parameters;  // flags the construction reads
  bool adaptive = false;
  std::string summary;
};

// Every construction `run` accepts, in a fixed order.
const std::vector<ConstructionInfo>& constructions();

struct ExperimentConfig {
  AlgorithmId algorithm = AlgorithmId::first_fit();
  std::string construction;
  int k = 2;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t N = 0;
  int b = 6;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0: one per hardware thread

  // Throws ParameterError naming the offending parameter.
  void validate() const;
};

struct RatioReport {
  std::string algorithm;
  std::string construction;
  int k = 2;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::size_t edges = 0;            // edges in the (last) instance
  double colored = 0;               // mean over trials
  std::optional<double> colored_stderr;  // randomized runs only
  double opt = 0;                   // mean over trials
  double ratio = 0;                 // colored / opt
  std::optional<double> ratio_stderr;
  std::optional<double> bound;      // upper bound on the ratio this construction forces
  std::optional<double> margin;     // bound - ratio
};

// One instance of a construction for one algorithm; adaptive constructions
// are played against `alg`.
Trace play(const ExperimentConfig& config, OnlineAlgorithm& alg, std::uint64_t trial);

// Runs config.trials independent trials; trial t draws every random choice
// from RngStream::derive(config.seed, t), so the report does not depend on
// the thread count.
RatioReport cmd_run(const ExperimentConfig& config);

// Expected colored count on the hard path distribution for each algorithm;
// colored bound is the distribution's bound for deterministic algorithms.
std::vector<RatioReport> cmd_yao(int b, const std::vector<AlgorithmId>& algorithms, std::size_t trials,
                                 std::uint64_t seed, std::size_t threads = 0);

void write_ratio_csv(std::ostream& out, const std::vector<RatioReport>& reports);

enum class InstanceClass { Path, Tree };

struct ExhaustiveConfig {
  InstanceClass instances = InstanceClass::Path;
  std::size_t max_edges = 7;
  int k = 2;
  // "ff", "nf", or "fair" for every run any fair algorithm can produce.
  std::string algorithm = "ff";
  // Trees only: also run the matching charging verifier from every root.
  bool verify_charging = false;
};

struct ExhaustiveSummary {
  std::size_t instances = 0;  // reveal orders
  std::size_t runs = 0;       // traces checked
  std::size_t charge_checks = 0;
  charging::Rational bound;
  charging::Rational min_ratio{1};
  std::vector<Endpoints> worst_order;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

inline constexpr std::size_t kExhaustiveEdgeLimit = 8;

// Strict ratio bound colored >= bound * OPT over every reveal order of every
// path (or tree up to relabeling) with 1..max_edges edges.
ExhaustiveSummary cmd_exhaustive(const ExhaustiveConfig& config);

void write_exhaustive_csv(std::ostream& out, const ExhaustiveSummary& summary);

struct VerifyConfig {
  std::string strategy;  // ff-tree, fair-tree, rp-path
  // random: random instances; a construction name; or "trace" with trace_path.
  std::string source = "random";
  AlgorithmId algorithm = AlgorithmId::first_fit();
  int k = 2;
  double p = 0.7236067977499790;
  std::optional<double> C;     // rp-path only
  std::size_t m = 0;
  std::size_t N = 0;
  std::size_t instances = 1;   // random source only
  std::size_t max_edges = 14;  // random source only
  std::uint64_t seed = 1;
  std::string trace_path;
};

struct VerifyInstance {
  std::size_t index = 0;
  std::size_t edges = 0;
  bool passed = true;
  std::optional<double> min_margin;
  std::string first_violation;
};

struct VerifySummary {
  std::string strategy;
  std::vector<VerifyInstance> instances;
  charging::VerdictReport last;  // full report of the last instance
  std::optional<charging::VerdictReport> first_failure;

  bool passed() const { return !first_failure.has_value(); }
};

// Runs the charging verifier on each instance. Instances violating the
// strategy's preconditions throw.
VerifySummary cmd_verify(const VerifyConfig& config);

// One instance: its verdict CSV. Several: one row per instance.
void write_verify_csv(std::ostream& out, const VerifySummary& summary);

// Uniformly random labeled tree (via a Pruefer sequence) on edges+1
// vertices, revealed in uniformly random order.
std::vector<Endpoints> random_tree(std::size_t edges, RngStream& rng);

// The path with m edges revealed in uniformly random order.
RevealSequence random_path_order(std::size_t m, RngStream& rng);

}  // namespace palette::harness
