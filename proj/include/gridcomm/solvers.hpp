#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridcomm/electrical_weights.hpp"
#include "gridcomm/grid.hpp"
#include "gridcomm/modularity.hpp"
#include "gridcomm/qubo.hpp"

namespace gridcomm {

/// Simulated-annealing controls. Unset beta bounds are derived from the
/// model's single-move energy deltas.
struct AnnealParams {
  int num_reads = 1000;
  int sweeps_per_read = 1000;
  std::optional<double> beta_min;
  std::optional<double> beta_max;
  std::uint64_t seed = 0;
  /// Worker threads for independent reads; 0 means hardware concurrency.
  /// Results do not depend on this value.
  int threads = 0;
};

struct Sample {
  std::vector<int> state;  // bits (0/1) for QUBO samples, labels for discrete ones
  double energy = 0.0;
  int occurrences = 1;
};

/// Distinct samples, ascending by energy (ties by first read that produced them).
struct SampleSet {
  std::vector<Sample> samples;

  const Sample& best() const { return samples.front(); }
  bool empty() const { return samples.empty(); }
};

struct BetaRange {
  double beta_min = 0.0;
  double beta_max = 0.0;
};

/// Schedule endpoints: hot enough to accept the largest uphill move half the
/// time, cold enough to accept the smallest meaningful one 1% of the time.
BetaRange default_beta_range(const QuboModel& model);
BetaRange default_beta_range(const DiscreteModel& model);

/// Single-bit-flip Metropolis annealing over the QUBO. Read r is seeded with seed ^ r.
SampleSet anneal_qubo(const QuboModel& model, const AnnealParams& params = {});

/// Metropolis over single-bus community reassignments; every sample is feasible.
SampleSet anneal_discrete(const DiscreteModel& model, const AnnealParams& params = {});

inline constexpr std::uint64_t kDefaultExhaustiveCap = 10'000'000;

/// Global maximum-modularity partition with at most k communities, enumerated
/// over restricted-growth strings. Throws InstanceTooLargeError if k^n > cap.
Partition exhaustive(const ModularityMatrix& matrix, int k,
                     std::uint64_t cap = kDefaultExhaustiveCap);

/// True when k^n does not exceed cap.
bool within_exhaustive_cap(int n, int k, std::uint64_t cap);

enum class SolverKind { exhaustive, qubo_anneal, discrete_anneal, louvain };

std::string_view to_string(SolverKind kind);
/// Accepts the CLI spellings: exhaustive, qubo-anneal, discrete-anneal, louvain.
std::optional<SolverKind> parse_solver(std::string_view name);

struct SolverOptions {
  AnnealParams anneal;
  std::optional<double> lambda;  // QUBO penalty; nullopt = auto
  std::uint64_t exhaustive_cap = kDefaultExhaustiveCap;
  LouvainOptions louvain;
};

struct SolveResult {
  Partition partition;
  double energy = 0.0;  // model energy of the reported solution (-Q_e when feasible)
  double lambda = 0.0;  // penalty actually used (qubo-anneal only)
};

/// Runs one solver at one k. For qubo-anneal the best partition is the
/// highest-scoring decoded (or repaired) sample.
SolveResult solve(const ModularityMatrix& matrix, const EcsAdjacency& adj, int k, SolverKind kind,
                  const SolverOptions& options = {});

struct SweepRecord {
  int k = 1;
  Partition best;
  double best_energy = 0.0;
  double seconds = 0.0;
  std::string solver;
};

struct SweepResult {
  std::vector<SweepRecord> records;
};

struct KRange {
  int first = 1;
  int last = 1;
};

/// Solves for every k in the inclusive range. Throws std::invalid_argument on
/// an empty range or k < 1.
SweepResult sweep_k(const Grid& grid, KRange range, SolverKind kind,
                    const SolverOptions& options = {}, double alpha = 0.5, double beta = 0.5);

SweepResult sweep_k(const ModularityMatrix& matrix, const EcsAdjacency& adj, KRange range,
                    SolverKind kind, const SolverOptions& options = {});

}  // namespace gridcomm
