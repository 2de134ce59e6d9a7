#include <chrono>
#include <stdexcept>

#include "gridcomm/solvers.hpp"

namespace gridcomm {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::exhaustive:
      return "exhaustive";
    case SolverKind::qubo_anneal:
      return "qubo-anneal";
    case SolverKind::discrete_anneal:
      return "discrete-anneal";
    case SolverKind::louvain:
      return "louvain";
  }
  return "unknown";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  for (auto kind : {SolverKind::exhaustive, SolverKind::qubo_anneal, SolverKind::discrete_anneal,
                    SolverKind::louvain}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

SolveResult solve(const ModularityMatrix& matrix, const EcsAdjacency& adj, int k, SolverKind kind,
                  const SolverOptions& options) {
  if (k < 1) throw std::invalid_argument("solve: k must be at least 1");
  SolveResult result;
  switch (kind) {
    case SolverKind::exhaustive:
      result.partition = exhaustive(matrix, k, options.exhaustive_cap);
      result.energy = -result.partition.score;
      break;
    case SolverKind::louvain:
      result.partition = louvain(adj, options.louvain);
      result.energy = -result.partition.score;
      break;
    case SolverKind::discrete_anneal: {
      const auto model = build_discrete(matrix, k);
      const auto samples = anneal_discrete(model, options.anneal);
      const auto& best = samples.best();
      result.partition = make_partition(matrix, best.state, k);
      result.energy = best.energy;
      break;
    }
    case SolverKind::qubo_anneal: {
      const auto model = build_qubo(matrix, k, options.lambda);
      result.lambda = model.penalty_lambda;
      const auto samples = anneal_qubo(model, options.anneal);
      bool have = false;
      for (const auto& sample : samples.samples) {
        const std::vector<std::uint8_t> bits(sample.state.begin(), sample.state.end());
        auto decoded = decode(model, bits);
        Partition candidate = std::holds_alternative<Partition>(decoded)
                                  ? make_partition(matrix, std::get<Partition>(decoded).assignment, k)
                                  : repair(model, bits, matrix);
        if (!have || candidate.score > result.partition.score) {
          result.partition = std::move(candidate);
          result.energy = sample.energy;
          have = true;
        }
      }
      break;
    }
  }
  result.partition.assignment = canonical_labels(result.partition.assignment);
  return result;
}

SweepResult sweep_k(const ModularityMatrix& matrix, const EcsAdjacency& adj, KRange range,
                    SolverKind kind, const SolverOptions& options) {
  if (range.first < 1 || range.last < range.first) {
    throw std::invalid_argument("sweep_k: k range must be non-empty with k >= 1");
  }
  SweepResult sweep;
  for (int k = range.first; k <= range.last; ++k) {
    const auto start = std::chrono::steady_clock::now();
    auto result = solve(matrix, adj, k, kind, options);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    sweep.records.push_back(
        SweepRecord{k, std::move(result.partition), result.energy, elapsed.count(),
                    std::string(to_string(kind))});
  }
  return sweep;
}

SweepResult sweep_k(const Grid& grid, KRange range, SolverKind kind, const SolverOptions& options,
                    double alpha, double beta) {
  const auto adj = build_ecs(grid, alpha, beta);
  const auto matrix = build_modularity_matrix(adj);
  return sweep_k(matrix, adj, range, kind, options);
}

}  // namespace gridcomm
