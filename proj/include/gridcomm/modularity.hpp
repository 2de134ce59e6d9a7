#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gridcomm/electrical_weights.hpp"

namespace gridcomm {

/// Dense electrical modularity matrix, B_ij = (A_ij - A_i A_j / 2M) / 2M.
struct ModularityMatrix {
  Eigen::MatrixXd coefficients;

  int size() const { return static_cast<int>(coefficients.rows()); }
};

/// Bus-to-community assignment with its modularity score.
struct Partition {
  std::vector<int> assignment;
  int k = 1;
  double score = 0.0;

  /// Number of labels actually used.
  int community_count() const;
};

/// Throws DegenerateGraphError if the adjacency carries no weight.
ModularityMatrix build_modularity_matrix(const EcsAdjacency& adj);

/// Q_e of an assignment: sum over the per-community quadratic forms x_c^T B x_c.
/// Throws std::invalid_argument on length mismatch or negative labels.
double score_partition(const ModularityMatrix& matrix, std::span<const int> assignment);

/// Scores `assignment` and packages it. `k` must exceed every label.
Partition make_partition(const ModularityMatrix& matrix, std::vector<int> assignment, int k);

/// Relabels communities in order of first appearance (0, 1, 2, ...).
std::vector<int> canonical_labels(std::span<const int> assignment);

struct LouvainOptions {
  /// Visit nodes in a seeded random order instead of ascending id.
  std::optional<std::uint64_t> shuffle_seed;
  int max_levels = 64;
};

/// Two-phase greedy Louvain at resolution 1. The number of communities is
/// whatever the greedy search settles on; the returned k equals it.
Partition louvain(const EcsAdjacency& adj, const LouvainOptions& options = {});

}  // namespace gridcomm
