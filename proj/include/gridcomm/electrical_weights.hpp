#pragma once

#include <Eigen/Dense>

#include "gridcomm/grid.hpp"

namespace gridcomm {

/// Sensitivities below this are treated as "branch unaffected by the transaction".
inline constexpr double kSensitivityEpsilon = 1e-9;

/// DC power transfer distribution factors.
///
/// values(l, i) is the flow on branch l (positive in the from -> to direction)
/// when 1 MW is injected at bus i and withdrawn at the slack bus.
struct PtdfMatrix {
  Eigen::MatrixXd values;  // branches x buses
  int slack_bus = 0;

  /// Sensitivity of branch l to a transaction injecting at `from` and withdrawing at `to`.
  double transaction(int branch, int from, int to) const {
    return values(branch, from) - values(branch, to);
  }
};

/// ECS-weighted adjacency of the grid graph.
struct EcsAdjacency {
  Eigen::MatrixXd weights;  // symmetric, zero diagonal
  Eigen::VectorXd degrees;  // row sums of weights
  double total_weight = 0.0;  // M = sum(weights) / 2
  double alpha = 0.5;
  double beta = 0.5;

  int size() const { return static_cast<int>(weights.rows()); }
};

/// Mean-normalized weight families on branch-connected pairs.
struct NormalizedWeights {
  Eigen::MatrixXd admittance;   // Y_ij / mean(Y)
  Eigen::MatrixXd sensitivity;  // C_ij / mean(C)
};

/// |Y_ij| = 1/|Z_ij| for every branch, zero elsewhere. Symmetric.
Eigen::MatrixXd admittance_weights(const Grid& grid);

/// DC PTDF with respect to the grid's slack bus. Throws SingularMatrixError
/// when the reduced susceptance matrix is not invertible.
PtdfMatrix compute_ptdf(const Grid& grid);

/// C_ij = min over branches l with |PTDF_l^{ij}| > eps of rating(l) / |PTDF_l^{ij}|,
/// evaluated for branch-connected pairs only. Symmetric.
Eigen::MatrixXd line_sensitivity_weights(const Grid& grid, const PtdfMatrix& ptdf);

/// Divides each raw family by its mean over the branch-connected pairs.
NormalizedWeights normalize_weights(const Grid& grid, const Eigen::MatrixXd& admittance,
                                    const Eigen::MatrixXd& sensitivity);

NormalizedWeights normalized_weights(const Grid& grid);

/// A^E_ij = |alpha * Ybar_ij + beta * Cbar_ij| on branch pairs, zero otherwise.
EcsAdjacency build_ecs(const Grid& grid, double alpha = 0.5, double beta = 0.5);

/// Wraps an arbitrary symmetric non-negative weight matrix (zero diagonal) as
/// an adjacency, filling degrees and total weight. Throws std::invalid_argument
/// if the matrix is not square, not symmetric, or has negative entries.
EcsAdjacency make_adjacency(Eigen::MatrixXd weights, double alpha = 0.5, double beta = 0.5);

}  // namespace gridcomm
