#include "gridcomm/electrical_weights.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gridcomm/errors.hpp"

namespace gridcomm {

namespace {

double mean_over_branches(const Grid& grid, const Eigen::MatrixXd& values) {
  double sum = 0.0;
  for (const auto& br : grid.branches) sum += values(br.from_bus, br.to_bus);
  return sum / static_cast<double>(grid.branch_count());
}

}  // namespace

Eigen::MatrixXd admittance_weights(const Grid& grid) {
  const int n = grid.bus_count();
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
  for (const auto& br : grid.branches) {
    const double magnitude = br.admittance_magnitude();
    y(br.from_bus, br.to_bus) = magnitude;
    y(br.to_bus, br.from_bus) = magnitude;
  }
  return y;
}

PtdfMatrix compute_ptdf(const Grid& grid) {
  const int n = grid.bus_count();
  const int m = grid.branch_count();
  const int slack = grid.slack_bus();
  if (slack < 0) throw std::invalid_argument("compute_ptdf: grid has no slack bus");

  Eigen::MatrixXd bbus = Eigen::MatrixXd::Zero(n, n);
  for (const auto& br : grid.branches) {
    const double b = br.series_susceptance();
    bbus(br.from_bus, br.from_bus) += b;
    bbus(br.to_bus, br.to_bus) += b;
    bbus(br.from_bus, br.to_bus) -= b;
    bbus(br.to_bus, br.from_bus) -= b;
  }

  // Drop the slack row/column; reduced index r maps to bus r (+1 past the slack).
  const auto full_index = [slack](int r) { return r < slack ? r : r + 1; };
  Eigen::MatrixXd reduced(n - 1, n - 1);
  for (int r = 0; r < n - 1; ++r) {
    for (int c = 0; c < n - 1; ++c) reduced(r, c) = bbus(full_index(r), full_index(c));
  }

  Eigen::MatrixXd reactance = Eigen::MatrixXd::Zero(n, n);
  if (n > 1) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(reduced);
    if (!lu.isInvertible() || lu.rcond() < 1e-14) {
      throw SingularMatrixError("reduced susceptance matrix is singular; the grid is numerically "
                                "disconnected");
    }
    const Eigen::MatrixXd inverse = lu.inverse();
    for (int r = 0; r < n - 1; ++r) {
      for (int c = 0; c < n - 1; ++c) reactance(full_index(r), full_index(c)) = inverse(r, c);
    }
  }

  PtdfMatrix ptdf;
  ptdf.slack_bus = slack;
  ptdf.values.resize(m, n);
  for (int l = 0; l < m; ++l) {
    const auto& br = grid.branches[l];
    const double b = br.series_susceptance();
    ptdf.values.row(l) = b * (reactance.row(br.from_bus) - reactance.row(br.to_bus));
  }
  ptdf.values.col(slack).setZero();
  return ptdf;
}

Eigen::MatrixXd line_sensitivity_weights(const Grid& grid, const PtdfMatrix& ptdf) {
  const int n = grid.bus_count();
  const int m = grid.branch_count();
  if (ptdf.values.rows() != m || ptdf.values.cols() != n) {
    throw std::invalid_argument("line_sensitivity_weights: PTDF shape does not match the grid");
  }

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (const auto& pair : grid.branches) {
    const int i = pair.from_bus;
    const int j = pair.to_bus;
    double best = std::numeric_limits<double>::infinity();
    for (int l = 0; l < m; ++l) {
      const double sensitivity = std::abs(ptdf.transaction(l, i, j));
      if (sensitivity > kSensitivityEpsilon) {
        best = std::min(best, grid.branches[l].rating_mw / sensitivity);
      }
    }
    if (!std::isfinite(best)) {
      throw DegenerateGraphError("no branch responds to a transaction between buses " +
                                 std::to_string(i) + " and " + std::to_string(j));
    }
    c(i, j) = best;
    c(j, i) = best;
  }
  return c;
}

NormalizedWeights normalize_weights(const Grid& grid, const Eigen::MatrixXd& admittance,
                                    const Eigen::MatrixXd& sensitivity) {
  if (grid.branch_count() == 0) throw DegenerateGraphError("grid has no branches");
  return NormalizedWeights{admittance / mean_over_branches(grid, admittance),
                           sensitivity / mean_over_branches(grid, sensitivity)};
}

NormalizedWeights normalized_weights(const Grid& grid) {
  return normalize_weights(grid, admittance_weights(grid),
                           line_sensitivity_weights(grid, compute_ptdf(grid)));
}

EcsAdjacency build_ecs(const Grid& grid, double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(alpha + beta > 0.0)) {
    throw std::invalid_argument("build_ecs: alpha and beta must be non-negative with a positive sum");
  }
  const auto normalized = normalized_weights(grid);
  const int n = grid.bus_count();
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(n, n);
  for (const auto& br : grid.branches) {
    const int i = br.from_bus;
    const int j = br.to_bus;
    const double w =
        std::abs(alpha * normalized.admittance(i, j) + beta * normalized.sensitivity(i, j));
    weights(i, j) = w;
    weights(j, i) = w;
  }
  return make_adjacency(std::move(weights), alpha, beta);
}

EcsAdjacency make_adjacency(Eigen::MatrixXd weights, double alpha, double beta) {
  if (weights.rows() != weights.cols()) {
    throw std::invalid_argument("adjacency matrix must be square");
  }
  const Eigen::Index n = weights.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights(i, i) != 0.0) throw std::invalid_argument("adjacency diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (weights(i, j) < 0.0 || !std::isfinite(weights(i, j))) {
        throw std::invalid_argument("adjacency entries must be finite and non-negative");
      }
      if (weights(i, j) != weights(j, i)) {
        throw std::invalid_argument("adjacency matrix must be symmetric");
      }
    }
  }
  EcsAdjacency adj;
  adj.degrees = weights.rowwise().sum();
  adj.total_weight = 0.5 * adj.degrees.sum();
  adj.weights = std::move(weights);
  adj.alpha = alpha;
  adj.beta = beta;
  return adj;
}

}  // namespace gridcomm
