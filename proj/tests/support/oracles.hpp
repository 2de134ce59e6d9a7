#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the code path it is used to check.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gridcomm/grid.hpp"

namespace gridcomm::testing {

inline std::string data_path(const std::string& name) {
  return std::string(GRIDCOMM_DATA_DIR) + "/" + name;
}

/// Branch flows for 1 MW injected at `bus` and withdrawn at the slack, from a
/// direct solve of B theta = p with the slack equation replaced by theta_s = 0.
inline Eigen::VectorXd dc_flows_for_injection(const Grid& grid, int bus) {
  const int n = grid.bus_count();
  const int slack = grid.slack_bus();
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(n, n);
  for (const auto& br : grid.branches) {
    const double b = br.reactance_pu / (br.resistance_pu * br.resistance_pu +
                                        br.reactance_pu * br.reactance_pu);
    system(br.from_bus, br.from_bus) += b;
    system(br.to_bus, br.to_bus) += b;
    system(br.from_bus, br.to_bus) -= b;
    system(br.to_bus, br.from_bus) -= b;
  }
  Eigen::VectorXd injection = Eigen::VectorXd::Zero(n);
  if (bus != slack) injection(bus) = 1.0;
  system.row(slack).setZero();
  system(slack, slack) = 1.0;
  injection(slack) = 0.0;
  const Eigen::VectorXd theta = system.colPivHouseholderQr().solve(injection);

  Eigen::VectorXd flows(grid.branch_count());
  for (int l = 0; l < grid.branch_count(); ++l) {
    const auto& br = grid.branches[l];
    const double b = br.reactance_pu / (br.resistance_pu * br.resistance_pu +
                                        br.reactance_pu * br.reactance_pu);
    flows(l) = b * (theta(br.from_bus) - theta(br.to_bus));
  }
  return flows;
}

/// Modularity straight from the adjacency: (1/2M) sum_ij [A_ij - k_i k_j / 2M] delta(c_i, c_j).
inline double direct_modularity(const Eigen::MatrixXd& adjacency, const std::vector<int>& labels) {
  const auto n = adjacency.rows();
  std::vector<double> degree(static_cast<std::size_t>(n), 0.0);
  double two_m = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      degree[i] += adjacency(i, j);
      two_m += adjacency(i, j);
    }
  }
  double q = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (labels[i] != labels[j]) continue;
      q += adjacency(i, j) - degree[i] * degree[j] / two_m;
    }
  }
  return q / two_m;
}

struct BruteForceOptimum {
  double score = -std::numeric_limits<double>::infinity();
  std::vector<int> labels;
};

/// Tries all k^n labelings with the direct modularity formula.
inline BruteForceOptimum brute_force_optimum(const Eigen::MatrixXd& adjacency, int k) {
  const int n = static_cast<int>(adjacency.rows());
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  BruteForceOptimum best;
  while (true) {
    const double q = direct_modularity(adjacency, labels);
    if (q > best.score) {
      best.score = q;
      best.labels = labels;
    }
    int pos = 0;
    while (pos < n && ++labels[pos] == k) labels[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

/// Random connected weighted graph: a random spanning tree plus extra edges.
inline Eigen::MatrixXd random_connected_weights(std::mt19937_64& rng, int n,
                                                double extra_edge_probability = 0.3) {
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    const int j = parent(rng);
    w(i, j) = w(j, i) = weight(rng);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (w(i, j) == 0.0 && coin(rng) < extra_edge_probability) w(i, j) = w(j, i) = weight(rng);
    }
  }
  return w;
}

/// Random connected grid with random impedances and ratings.
inline Grid random_grid(std::mt19937_64& rng, int n, double extra_edge_probability = 0.3) {
  const Eigen::MatrixXd pattern = random_connected_weights(rng, n, extra_edge_probability);
  std::uniform_real_distribution<double> r(0.0, 0.1);
  std::uniform_real_distribution<double> x(0.02, 0.4);
  std::uniform_real_distribution<double> rating(50.0, 500.0);
  std::uniform_int_distribution<int> slack(0, n - 1);
  const int slack_bus = slack(rng);
  std::vector<Bus> buses;
  for (int i = 0; i < n; ++i) buses.push_back({i, "b" + std::to_string(i), i == slack_bus});
  std::vector<Branch> branches;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (pattern(i, j) == 0.0) continue;
      Branch br;
      br.from_bus = (i + j) % 2 == 0 ? i : j;  // mix orientations
      br.to_bus = br.from_bus == i ? j : i;
      br.resistance_pu = r(rng);
      br.reactance_pu = x(rng);
      br.rating_mw = rating(rng);
      branches.push_back(br);
    }
  }
  return make_grid(std::move(buses), std::move(branches), 100.0);
}

inline Branch make_branch(int from, int to, double r, double x, double rating,
                          BranchKind kind = BranchKind::line) {
  Branch br;
  br.from_bus = from;
  br.to_bus = to;
  br.resistance_pu = r;
  br.reactance_pu = x;
  br.rating_mw = rating;
  br.kind = kind;
  return br;
}

/// Equal-reactance triangle, slack at bus 0.
inline Grid triangle_grid(double rating = 90.0) {
  return make_grid({{0, "a", true}, {1, "b", false}, {2, "c", false}},
                   {make_branch(0, 1, 0.0, 0.1, rating), make_branch(1, 2, 0.0, 0.1, rating),
                    make_branch(0, 2, 0.0, 0.1, rating)},
                   100.0);
}

inline Grid two_bus_grid(double r = 0.1, double x = 0.2, double rating = 100.0) {
  return make_grid({{0, "A", true}, {1, "B", false}}, {make_branch(0, 1, r, x, rating)}, 100.0);
}

}  // namespace gridcomm::testing
