#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "gridcomm/errors.hpp"
#include "gridcomm/modularity.hpp"

namespace gridcomm {

namespace {

// One level of local moving on a (possibly aggregated) graph. Self-loop
// weights sit on the diagonal and count towards node strength.
// Returns true if any node changed community.
bool local_moving(const Eigen::MatrixXd& graph, double two_m, const std::vector<int>& order,
                  std::vector<int>& community) {
  const int n = static_cast<int>(graph.rows());
  const Eigen::VectorXd strength = graph.rowwise().sum();
  std::vector<double> community_total(static_cast<std::size_t>(n), 0.0);
  for (int v = 0; v < n; ++v) community_total[community[v]] += strength(v);

  std::vector<double> link_to(static_cast<std::size_t>(n), 0.0);
  std::vector<int> touched;
  bool any_move = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int v : order) {
      const int current = community[v];
      community_total[current] -= strength(v);

      touched.clear();
      for (int u = 0; u < n; ++u) {
        if (u == v || graph(v, u) == 0.0) continue;
        const int c = community[u];
        if (link_to[c] == 0.0) touched.push_back(c);
        link_to[c] += graph(v, u);
      }

      // Gain of inserting v (now isolated) into c, up to a positive factor.
      const auto gain = [&](int c) {
        return link_to[c] - community_total[c] * strength(v) / two_m;
      };
      int best = current;
      double best_gain = gain(current);
      std::sort(touched.begin(), touched.end());
      for (int c : touched) {
        // Strictly better only: ties keep v where it was.
        if (c != current && gain(c) > best_gain) {
          best = c;
          best_gain = gain(c);
        }
      }
      for (int c : touched) link_to[c] = 0.0;
      link_to[current] = 0.0;

      community_total[best] += strength(v);
      if (best != current) {
        community[v] = best;
        improved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

}  // namespace

Partition louvain(const EcsAdjacency& adj, const LouvainOptions& options) {
  const auto matrix = build_modularity_matrix(adj);
  const int n = adj.size();
  const double two_m = 2.0 * adj.total_weight;

  std::mt19937_64 rng(options.shuffle_seed.value_or(0));
  Eigen::MatrixXd graph = adj.weights;
  // membership[i] = node of the current aggregated graph that bus i belongs to.
  std::vector<int> membership(static_cast<std::size_t>(n));
  std::iota(membership.begin(), membership.end(), 0);

  for (int level = 0; level < options.max_levels; ++level) {
    const int size = static_cast<int>(graph.rows());
    std::vector<int> community(static_cast<std::size_t>(size));
    std::iota(community.begin(), community.end(), 0);
    std::vector<int> order = community;
    if (options.shuffle_seed) std::shuffle(order.begin(), order.end(), rng);

    if (!local_moving(graph, two_m, order, community)) break;

    const auto labels = canonical_labels(community);
    const int groups = *std::max_element(labels.begin(), labels.end()) + 1;
    Eigen::MatrixXd aggregated = Eigen::MatrixXd::Zero(groups, groups);
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) aggregated(labels[a], labels[b]) += graph(a, b);
    }
    for (auto& node : membership) node = labels[node];
    graph = std::move(aggregated);
    if (groups == size) break;
  }

  auto assignment = canonical_labels(membership);
  const int k = *std::max_element(assignment.begin(), assignment.end()) + 1;
  return make_partition(matrix, std::move(assignment), k);
}

}  // namespace gridcomm
