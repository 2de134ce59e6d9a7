#include "gridcomm/modularity.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "gridcomm/errors.hpp"

namespace gridcomm {

int Partition::community_count() const {
  std::vector<int> labels = assignment;
  std::sort(labels.begin(), labels.end());
  return static_cast<int>(std::unique(labels.begin(), labels.end()) - labels.begin());
}

ModularityMatrix build_modularity_matrix(const EcsAdjacency& adj) {
  const double two_m = 2.0 * adj.total_weight;
  if (!(two_m > 0.0)) throw DegenerateGraphError("adjacency has zero total weight");
  ModularityMatrix matrix;
  matrix.coefficients =
      (adj.weights - adj.degrees * adj.degrees.transpose() / two_m) / two_m;
  return matrix;
}

double score_partition(const ModularityMatrix& matrix, std::span<const int> assignment) {
  const int n = matrix.size();
  if (static_cast<int>(assignment.size()) != n) {
    throw std::invalid_argument("score_partition: assignment length " +
                                std::to_string(assignment.size()) + " does not match " +
                                std::to_string(n) + " buses");
  }
  for (int label : assignment) {
    if (label < 0) throw std::invalid_argument("score_partition: negative community label");
  }
  // sum_c x_c^T B x_c, accumulated row by row so the result does not depend
  // on how communities are labelled.
  const auto& b = matrix.coefficients;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (assignment[j] == assignment[i]) row += b(i, j);
    }
    total += row;
  }
  return total;
}

Partition make_partition(const ModularityMatrix& matrix, std::vector<int> assignment, int k) {
  for (int label : assignment) {
    if (label < 0 || label >= k) {
      throw std::invalid_argument("make_partition: community label outside 0..k-1");
    }
  }
  Partition p;
  p.score = score_partition(matrix, assignment);
  p.assignment = std::move(assignment);
  p.k = k;
  return p;
}

std::vector<int> canonical_labels(std::span<const int> assignment) {
  std::unordered_map<int, int> relabel;
  std::vector<int> out;
  out.reserve(assignment.size());
  for (int label : assignment) {
    const auto [it, inserted] = relabel.emplace(label, static_cast<int>(relabel.size()));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace gridcomm
