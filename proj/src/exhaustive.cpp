#include <limits>
#include <stdexcept>
#include <string>

#include "gridcomm/errors.hpp"
#include "gridcomm/solvers.hpp"

namespace gridcomm {

bool within_exhaustive_cap(int n, int k, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > cap / static_cast<std::uint64_t>(k)) return false;
    total *= static_cast<std::uint64_t>(k);
  }
  return total <= cap;
}

namespace {

// Depth-first walk over restricted-growth strings a with a[0] = 0 and
// a[i] <= max(a[0..i-1]) + 1 < k; each string is one set partition.
class PartitionSearch {
 public:
  PartitionSearch(const Eigen::MatrixXd& b, int k)
      : b_(b), n_(static_cast<int>(b.rows())), k_(k),
        field_(Eigen::MatrixXd::Zero(n_, k)),
        current_(static_cast<std::size_t>(n_), 0) {}

  void run() {
    if (n_ == 0) {
      best_score_ = 0.0;
      return;
    }
    place(0, 0, 0.0);
  }

  const std::vector<int>& best() const { return best_; }
  double best_score() const { return best_score_; }

 private:
  // `used` = number of blocks opened by buses before `bus`.
  void place(int bus, int used, double score) {
    if (bus == n_) {
      if (score > best_score_) {
        best_score_ = score;
        best_ = current_;
      }
      return;
    }
    const int limit = std::min(used + 1, k_);
    for (int c = 0; c < limit; ++c) {
      // field_(bus, c) already holds sum over earlier buses j in c of B(bus, j).
      const double gain = b_(bus, bus) + 2.0 * field_(bus, c);
      current_[bus] = c;
      field_.col(c) += b_.col(bus);
      place(bus + 1, std::max(used, c + 1), score + gain);
      field_.col(c) -= b_.col(bus);
    }
  }

  const Eigen::MatrixXd& b_;
  int n_;
  int k_;
  Eigen::MatrixXd field_;
  std::vector<int> current_;
  std::vector<int> best_;
  double best_score_ = -std::numeric_limits<double>::infinity();
};

}  // namespace

Partition exhaustive(const ModularityMatrix& matrix, int k, std::uint64_t cap) {
  if (k < 1) throw std::invalid_argument("exhaustive: k must be at least 1");
  const int n = matrix.size();
  if (!within_exhaustive_cap(n, k, cap)) {
    throw InstanceTooLargeError("exhaustive: " + std::to_string(k) + "^" + std::to_string(n) +
                                " assignments exceed the enumeration cap of " +
                                std::to_string(cap));
  }
  PartitionSearch search(matrix.coefficients, k);
  search.run();
  return make_partition(matrix, search.best(), k);
}

}  // namespace gridcomm
