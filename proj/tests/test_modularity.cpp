#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "gridcomm/errors.hpp"
#include "gridcomm/modularity.hpp"
#include "support/oracles.hpp"

using namespace gridcomm;
using namespace gridcomm::testing;

namespace {

std::vector<int> random_labels(std::mt19937_64& rng, int n, int k) {
  std::uniform_int_distribution<int> label(0, k - 1);
  std::vector<int> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = label(rng);
  return out;
}

}  // namespace

TEST_CASE("two-node modularity matrix") {
  const double w = 2.5;
  Eigen::MatrixXd a(2, 2);
  a << 0, w, w, 0;
  const auto m = build_modularity_matrix(make_adjacency(a));
  // (1/2w) [[-w/2, w/2], [w/2, -w/2]]
  CHECK(m.coefficients(0, 0) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(m.coefficients(0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m.coefficients(1, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m.coefficients(1, 1) == doctest::Approx(-0.25).epsilon(1e-15));

  CHECK(score_partition(m, std::vector<int>{0, 0}) == doctest::Approx(0.0));
  CHECK(score_partition(m, std::vector<int>{0, 1}) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("rows of the modularity matrix vanish") {
  std::mt19937_64 rng(3);
  std::vector<ModularityMatrix> matrices;
  for (const char* name : {"ieee14.json", "ieee33.json", "ieee118.json"}) {
    matrices.push_back(build_modularity_matrix(build_ecs(load_grid(data_path(name)))));
  }
  for (int t = 0; t < 20; ++t) {
    matrices.push_back(build_modularity_matrix(make_adjacency(random_connected_weights(rng, 2 + t))));
  }
  for (const auto& m : matrices) {
    const auto& b = m.coefficients;
    CHECK((b - b.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(b.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(std::abs(b.sum()) <= 1e-12);
    CHECK(std::abs(score_partition(m, std::vector<int>(m.size(), 0))) <= 1e-12);
  }
}

TEST_CASE("quadratic-form score agrees with the direct delta sum") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 29;
    const auto a = random_connected_weights(rng, n);
    const auto m = build_modularity_matrix(make_adjacency(a));
    for (int k : {1, 2, 3, 5}) {
      const auto labels = random_labels(rng, n, k);
      CHECK(std::abs(score_partition(m, labels) - direct_modularity(a, labels)) <= 1e-12);
    }
  }
}

TEST_CASE("relabelling communities does not change the score") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const int n = 3 + t;
    const auto m = build_modularity_matrix(make_adjacency(random_connected_weights(rng, n)));
    const auto labels = random_labels(rng, n, 4);
    std::vector<int> perm = {0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> relabelled;
    for (int v : labels) relabelled.push_back(perm[v] + 7);
    CHECK(score_partition(m, labels) == score_partition(m, relabelled));
    CHECK(score_partition(m, labels) == score_partition(m, canonical_labels(labels)));
  }
}

TEST_CASE("canonical labels follow first appearance") {
  CHECK(canonical_labels(std::vector<int>{4, 4, 1, 7, 1}) == std::vector<int>{0, 0, 1, 2, 1});
}

TEST_CASE("make_partition and error paths") {
  Eigen::MatrixXd a(3, 3);
  a << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  const auto m = build_modularity_matrix(make_adjacency(a));

  const auto p = make_partition(m, {0, 0, 1}, 2);
  CHECK(p.k == 2);
  CHECK(p.community_count() == 2);
  CHECK(p.score == score_partition(m, p.assignment));

  CHECK_THROWS_AS(make_partition(m, {0, 0, 2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(score_partition(m, std::vector<int>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(score_partition(m, std::vector<int>{0, -1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_modularity_matrix(make_adjacency(Eigen::MatrixXd::Zero(3, 3))),
                  DegenerateGraphError);
}
