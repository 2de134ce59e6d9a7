#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gridcomm/modularity.hpp"

namespace gridcomm {

/// Flat layout of the one-hot variables: (bus, community) <-> bus * k + community.
class VariableIndex {
 public:
  VariableIndex(int buses, int communities);

  int buses() const { return buses_; }
  int communities() const { return communities_; }
  int size() const { return buses_ * communities_; }

  int flat(int bus, int community) const { return bus * communities_ + community; }
  int bus_of(int flat_index) const { return flat_index / communities_; }
  int community_of(int flat_index) const { return flat_index % communities_; }

 private:
  int buses_;
  int communities_;
};

/// Upper-triangular QUBO. Key (p, q) with p <= q; diagonal keys are linear terms.
/// Energy of x is sum Q_pq x_p x_q + offset.
struct QuboModel {
  int n = 0;
  int k = 1;
  double penalty_lambda = 1.0;
  double offset = 0.0;
  std::map<std::pair<int, int>, double> coefficients;

  VariableIndex index() const { return {n, k}; }
  int variable_count() const { return n * k; }
};

/// Default penalty: 1.01 * max_i (|B_ii| + 2 sum_{j != i} |B_ij|).
///
/// Any single bit flip moves the objective by at most that row bound, so above
/// it every infeasible vector has a strictly improving flip (add a bit to an
/// empty bus, drop one from a doubly assigned bus) and the global minimum is
/// feasible. It is roughly n/2 times smaller than the conservative bound,
/// which keeps the one-hot barrier low enough for single-flip annealing.
double auto_penalty(const ModularityMatrix& matrix);

/// 1 + sum_ij |B_ij|: exceeds the total objective swing of any assignment.
double conservative_penalty(const ModularityMatrix& matrix);

/// Objective (-B_ij on every same-community pair) plus lambda (sum_c x_ic - 1)^2
/// per bus. `lambda` = nullopt selects auto_penalty. Throws std::invalid_argument
/// for k < 1 or lambda <= 0.
QuboModel build_qubo(const ModularityMatrix& matrix, int k, std::optional<double> lambda = {});

/// x^T Q x + offset. Throws std::invalid_argument on length mismatch.
double energy(const QuboModel& model, std::span<const std::uint8_t> x);

struct ConstraintViolation {
  int bus = 0;
  int bits_set = 0;
};

struct InfeasibilityReport {
  std::vector<ConstraintViolation> violations;
};

using DecodeResult = std::variant<Partition, InfeasibilityReport>;

/// One-hot bit vector -> partition (score = -energy), otherwise the offending buses.
DecodeResult decode(const QuboModel& model, std::span<const std::uint8_t> x);

/// Encodes a community assignment as a one-hot bit vector.
std::vector<std::uint8_t> encode(const VariableIndex& index, std::span<const int> assignment);

/// Forces feasibility: each violating bus (ascending id) joins the community
/// with the largest marginal modularity gain against already-placed buses,
/// ties going to the lowest label. Feasible buses keep their community.
Partition repair(const QuboModel& model, std::span<const std::uint8_t> x,
                 const ModularityMatrix& matrix);

/// Categorical formulation: one k-valued variable per bus, feasible by
/// construction. Energy of an assignment is -(modularity).
struct DiscreteModel {
  int n = 0;
  int k = 1;
  Eigen::MatrixXd interaction;  // -B_ij, charged whenever a_i == a_j
};

/// Throws std::invalid_argument for k < 1.
DiscreteModel build_discrete(const ModularityMatrix& matrix, int k);

double energy(const DiscreteModel& model, std::span<const int> assignment);

/// Writes the model in the plain-text exchange format:
///   # gridcomm qubo
///   n <n> k <k> lambda <lambda> offset <offset> terms <count>
///   <p> <q> <value>        (one line per stored coefficient, p <= q)
void write_qubo(std::ostream& out, const QuboModel& model);

/// Inverse of write_qubo. Throws ParseError on malformed input.
QuboModel read_qubo(std::istream& in);

}  // namespace gridcomm
