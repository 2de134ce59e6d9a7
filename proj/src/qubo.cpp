#include "gridcomm/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gridcomm/errors.hpp"

namespace gridcomm {

VariableIndex::VariableIndex(int buses, int communities)
    : buses_(buses), communities_(communities) {
  if (buses < 0) throw std::invalid_argument("VariableIndex: negative bus count");
  if (communities < 1) throw std::invalid_argument("VariableIndex: k must be at least 1");
}

double auto_penalty(const ModularityMatrix& matrix) {
  const auto& b = matrix.coefficients;
  double bound = 0.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    const double row = 2.0 * b.row(i).cwiseAbs().sum() - std::abs(b(i, i));
    bound = std::max(bound, row);
  }
  return bound > 0.0 ? 1.01 * bound : 1.0;
}

double conservative_penalty(const ModularityMatrix& matrix) {
  return 1.0 + matrix.coefficients.cwiseAbs().sum();
}

QuboModel build_qubo(const ModularityMatrix& matrix, int k, std::optional<double> lambda) {
  if (k < 1) throw std::invalid_argument("build_qubo: k must be at least 1");
  const double penalty = lambda.value_or(auto_penalty(matrix));
  if (!(penalty > 0.0) || !std::isfinite(penalty)) {
    throw std::invalid_argument("build_qubo: lambda must be positive");
  }

  QuboModel model;
  model.n = matrix.size();
  model.k = k;
  model.penalty_lambda = penalty;
  const VariableIndex index = model.index();
  const auto& b = matrix.coefficients;
  auto& q = model.coefficients;

  for (int c = 0; c < k; ++c) {
    for (int i = 0; i < model.n; ++i) {
      q[{index.flat(i, c), index.flat(i, c)}] += -b(i, i);
      for (int j = i + 1; j < model.n; ++j) {
        // (i,j) and (j,i) folded into the upper triangle.
        q[{index.flat(i, c), index.flat(j, c)}] += -(b(i, j) + b(j, i));
      }
    }
  }

  // lambda (sum_c x_ic - 1)^2 = lambda (-sum_c x_ic + 2 sum_{c<c'} x_ic x_ic' + 1), using x^2 = x.
  for (int i = 0; i < model.n; ++i) {
    for (int c = 0; c < k; ++c) {
      q[{index.flat(i, c), index.flat(i, c)}] += -penalty;
      for (int d = c + 1; d < k; ++d) q[{index.flat(i, c), index.flat(i, d)}] += 2.0 * penalty;
    }
  }
  model.offset = penalty * model.n;

  std::erase_if(q, [](const auto& entry) { return entry.second == 0.0; });
  return model;
}

double energy(const QuboModel& model, std::span<const std::uint8_t> x) {
  if (static_cast<int>(x.size()) != model.variable_count()) {
    throw std::invalid_argument("energy: bit vector length " + std::to_string(x.size()) +
                                " does not match " + std::to_string(model.variable_count()) +
                                " variables");
  }
  double total = model.offset;
  for (const auto& [key, value] : model.coefficients) {
    if (x[key.first] && x[key.second]) total += value;
  }
  return total;
}

std::vector<std::uint8_t> encode(const VariableIndex& index, std::span<const int> assignment) {
  if (static_cast<int>(assignment.size()) != index.buses()) {
    throw std::invalid_argument("encode: assignment length does not match bus count");
  }
  std::vector<std::uint8_t> x(static_cast<std::size_t>(index.size()), 0);
  for (int i = 0; i < index.buses(); ++i) {
    if (assignment[i] < 0 || assignment[i] >= index.communities()) {
      throw std::invalid_argument("encode: community label outside 0..k-1");
    }
    x[index.flat(i, assignment[i])] = 1;
  }
  return x;
}

namespace {

// Per bus: the community of its single set bit, or -1 with the bit count.
struct BusState {
  int community = -1;
  int bits = 0;
};

std::vector<BusState> bus_states(const QuboModel& model, std::span<const std::uint8_t> x) {
  if (static_cast<int>(x.size()) != model.variable_count()) {
    throw std::invalid_argument("bit vector length does not match the model");
  }
  const VariableIndex index = model.index();
  std::vector<BusState> states(static_cast<std::size_t>(model.n));
  for (int i = 0; i < model.n; ++i) {
    for (int c = 0; c < model.k; ++c) {
      if (x[index.flat(i, c)]) {
        states[i].bits += 1;
        states[i].community = c;
      }
    }
    if (states[i].bits != 1) states[i].community = -1;
  }
  return states;
}

}  // namespace

DecodeResult decode(const QuboModel& model, std::span<const std::uint8_t> x) {
  const auto states = bus_states(model, x);
  InfeasibilityReport report;
  std::vector<int> assignment;
  assignment.reserve(states.size());
  for (int i = 0; i < model.n; ++i) {
    if (states[i].bits != 1) report.violations.push_back({i, states[i].bits});
    assignment.push_back(states[i].community);
  }
  if (!report.violations.empty()) return report;
  return Partition{std::move(assignment), model.k, -energy(model, x)};
}

Partition repair(const QuboModel& model, std::span<const std::uint8_t> x,
                 const ModularityMatrix& matrix) {
  if (matrix.size() != model.n) {
    throw std::invalid_argument("repair: matrix size does not match the model");
  }
  const auto states = bus_states(model, x);
  const auto& b = matrix.coefficients;
  std::vector<int> assignment(static_cast<std::size_t>(model.n), -1);
  for (int i = 0; i < model.n; ++i) assignment[i] = states[i].community;

  for (int i = 0; i < model.n; ++i) {
    if (assignment[i] >= 0) continue;
    int best = 0;
    double best_gain = 0.0;
    for (int c = 0; c < model.k; ++c) {
      double gain = b(i, i);
      for (int j = 0; j < model.n; ++j) {
        if (j != i && assignment[j] == c) gain += b(i, j) + b(j, i);
      }
      if (c == 0 || gain > best_gain) {
        best = c;
        best_gain = gain;
      }
    }
    assignment[i] = best;
  }
  return make_partition(matrix, std::move(assignment), model.k);
}

DiscreteModel build_discrete(const ModularityMatrix& matrix, int k) {
  if (k < 1) throw std::invalid_argument("build_discrete: k must be at least 1");
  return DiscreteModel{matrix.size(), k, -matrix.coefficients};
}

double energy(const DiscreteModel& model, std::span<const int> assignment) {
  if (static_cast<int>(assignment.size()) != model.n) {
    throw std::invalid_argument("energy: assignment length does not match the model");
  }
  double total = 0.0;
  for (int i = 0; i < model.n; ++i) {
    if (assignment[i] < 0 || assignment[i] >= model.k) {
      throw std::invalid_argument("energy: community label outside 0..k-1");
    }
    for (int j = 0; j < model.n; ++j) {
      if (assignment[i] == assignment[j]) total += model.interaction(i, j);
    }
  }
  return total;
}

void write_qubo(std::ostream& out, const QuboModel& model) {
  std::ostringstream body;
  body.precision(17);
  body << "# gridcomm qubo\n";
  body << "n " << model.n << " k " << model.k << " lambda " << model.penalty_lambda << " offset "
       << model.offset << " terms " << model.coefficients.size() << "\n";
  for (const auto& [key, value] : model.coefficients) {
    body << key.first << ' ' << key.second << ' ' << value << '\n';
  }
  out << body.str();
}

QuboModel read_qubo(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# gridcomm qubo", 0) != 0) {
    throw ParseError("qubo: missing '# gridcomm qubo' header");
  }
  if (!std::getline(in, line)) throw ParseError("qubo: missing dimension line");
  std::istringstream header(line);
  std::string tag_n, tag_k, tag_lambda, tag_offset, tag_terms;
  QuboModel model;
  std::size_t terms = 0;
  header >> tag_n >> model.n >> tag_k >> model.k >> tag_lambda >> model.penalty_lambda >>
      tag_offset >> model.offset >> tag_terms >> terms;
  if (!header || tag_n != "n" || tag_k != "k" || tag_lambda != "lambda" || tag_offset != "offset" ||
      tag_terms != "terms" || model.n < 0 || model.k < 1) {
    throw ParseError("qubo: malformed dimension line");
  }
  const int vars = model.n * model.k;
  for (std::size_t t = 0; t < terms; ++t) {
    int p = 0;
    int q = 0;
    double value = 0.0;
    if (!(in >> p >> q >> value)) throw ParseError("qubo: truncated coefficient list");
    if (p < 0 || q < p || q >= vars) throw ParseError("qubo: coefficient index out of range");
    model.coefficients[{p, q}] += value;
  }
  return model;
}

}  // namespace gridcomm
