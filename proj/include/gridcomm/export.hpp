#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "gridcomm/grid.hpp"
#include "gridcomm/modularity.hpp"
#include "gridcomm/solvers.hpp"

namespace gridcomm {

inline constexpr std::string_view kToolVersion = GRIDCOMM_VERSION;

/// Everything needed to reproduce and re-check one partition run.
struct RunReport {
  std::string grid_path;
  std::string solver;
  int k = 1;
  double alpha = 0.5;
  double beta = 0.5;
  std::optional<double> lambda;  // resolved penalty, qubo-anneal only
  bool lambda_auto = true;
  Partition partition;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  int reads = 0;
  int sweeps = 0;
  std::string tool_version{kToolVersion};
};

std::string report_to_json(const RunReport& report);
/// Throws ParseError on malformed input.
RunReport parse_report(std::string_view json_text);

/// Sparse "row,col,value" triplets of every nonzero entry, row-major order.
void write_triplets(std::ostream& out, const Eigen::MatrixXd& matrix);

/// Undirected graph, one node per bus filled by community, one edge per branch.
void write_dot(std::ostream& out, const Grid& grid, const Partition& partition);

/// Header "k,solver,Q_e,seconds", one row per record.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

}  // namespace gridcomm
