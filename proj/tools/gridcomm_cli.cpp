// gridcomm: partition an electrical grid into communities by electrical modularity.
//
//   gridcomm partition --case data/ieee33.json --solver discrete-anneal -k 6 --out results
//   gridcomm sweep     --case data/ieee14.json --k-range 1..5 --solver exhaustive
//   gridcomm benchmark --case data/ieee14.json --solver exhaustive,louvain -k 3 --reps 5
//   gridcomm weights   --case data/ieee14.json --out weights

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridcomm/electrical_weights.hpp"
#include "gridcomm/errors.hpp"
#include "gridcomm/export.hpp"
#include "gridcomm/grid.hpp"
#include "gridcomm/modularity.hpp"
#include "gridcomm/qubo.hpp"
#include "gridcomm/solvers.hpp"

namespace fs = std::filesystem;
using namespace gridcomm;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;

// Flag errors are input errors, not solver failures.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonArgs {
  std::string case_path;
  double alpha = 0.5;
  double beta = 0.5;
  std::string lambda = "auto";
  std::uint64_t seed = 0;
  int reads = 1000;
  int sweeps = 1000;
  int threads = 0;
  std::string out_dir = ".";
};

void add_common(CLI::App& cmd, CommonArgs& args) {
  cmd.add_option("--case", args.case_path, "Case file (JSON)")->required();
  cmd.add_option("--alpha", args.alpha, "Weight of normalized admittance")->capture_default_str();
  cmd.add_option("--beta", args.beta, "Weight of normalized line sensitivity")
      ->capture_default_str();
  cmd.add_option("--lambda", args.lambda, "QUBO penalty: number, 'auto' or 'conservative'")
      ->capture_default_str();
  cmd.add_option("--seed", args.seed, "Random seed")->capture_default_str();
  cmd.add_option("--reads", args.reads, "Annealing reads")->capture_default_str();
  cmd.add_option("--sweeps", args.sweeps, "Sweeps per annealing read")->capture_default_str();
  cmd.add_option("--threads", args.threads, "Worker threads for reads (0 = all cores)");
  cmd.add_option("--out", args.out_dir, "Output directory")->capture_default_str();
}

// Parsed once per run: the model inputs shared by every command.
struct Problem {
  Grid grid;
  EcsAdjacency adj;
  ModularityMatrix matrix;
};

Problem load_problem(const CommonArgs& args) {
  Problem p;
  p.grid = load_grid(args.case_path);
  p.adj = build_ecs(p.grid, args.alpha, args.beta);
  p.matrix = build_modularity_matrix(p.adj);
  return p;
}

SolverOptions solver_options(const CommonArgs& args, const ModularityMatrix& matrix) {
  SolverOptions options;
  options.anneal.num_reads = args.reads;
  options.anneal.sweeps_per_read = args.sweeps;
  options.anneal.seed = args.seed;
  options.anneal.threads = args.threads;
  if (args.reads <= 0 || args.sweeps <= 0) throw UsageError("--reads and --sweeps must be positive");
  if (args.lambda == "auto") {
    options.lambda = std::nullopt;
  } else if (args.lambda == "conservative") {
    options.lambda = conservative_penalty(matrix);
  } else {
    try {
      std::size_t used = 0;
      options.lambda = std::stod(args.lambda, &used);
      if (used != args.lambda.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--lambda must be a number, 'auto' or 'conservative'");
    }
    if (!(*options.lambda > 0.0)) throw UsageError("--lambda must be positive");
  }
  return options;
}

SolverKind solver_kind(const std::string& name) {
  const auto kind = parse_solver(name);
  if (!kind) throw UsageError("unknown solver '" + name + "'");
  return *kind;
}

KRange k_range(int k, const std::string& range_text) {
  if (range_text.empty()) {
    if (k < 1) throw UsageError("-k must be at least 1");
    return {k, k};
  }
  const auto dots = range_text.find("..");
  if (dots == std::string::npos) throw UsageError("--k-range must look like A..B");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = range_text.substr(0, dots);
    const std::string b = range_text.substr(dots + 2);
    KRange range{std::stoi(a, &used_a), std::stoi(b, &used_b)};
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing");
    if (range.first < 1 || range.last < range.first) throw std::invalid_argument("order");
    return range;
  } catch (const std::invalid_argument&) {
    throw UsageError("--k-range must be A..B with 1 <= A <= B");
  } catch (const std::out_of_range&) {
    throw UsageError("--k-range value out of range");
  }
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

template <typename Writer>
std::string render(Writer&& writer) {
  std::ostringstream buffer;
  writer(buffer);
  return buffer.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

struct PartitionArgs {
  std::string solver = "discrete-anneal";
  int k = 2;
  bool export_qubo = false;
};

int run_partition(const CommonArgs& args, const PartitionArgs& cmd) {
  const auto kind = solver_kind(cmd.solver);
  if (cmd.k < 1) throw UsageError("-k must be at least 1");
  const auto problem = load_problem(args);
  const auto options = solver_options(args, problem.matrix);

  const auto start = std::chrono::steady_clock::now();
  const auto result = solve(problem.matrix, problem.adj, cmd.k, kind, options);
  const double elapsed = seconds_since(start);

  RunReport report;
  report.grid_path = args.case_path;
  report.solver = std::string(to_string(kind));
  report.k = cmd.k;
  report.alpha = args.alpha;
  report.beta = args.beta;
  report.lambda_auto = args.lambda == "auto";
  if (kind == SolverKind::qubo_anneal) report.lambda = result.lambda;
  report.partition = result.partition;
  report.seconds = elapsed;
  report.seed = args.seed;
  report.reads = args.reads;
  report.sweeps = args.sweeps;

  const fs::path out(args.out_dir);
  std::string qubo_text;
  if (cmd.export_qubo) {
    const auto model = build_qubo(problem.matrix, cmd.k, options.lambda);
    qubo_text = render([&](std::ostream& os) { write_qubo(os, model); });
  }
  write_file(out / "report.json", report_to_json(report));
  write_file(out / "partition.dot",
             render([&](std::ostream& os) { write_dot(os, problem.grid, result.partition); }));
  if (cmd.export_qubo) write_file(out / "model.qubo", qubo_text);

  std::cout << "solver " << report.solver << "  k " << cmd.k << "  communities "
            << result.partition.community_count() << "  Q_e " << result.partition.score << "  ("
            << elapsed << " s)\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string solver = "discrete-anneal";
  int k = 0;
  std::string range;
  bool dot = false;
};

int run_sweep(const CommonArgs& args, const SweepArgs& cmd) {
  const auto kind = solver_kind(cmd.solver);
  const auto range = k_range(cmd.k, cmd.range);
  const auto problem = load_problem(args);
  const auto options = solver_options(args, problem.matrix);

  const auto sweep = sweep_k(problem.matrix, problem.adj, range, kind, options);
  const auto csv = render([&](std::ostream& os) { write_sweep_csv(os, sweep); });

  const fs::path out(args.out_dir);
  write_file(out / "sweep.csv", csv);
  if (cmd.dot) {
    for (const auto& record : sweep.records) {
      write_file(out / ("sweep_k" + std::to_string(record.k) + ".dot"),
                 render([&](std::ostream& os) { write_dot(os, problem.grid, record.best); }));
    }
  }
  std::cout << csv;
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchmarkArgs {
  std::vector<std::string> solvers;
  int k = 0;
  std::string range;
  int reps = 5;
};

int run_benchmark(const CommonArgs& args, const BenchmarkArgs& cmd) {
  std::vector<SolverKind> kinds;
  for (const auto& name : cmd.solvers) kinds.push_back(solver_kind(name));
  if (kinds.size() < 2) throw UsageError("benchmark needs at least two solvers");
  if (cmd.reps < 1) throw UsageError("--reps must be at least 1");
  const auto range = k_range(cmd.k, cmd.range);
  const auto problem = load_problem(args);
  const auto base_options = solver_options(args, problem.matrix);

  std::ostringstream csv;
  csv << "solver,k,reps,mean_seconds,std_seconds,best_Q_e,status\n";
  csv.precision(17);
  for (int k = range.first; k <= range.last; ++k) {
    for (auto kind : kinds) {
      std::vector<double> times;
      double best = -std::numeric_limits<double>::infinity();
      std::string status = "ok";
      for (int rep = 0; rep < cmd.reps; ++rep) {
        auto options = base_options;
        options.anneal.seed = args.seed + static_cast<std::uint64_t>(rep);
        options.louvain.shuffle_seed =
            rep == 0 ? std::nullopt : std::optional<std::uint64_t>(args.seed + rep);
        const auto start = std::chrono::steady_clock::now();
        try {
          const auto result = solve(problem.matrix, problem.adj, k, kind, options);
          times.push_back(seconds_since(start));
          best = std::max(best, result.partition.score);
        } catch (const InstanceTooLargeError&) {
          status = "instance-too-large";
          break;
        }
      }
      const double mean =
          times.empty() ? 0.0 : std::accumulate(times.begin(), times.end(), 0.0) / times.size();
      double var = 0.0;
      for (double t : times) var += (t - mean) * (t - mean);
      const double stddev = times.size() > 1 ? std::sqrt(var / (times.size() - 1)) : 0.0;
      csv << to_string(kind) << ',' << k << ',' << cmd.reps << ',' << mean << ',' << stddev << ',';
      if (status == "ok") csv << best;
      csv << ',' << status << '\n';
    }
  }

  write_file(fs::path(args.out_dir) / "benchmark.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

// ---------------------------------------------------------------------------

int run_weights(const CommonArgs& args) {
  const auto grid = load_grid(args.case_path);
  const auto adj = build_ecs(grid, args.alpha, args.beta);
  const auto ptdf = compute_ptdf(grid);
  const auto normalized =
      normalize_weights(grid, admittance_weights(grid), line_sensitivity_weights(grid, ptdf));

  const fs::path out(args.out_dir);
  const auto triplets = [](const Eigen::MatrixXd& m) {
    return render([&](std::ostream& os) { write_triplets(os, m); });
  };
  write_file(out / "adjacency.csv", triplets(adj.weights));
  write_file(out / "admittance.csv", triplets(normalized.admittance));
  write_file(out / "sensitivity.csv", triplets(normalized.sensitivity));
  write_file(out / "ptdf.csv", triplets(ptdf.values));
  std::cout << "wrote adjacency.csv, admittance.csv, sensitivity.csv, ptdf.csv to "
            << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electrical-modularity community detection for power grids"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  CommonArgs common;

  PartitionArgs partition_args;
  auto* partition = app.add_subcommand("partition", "Run one solver at one k");
  add_common(*partition, common);
  partition->add_option("--solver", partition_args.solver,
                        "exhaustive | qubo-anneal | discrete-anneal | louvain")
      ->capture_default_str();
  partition->add_option("-k", partition_args.k, "Number of communities")->capture_default_str();
  partition->add_flag("--export-qubo", partition_args.export_qubo, "Also write model.qubo");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Best modularity for each k in a range");
  add_common(*sweep, common);
  sweep->add_option("--solver", sweep_args.solver)->capture_default_str();
  sweep->add_option("-k", sweep_args.k, "Single k");
  sweep->add_option("--k-range", sweep_args.range, "Inclusive range A..B");
  sweep->add_flag("--dot", sweep_args.dot, "Write one DOT file per k");

  BenchmarkArgs bench_args;
  auto* bench = app.add_subcommand("benchmark", "Compare solver run times and quality");
  add_common(*bench, common);
  bench->add_option("--solver", bench_args.solvers, "Solvers (repeat or comma-separate)")
      ->delimiter(',')
      ->required();
  bench->add_option("-k", bench_args.k, "Single k");
  bench->add_option("--k-range", bench_args.range, "Inclusive range A..B");
  bench->add_option("--reps", bench_args.reps, "Repetitions per solver")->capture_default_str();

  auto* weights = app.add_subcommand("weights", "Export A^E, normalized weights and PTDF as CSV");
  add_common(*weights, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*partition) return run_partition(common, partition_args);
    if (*sweep) return run_sweep(common, sweep_args);
    if (*bench) return run_benchmark(common, bench_args);
    if (*weights) return run_weights(common);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid grid\n";
    for (const auto& v : e.violations()) std::cerr << "  - " << v << "\n";
    return kExitInput;
  } catch (const SingularMatrixError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DegenerateGraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InstanceTooLargeError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitInput;
}
