#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridcomm/errors.hpp"
#include "gridcomm/export.hpp"
#include "gridcomm/solvers.hpp"

namespace py = pybind11;
using namespace gridcomm;

namespace {

AnnealParams anneal_params(int reads, int sweeps, std::uint64_t seed, int threads) {
  AnnealParams p;
  p.num_reads = reads;
  p.sweeps_per_read = sweeps;
  p.seed = seed;
  p.threads = threads;
  return p;
}

SolverKind solver_kind(const std::string& name) {
  const auto kind = parse_solver(name);
  if (!kind) throw std::invalid_argument("unknown solver: " + name);
  return *kind;
}

py::list samples_to_list(const SampleSet& set) {
  py::list out;
  for (const auto& s : set.samples) {
    py::dict d;
    d["state"] = s.state;
    d["energy"] = s.energy;
    d["occurrences"] = s.occurrences;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Electrical-modularity grid partitioning";
  m.attr("__version__") = std::string(kToolVersion);

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", PyExc_ArithmeticError);
  py::register_exception<DegenerateGraphError>(m, "DegenerateGraphError", PyExc_ValueError);
  py::register_exception<InstanceTooLargeError>(m, "InstanceTooLargeError", PyExc_RuntimeError);

  py::class_<Grid>(m, "Grid")
      .def_property_readonly("bus_count", &Grid::bus_count)
      .def_property_readonly("branch_count", &Grid::branch_count)
      .def_property_readonly("slack_bus", &Grid::slack_bus)
      .def_readonly("base_mva", &Grid::base_mva)
      .def_property_readonly("bus_names",
                             [](const Grid& g) {
                               std::vector<std::string> names;
                               for (const auto& b : g.buses) names.push_back(b.name);
                               return names;
                             })
      .def_property_readonly("branch_pairs", [](const Grid& g) {
        std::vector<std::pair<int, int>> pairs;
        for (const auto& br : g.branches) pairs.emplace_back(br.from_bus, br.to_bus);
        return pairs;
      });

  py::class_<EcsAdjacency>(m, "EcsAdjacency")
      .def_readonly("weights", &EcsAdjacency::weights)
      .def_readonly("degrees", &EcsAdjacency::degrees)
      .def_readonly("total_weight", &EcsAdjacency::total_weight)
      .def_readonly("alpha", &EcsAdjacency::alpha)
      .def_readonly("beta", &EcsAdjacency::beta);

  py::class_<ModularityMatrix>(m, "ModularityMatrix")
      .def_readonly("coefficients", &ModularityMatrix::coefficients)
      .def_property_readonly("size", &ModularityMatrix::size);

  py::class_<Partition>(m, "Partition")
      .def_readonly("assignment", &Partition::assignment)
      .def_readonly("k", &Partition::k)
      .def_readonly("score", &Partition::score)
      .def_property_readonly("community_count", &Partition::community_count)
      .def("__repr__", [](const Partition& p) {
        return "Partition(k=" + std::to_string(p.k) + ", score=" + std::to_string(p.score) + ")";
      });

  py::class_<QuboModel>(m, "QuboModel")
      .def_readonly("n", &QuboModel::n)
      .def_readonly("k", &QuboModel::k)
      .def_readonly("penalty_lambda", &QuboModel::penalty_lambda)
      .def_readonly("offset", &QuboModel::offset)
      .def_readonly("coefficients", &QuboModel::coefficients)
      .def_property_readonly("variable_count", &QuboModel::variable_count);

  m.def("load_grid", [](const std::string& path) { return load_grid(path); }, py::arg("path"));
  m.def("parse_grid", [](const std::string& text) { return parse_grid(text); }, py::arg("text"));
  m.def("compute_ptdf", [](const Grid& g) { return compute_ptdf(g).values; }, py::arg("grid"));
  m.def("build_ecs", &build_ecs, py::arg("grid"), py::arg("alpha") = 0.5, py::arg("beta") = 0.5);
  m.def("build_modularity_matrix", &build_modularity_matrix, py::arg("adjacency"));
  m.def("score_partition",
        [](const ModularityMatrix& mm, const std::vector<int>& a) { return score_partition(mm, a); },
        py::arg("matrix"), py::arg("assignment"));
  m.def(
      "louvain",
      [](const EcsAdjacency& adj, std::optional<std::uint64_t> seed) {
        LouvainOptions options;
        options.shuffle_seed = seed;
        return louvain(adj, options);
      },
      py::arg("adjacency"), py::arg("shuffle_seed") = py::none());
  m.def("build_qubo", &build_qubo, py::arg("matrix"), py::arg("k"),
        py::arg("penalty_lambda") = py::none());
  m.def(
      "energy",
      [](const QuboModel& q, const std::vector<std::uint8_t>& x) { return energy(q, x); },
      py::arg("model"), py::arg("bits"));
  m.def(
      "decode",
      [](const QuboModel& q, const std::vector<std::uint8_t>& x) -> py::object {
        const auto result = decode(q, x);
        if (const auto* p = std::get_if<Partition>(&result)) return py::cast(*p);
        py::list violations;
        for (const auto& v : std::get<InfeasibilityReport>(result).violations) {
          violations.append(py::make_tuple(v.bus, v.bits_set));
        }
        return violations;
      },
      py::arg("model"), py::arg("bits"),
      "Partition for a one-hot vector, otherwise a list of (bus, bits_set) violations.");
  m.def("exhaustive", &exhaustive, py::arg("matrix"), py::arg("k"),
        py::arg("cap") = kDefaultExhaustiveCap);
  m.def(
      "anneal_qubo",
      [](const QuboModel& q, int reads, int sweeps, std::uint64_t seed, int threads) {
        return samples_to_list(anneal_qubo(q, anneal_params(reads, sweeps, seed, threads)));
      },
      py::arg("model"), py::arg("reads") = 1000, py::arg("sweeps") = 1000, py::arg("seed") = 0,
      py::arg("threads") = 0);
  m.def(
      "anneal_discrete",
      [](const ModularityMatrix& mm, int k, int reads, int sweeps, std::uint64_t seed,
         int threads) {
        return samples_to_list(
            anneal_discrete(build_discrete(mm, k), anneal_params(reads, sweeps, seed, threads)));
      },
      py::arg("matrix"), py::arg("k"), py::arg("reads") = 1000, py::arg("sweeps") = 1000,
      py::arg("seed") = 0, py::arg("threads") = 0);
  m.def(
      "solve",
      [](const Grid& g, int k, const std::string& solver, double alpha, double beta, int reads,
         int sweeps, std::uint64_t seed, std::optional<double> lambda) {
        const auto adj = build_ecs(g, alpha, beta);
        const auto mm = build_modularity_matrix(adj);
        SolverOptions options;
        options.anneal = anneal_params(reads, sweeps, seed, 0);
        options.lambda = lambda;
        return solve(mm, adj, k, solver_kind(solver), options).partition;
      },
      py::arg("grid"), py::arg("k"), py::arg("solver") = "discrete-anneal", py::arg("alpha") = 0.5,
      py::arg("beta") = 0.5, py::arg("reads") = 1000, py::arg("sweeps") = 1000,
      py::arg("seed") = 0, py::arg("penalty_lambda") = py::none());
  m.def(
      "sweep_k",
      [](const Grid& g, int first, int last, const std::string& solver, double alpha, double beta,
         int reads, int sweeps, std::uint64_t seed) {
        SolverOptions options;
        options.anneal = anneal_params(reads, sweeps, seed, 0);
        const auto result = sweep_k(g, {first, last}, solver_kind(solver), options, alpha, beta);
        py::list rows;
        for (const auto& r : result.records) {
          py::dict d;
          d["k"] = r.k;
          d["solver"] = r.solver;
          d["q_e"] = r.best.score;
          d["assignment"] = r.best.assignment;
          d["seconds"] = r.seconds;
          rows.append(d);
        }
        return rows;
      },
      py::arg("grid"), py::arg("first"), py::arg("last"), py::arg("solver") = "discrete-anneal",
      py::arg("alpha") = 0.5, py::arg("beta") = 0.5, py::arg("reads") = 1000,
      py::arg("sweeps") = 1000, py::arg("seed") = 0);
}
