#include "gridcomm/export.hpp"

#include <array>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gridcomm/errors.hpp"

namespace gridcomm {

namespace {

using nlohmann::json;

// 17 significant digits: parses back to the same double.
std::string format_number(double value) {
  std::array<char, 32> buffer{};
  std::snprintf(buffer.data(), buffer.size(), "%.17g", value);
  return buffer.data();
}

constexpr std::array<const char*, 12> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

std::string dot_quoted(std::string_view text) {
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  json doc;
  doc["tool_version"] = report.tool_version;
  doc["grid"] = report.grid_path;
  doc["solver"] = report.solver;
  doc["k"] = report.k;
  doc["alpha"] = report.alpha;
  doc["beta"] = report.beta;
  doc["lambda"] = report.lambda ? json(*report.lambda) : json(nullptr);
  doc["lambda_mode"] = report.lambda_auto ? "auto" : "fixed";
  doc["seed"] = report.seed;
  doc["reads"] = report.reads;
  doc["sweeps"] = report.sweeps;
  doc["communities"] = report.partition.community_count();
  doc["q_e"] = report.partition.score;
  doc["partition"] = report.partition.assignment;
  doc["seconds"] = report.seconds;
  return doc.dump(2) + "\n";
}

RunReport parse_report(std::string_view json_text) {
  RunReport report;
  try {
    const auto doc = json::parse(json_text);
    report.tool_version = doc.at("tool_version").get<std::string>();
    report.grid_path = doc.at("grid").get<std::string>();
    report.solver = doc.at("solver").get<std::string>();
    report.k = doc.at("k").get<int>();
    report.alpha = doc.at("alpha").get<double>();
    report.beta = doc.at("beta").get<double>();
    if (!doc.at("lambda").is_null()) report.lambda = doc.at("lambda").get<double>();
    report.lambda_auto = doc.at("lambda_mode").get<std::string>() == "auto";
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.reads = doc.at("reads").get<int>();
    report.sweeps = doc.at("sweeps").get<int>();
    report.partition.assignment = doc.at("partition").get<std::vector<int>>();
    report.partition.k = report.k;
    report.partition.score = doc.at("q_e").get<double>();
    report.seconds = doc.at("seconds").get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return report;
}

void write_triplets(std::ostream& out, const Eigen::MatrixXd& matrix) {
  std::ostringstream body;
  body << "row,col,value\n";
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (matrix(r, c) != 0.0) body << r << ',' << c << ',' << format_number(matrix(r, c)) << '\n';
    }
  }
  out << body.str();
}

void write_dot(std::ostream& out, const Grid& grid, const Partition& partition) {
  std::ostringstream body;
  body << "graph grid {\n";
  body << "  node [style=filled, shape=circle];\n";
  for (const auto& bus : grid.buses) {
    const int community = partition.assignment.at(static_cast<std::size_t>(bus.id));
    body << "  " << bus.id << " [label=" << dot_quoted(bus.name) << ", community=" << community
         << ", fillcolor=\"" << kPalette[static_cast<std::size_t>(community) % kPalette.size()]
         << "\"];\n";
  }
  for (const auto& br : grid.branches) {
    body << "  " << br.from_bus << " -- " << br.to_bus;
    if (br.kind == BranchKind::transformer) body << " [style=dashed]";
    body << ";\n";
  }
  body << "}\n";
  out << body.str();
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  std::ostringstream body;
  body << "k,solver,Q_e,seconds\n";
  for (const auto& record : sweep.records) {
    body << record.k << ',' << record.solver << ',' << format_number(record.best.score) << ','
         << format_number(record.seconds) << '\n';
  }
  out << body.str();
}

}  // namespace gridcomm
