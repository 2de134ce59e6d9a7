#include "gridcomm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <utility>

#include "gridcomm/errors.hpp"

namespace gridcomm {

namespace {

std::string pair_label(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string join_lines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += "; ";
    out += item;
  }
  return out;
}

// Checks that make sense per branch before any merging happens.
void check_branch(const Branch& br, int n, std::vector<std::string>& out) {
  const auto label = pair_label(br.from_bus, br.to_bus);
  if (br.from_bus < 0 || br.from_bus >= n || br.to_bus < 0 || br.to_bus >= n) {
    out.push_back("branch " + label + " references an unknown bus");
    return;
  }
  if (br.from_bus == br.to_bus) out.push_back("self-loop on branch " + label);
  if (!std::isfinite(br.resistance_pu) || !std::isfinite(br.reactance_pu)) {
    out.push_back("non-finite impedance on branch " + label);
  } else if (br.impedance_magnitude() <= 0.0) {
    out.push_back("zero impedance on branch " + label);
  }
  if (br.resistance_pu < 0.0) out.push_back("negative resistance on branch " + label);
  if (!(br.rating_mw > 0.0) || !std::isfinite(br.rating_mw)) {
    out.push_back("non-positive rating on branch " + label);
  }
}

bool is_connected(int n, const std::vector<Branch>& branches) {
  if (n == 0) return false;
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
  for (const auto& br : branches) {
    if (br.from_bus < 0 || br.from_bus >= n || br.to_bus < 0 || br.to_bus >= n) continue;
    adjacency[br.from_bus].push_back(br.to_bus);
    adjacency[br.to_bus].push_back(br.from_bus);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int bus = frontier.front();
    frontier.pop();
    for (int next : adjacency[bus]) {
      if (!seen[next]) {
        seen[next] = true;
        ++reached;
        frontier.push(next);
      }
    }
  }
  return reached == n;
}

}  // namespace

std::string_view to_string(BranchKind kind) {
  return kind == BranchKind::line ? "line" : "transformer";
}

double Branch::impedance_magnitude() const { return std::hypot(resistance_pu, reactance_pu); }

double Branch::admittance_magnitude() const { return 1.0 / impedance_magnitude(); }

double Branch::series_susceptance() const {
  return reactance_pu / (resistance_pu * resistance_pu + reactance_pu * reactance_pu);
}

int Grid::slack_bus() const {
  for (const auto& bus : buses) {
    if (bus.is_slack) return bus.id;
  }
  return -1;
}

std::vector<std::string> validate(const Grid& grid) {
  std::vector<std::string> out;
  const int n = grid.bus_count();

  if (!(grid.base_mva > 0.0)) out.push_back("base_mva must be positive");
  if (n == 0) {
    out.push_back("grid has no buses");
    return out;
  }

  for (int i = 0; i < n; ++i) {
    if (grid.buses[i].id != i) {
      out.push_back("bus ids are not the contiguous range 0..n-1 (bus at position " +
                    std::to_string(i) + " has id " + std::to_string(grid.buses[i].id) + ")");
      break;
    }
  }

  const auto slack_count =
      std::count_if(grid.buses.begin(), grid.buses.end(), [](const Bus& b) { return b.is_slack; });
  if (slack_count == 0) out.push_back("no slack bus");
  if (slack_count > 1) out.push_back("multiple slack buses");

  std::set<std::pair<int, int>> seen_pairs;
  for (const auto& br : grid.branches) {
    check_branch(br, n, out);
    const auto key = std::minmax(br.from_bus, br.to_bus);
    if (!seen_pairs.insert(key).second) {
      out.push_back("duplicate branch " + pair_label(key.first, key.second));
    }
  }

  if (!is_connected(n, grid.branches)) out.push_back("grid is disconnected");
  return out;
}

Grid make_grid(std::vector<Bus> buses, std::vector<Branch> branches, double base_mva) {
  std::vector<std::string> problems;

  // Dense re-indexing, ordered by original id.
  std::map<int, int> remap;
  for (const auto& bus : buses) {
    if (!remap.emplace(bus.id, 0).second) {
      problems.push_back("duplicate bus id " + std::to_string(bus.id));
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  int next = 0;
  for (auto& [original, dense] : remap) dense = next++;

  std::sort(buses.begin(), buses.end(), [](const Bus& a, const Bus& b) { return a.id < b.id; });
  for (auto& bus : buses) bus.id = remap.at(bus.id);

  const int n = static_cast<int>(buses.size());
  for (auto& br : branches) {
    const auto from = remap.find(br.from_bus);
    const auto to = remap.find(br.to_bus);
    br.from_bus = from == remap.end() ? -1 : from->second;
    br.to_bus = to == remap.end() ? -1 : to->second;
    check_branch(br, n, problems);
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  // Parallel branches: admittances add, ratings add.
  struct Accumulator {
    std::complex<double> admittance;
    double rating = 0.0;
    BranchKind kind = BranchKind::line;
    int count = 0;
  };
  std::map<std::pair<int, int>, Accumulator> merged;
  for (const auto& br : branches) {
    const auto key = std::minmax(br.from_bus, br.to_bus);
    auto& acc = merged[key];
    if (acc.count == 0) acc.kind = br.kind;
    acc.admittance += 1.0 / std::complex<double>(br.resistance_pu, br.reactance_pu);
    acc.rating += br.rating_mw;
    acc.count += 1;
  }

  Grid grid;
  grid.buses = std::move(buses);
  grid.base_mva = base_mva;
  grid.branches.reserve(merged.size());
  for (const auto& [key, acc] : merged) {
    if (std::abs(acc.admittance) == 0.0) {
      problems.push_back("parallel branches cancel on " + pair_label(key.first, key.second));
      continue;
    }
    const auto z = 1.0 / acc.admittance;
    grid.branches.push_back(Branch{key.first, key.second, z.real(), z.imag(), acc.rating,
                                   acc.kind, acc.count});
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  auto violations = validate(grid);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return grid;
}

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error("invalid grid: " + join_lines(violations)),
      violations_(std::move(violations)) {}

}  // namespace gridcomm
