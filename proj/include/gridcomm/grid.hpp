#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gridcomm {

enum class BranchKind { line, transformer };

std::string_view to_string(BranchKind kind);

struct Bus {
  int id = 0;
  std::string name;
  bool is_slack = false;
};

/// Series branch between two buses. Impedances are per-unit on the grid base.
struct Branch {
  int from_bus = 0;
  int to_bus = 0;
  double resistance_pu = 0.0;
  double reactance_pu = 0.0;
  double rating_mw = 0.0;
  BranchKind kind = BranchKind::line;
  /// Number of source branches folded into this one by parallel merging.
  int merged_count = 1;

  /// |Z| = sqrt(r^2 + x^2).
  double impedance_magnitude() const;
  /// |Y| = 1 / |Z|.
  double admittance_magnitude() const;
  /// DC series susceptance x / (r^2 + x^2).
  double series_susceptance() const;
};

/// Bus/branch network. Treated as immutable once returned by make_grid or load_grid.
struct Grid {
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  double base_mva = 100.0;

  int bus_count() const { return static_cast<int>(buses.size()); }
  int branch_count() const { return static_cast<int>(branches.size()); }
  /// Id of the designated slack bus, or -1 if there is none.
  int slack_bus() const;
};

/// Lists every invariant violation of `grid`. An empty result means the grid
/// is usable by the rest of the library.
std::vector<std::string> validate(const Grid& grid);

/// Normalizes raw bus/branch data into a Grid: re-indexes bus ids densely
/// (ascending original id), merges parallel branches by summing their complex
/// admittances and ratings, and canonicalizes each branch to from < to.
/// Throws ValidationError if the result is not valid.
Grid make_grid(std::vector<Bus> buses, std::vector<Branch> branches, double base_mva);

/// Parses a JSON case file and returns the normalized, validated grid.
/// Throws ParseError or ValidationError.
Grid load_grid(const std::filesystem::path& path);

/// Same as load_grid, from JSON text already in memory.
Grid parse_grid(std::string_view json_text);

}  // namespace gridcomm
