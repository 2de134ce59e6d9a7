#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <json.hpp>

#include "gridcomm/errors.hpp"
#include "gridcomm/grid.hpp"
#include "support/oracles.hpp"

using namespace gridcomm;
using gridcomm::testing::data_path;
using gridcomm::testing::make_branch;

namespace {

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

std::vector<std::string> violations_of(const std::string& json_text) {
  try {
    parse_grid(json_text);
  } catch (const ValidationError& e) {
    return e.violations();
  }
  return {};
}

}  // namespace

TEST_CASE("IEEE fixtures load with the expected element counts") {
  const auto g14 = load_grid(data_path("ieee14.json"));
  CHECK(g14.bus_count() == 14);
  CHECK(g14.branch_count() == 20);
  CHECK(g14.slack_bus() == 0);

  const auto g33 = load_grid(data_path("ieee33.json"));
  CHECK(g33.bus_count() == 33);
  CHECK(g33.branch_count() == 32);  // five tie switches are out of service

  const auto g118 = load_grid(data_path("ieee118.json"));
  CHECK(g118.bus_count() == 118);
  CHECK(g118.branch_count() == 179);  // 186 branches, seven parallel pairs merged
  CHECK(g118.slack_bus() == 68);

  const auto merged = std::count_if(g118.branches.begin(), g118.branches.end(),
                                    [](const Branch& b) { return b.merged_count == 2; });
  CHECK(merged == 7);
}

TEST_CASE("fixture files list the bus and line counts of the source cases") {
  struct Expected {
    const char* file;
    std::size_t buses, lines, transformers;
  };
  for (const auto& e : {Expected{"ieee14.json", 14, 15, 5}, Expected{"ieee33.json", 33, 37, 0},
                        Expected{"ieee118.json", 118, 173, 13}}) {
    CAPTURE(e.file);
    std::ifstream in(data_path(e.file));
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["buses"].size() == e.buses);
    std::size_t lines = 0;
    std::size_t transformers = 0;
    for (const auto& br : doc["branches"]) (br["kind"] == "line" ? lines : transformers) += 1;
    CHECK(lines == e.lines);
    CHECK(transformers == e.transformers);
  }
}

TEST_CASE("smallest grid") {
  const auto g = load_grid(data_path("two_bus.json"));
  CHECK(g.bus_count() == 2);
  CHECK(g.branch_count() == 1);
  CHECK(g.slack_bus() == 0);
  CHECK(validate(g).empty());
}

TEST_CASE("loaded grids are valid and loading is deterministic") {
  for (const char* name : {"ieee14.json", "ieee33.json", "ieee118.json"}) {
    CAPTURE(name);
    const auto a = load_grid(data_path(name));
    const auto b = load_grid(data_path(name));
    CHECK(validate(a).empty());
    REQUIRE(a.branch_count() == b.branch_count());
    for (int l = 0; l < a.branch_count(); ++l) {
      CHECK(a.branches[l].from_bus == b.branches[l].from_bus);
      CHECK(a.branches[l].to_bus == b.branches[l].to_bus);
      CHECK(a.branches[l].resistance_pu == b.branches[l].resistance_pu);
      CHECK(a.branches[l].reactance_pu == b.branches[l].reactance_pu);
      CHECK(a.branches[l].rating_mw == b.branches[l].rating_mw);
    }
  }
}

TEST_CASE("buses without branches are rejected as disconnected") {
  const auto v = violations_of(R"({"base_mva": 100, "buses": [
      {"id": 0, "name": "a", "is_slack": true}, {"id": 1, "name": "b", "is_slack": false}],
      "branches": []})");
  CHECK(mentions(v, "disconnected"));
}

TEST_CASE("validate reports each broken invariant") {
  SUBCASE("fixture is clean") { CHECK(validate(load_grid(data_path("ieee14.json"))).empty()); }

  SUBCASE("zero impedance") {
    Grid g;
    g.buses = {{0, "a", true}, {1, "b", false}};
    g.branches = {make_branch(0, 1, 0.0, 0.0, 10.0)};
    const auto v = validate(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "zero impedance on branch (0,1)");
  }

  SUBCASE("two slack buses") {
    Grid g;
    g.buses = {{0, "a", true}, {1, "b", true}};
    g.branches = {make_branch(0, 1, 0.0, 0.1, 10.0)};
    const auto v = validate(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "multiple slack buses");
  }

  SUBCASE("no slack") {
    Grid g;
    g.buses = {{0, "a", false}, {1, "b", false}};
    g.branches = {make_branch(0, 1, 0.0, 0.1, 10.0)};
    CHECK(mentions(validate(g), "no slack bus"));
  }

  SUBCASE("self loop, bad rating and unmerged duplicate") {
    Grid g;
    g.buses = {{0, "a", true}, {1, "b", false}};
    g.branches = {make_branch(0, 1, 0.0, 0.1, 10.0), make_branch(1, 0, 0.0, 0.1, 10.0),
                  make_branch(1, 1, 0.0, 0.1, 10.0), make_branch(0, 1, 0.0, 0.1, 0.0)};
    const auto v = validate(g);
    CHECK(mentions(v, "duplicate branch (0,1)"));
    CHECK(mentions(v, "self-loop on branch (1,1)"));
    CHECK(mentions(v, "non-positive rating"));
  }

  SUBCASE("non-contiguous ids") {
    Grid g;
    g.buses = {{0, "a", true}, {5, "b", false}};
    g.branches = {make_branch(0, 1, 0.0, 0.1, 10.0)};
    CHECK(mentions(validate(g), "contiguous"));
  }
}

TEST_CASE("make_grid merges parallel branches and re-indexes buses") {
  // Two identical branches with |Y| = 2 each, given in both orientations.
  const auto g = make_grid({{30, "c", false}, {10, "a", true}, {20, "b", false}},
                           {make_branch(10, 20, 0.0, 0.5, 40.0), make_branch(20, 10, 0.0, 0.5, 60.0),
                            make_branch(20, 30, 0.1, 0.3, 50.0)},
                           100.0);
  REQUIRE(g.bus_count() == 3);
  CHECK(g.buses[0].name == "a");
  CHECK(g.buses[2].name == "c");
  CHECK(g.buses[0].is_slack);
  REQUIRE(g.branch_count() == 2);
  const auto& merged = g.branches[0];
  CHECK(merged.from_bus == 0);
  CHECK(merged.to_bus == 1);
  CHECK(merged.merged_count == 2);
  CHECK(merged.rating_mw == doctest::Approx(100.0));
  CHECK(merged.admittance_magnitude() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(merged.series_susceptance() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("make_grid rejects raw branch problems before merging") {
  CHECK_THROWS_AS(make_grid({{0, "a", true}, {1, "b", false}}, {make_branch(0, 1, 0, 0, 1)}, 100),
                  ValidationError);
  CHECK_THROWS_AS(make_grid({{0, "a", true}, {1, "b", false}}, {make_branch(0, 7, 0, 1, 1)}, 100),
                  ValidationError);
  CHECK_THROWS_AS(make_grid({{0, "a", true}, {0, "b", false}}, {make_branch(0, 0, 0, 1, 1)}, 100),
                  ValidationError);
}

TEST_CASE("out-of-service branches are dropped at load") {
  const auto g = parse_grid(R"({"base_mva": 10, "buses": [
      {"id": 0, "name": "a", "is_slack": true}, {"id": 1, "name": "b", "is_slack": false},
      {"id": 2, "name": "c", "is_slack": false}],
      "branches": [
        {"from": 0, "to": 1, "r_pu": 0.01, "x_pu": 0.1, "rating_mw": 10, "kind": "line"},
        {"from": 1, "to": 2, "r_pu": 0.01, "x_pu": 0.1, "rating_mw": 10, "kind": "transformer"},
        {"from": 0, "to": 2, "r_pu": 0.01, "x_pu": 0.1, "rating_mw": 10, "kind": "line",
         "in_service": false}]})");
  CHECK(g.branch_count() == 2);
  CHECK(g.branches[1].kind == BranchKind::transformer);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_grid("{ not json"), ParseError);
  CHECK_THROWS_AS(parse_grid("[]"), ParseError);
  CHECK_THROWS_AS(parse_grid(R"({"buses": [], "branches": []})"), ParseError);
  CHECK_THROWS_AS(parse_grid(R"({"base_mva": 1, "buses": [{"name": "x"}], "branches": []})"),
                  ParseError);
  CHECK_THROWS_AS(parse_grid(R"({"base_mva": 1, "buses": [{"id": 0, "is_slack": true},
      {"id": 1}], "branches": [{"from": 0, "to": 1, "r_pu": 0, "x_pu": 1, "rating_mw": 1,
      "kind": "cable"}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_grid(R"({"base_mva": 1, "buses": [{"id": 0.5}], "branches": []})"),
                  ParseError);
  CHECK_THROWS_AS(load_grid("/nonexistent/case.json"), ParseError);
}
