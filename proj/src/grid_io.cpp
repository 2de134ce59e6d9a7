#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gridcomm/errors.hpp"
#include "gridcomm/grid.hpp"

namespace gridcomm {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

double require_number(const json& obj, const char* key, const std::string& where) {
  const auto& value = require(obj, key, where);
  if (!value.is_number()) throw ParseError(where + ": field \"" + key + "\" must be a number");
  return value.get<double>();
}

int require_integer(const json& obj, const char* key, const std::string& where) {
  const auto& value = require(obj, key, where);
  if (!value.is_number_integer()) {
    throw ParseError(where + ": field \"" + key + "\" must be an integer");
  }
  return value.get<int>();
}

Bus parse_bus(const json& item, std::size_t index) {
  const std::string where = "buses[" + std::to_string(index) + "]";
  if (!item.is_object()) throw ParseError(where + ": expected an object");
  Bus bus;
  bus.id = require_integer(item, "id", where);
  if (const auto it = item.find("name"); it != item.end()) {
    if (!it->is_string()) throw ParseError(where + ": field \"name\" must be a string");
    bus.name = it->get<std::string>();
  } else {
    bus.name = std::to_string(bus.id);
  }
  if (const auto it = item.find("is_slack"); it != item.end()) {
    if (!it->is_boolean()) throw ParseError(where + ": field \"is_slack\" must be a boolean");
    bus.is_slack = it->get<bool>();
  }
  return bus;
}

// Returns false for branches explicitly marked out of service.
bool parse_branch(const json& item, std::size_t index, Branch& out) {
  const std::string where = "branches[" + std::to_string(index) + "]";
  if (!item.is_object()) throw ParseError(where + ": expected an object");
  out.from_bus = require_integer(item, "from", where);
  out.to_bus = require_integer(item, "to", where);
  out.resistance_pu = require_number(item, "r_pu", where);
  out.reactance_pu = require_number(item, "x_pu", where);
  out.rating_mw = require_number(item, "rating_mw", where);

  const auto& kind = require(item, "kind", where);
  if (kind == "line") {
    out.kind = BranchKind::line;
  } else if (kind == "transformer") {
    out.kind = BranchKind::transformer;
  } else {
    throw ParseError(where + ": field \"kind\" must be \"line\" or \"transformer\"");
  }

  if (const auto it = item.find("in_service"); it != item.end()) {
    if (!it->is_boolean()) throw ParseError(where + ": field \"in_service\" must be a boolean");
    return it->get<bool>();
  }
  return true;
}

}  // namespace

Grid parse_grid(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("case file must be a JSON object");

  const double base_mva = require_number(doc, "base_mva", "case");
  const auto& bus_items = require(doc, "buses", "case");
  const auto& branch_items = require(doc, "branches", "case");
  if (!bus_items.is_array()) throw ParseError("case: \"buses\" must be an array");
  if (!branch_items.is_array()) throw ParseError("case: \"branches\" must be an array");

  std::vector<Bus> buses;
  buses.reserve(bus_items.size());
  for (std::size_t i = 0; i < bus_items.size(); ++i) buses.push_back(parse_bus(bus_items[i], i));

  std::vector<Branch> branches;
  branches.reserve(branch_items.size());
  for (std::size_t i = 0; i < branch_items.size(); ++i) {
    Branch br;
    if (parse_branch(branch_items[i], i, br)) branches.push_back(br);
  }

  return make_grid(std::move(buses), std::move(branches), base_mva);
}

Grid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open case file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_grid(buffer.str());
}

}  // namespace gridcomm
