#include "osg/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "osg/error.hpp"

namespace osg {

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw Error("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string_view format_extension(Format f) { return f == Format::csv ? ".csv" : ".json"; }

void SnapshotTable::validate() const {
  if (units.size() != columns.size()) throw Error("table units row does not match its columns");
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw Error("table is not rectangular");
    for (double v : row)
      if (!std::isfinite(v)) throw Error("table contains a non-finite value");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  std::string s(buf);
  const auto e = s.find('e');
  const int exponent = std::atoi(s.c_str() + e + 1);
  return s.substr(0, e + 1) + std::to_string(exponent);
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

}  // namespace

std::string write_table(const SnapshotTable& table, Format format) {
  table.validate();
  if (format == Format::csv) {
    std::string out = join(table.columns) + "\n# " + join(table.units) + "\n";
    for (const auto& [key, value] : table.parameters) out += "# " + key + " = " + value + "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_double(row[i]);
      }
      out += '\n';
    }
    return out;
  }
  nlohmann::ordered_json j;
  j["columns"] = table.columns;
  j["units"] = table.units;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) j["rows"].push_back(row);
  if (!table.parameters.empty()) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.parameters) params[key] = value;
    j["parameters"] = params;
  }
  return j.dump(1) + "\n";
}

SnapshotTable read_json_table(std::string_view text) {
  const auto j = nlohmann::ordered_json::parse(text);
  SnapshotTable t;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  t.units = j.at("units").get<std::vector<std::string>>();
  t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  if (j.contains("parameters"))
    for (const auto& [key, value] : j.at("parameters").items())
      t.parameters.emplace_back(key, value.get<std::string>());
  t.validate();
  return t;
}

}  // namespace osg
