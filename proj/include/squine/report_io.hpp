#pragma once

// Serializers for ExperimentReport and plain tables. CSV carries the data
// table only (fixed header per subcommand, '\n' endings, no quoting — cell
// values never contain commas). JSON carries the whole report envelope with
// a schema_version field; floats arrive pre-formatted as 12-digit strings.

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "squine/experiments.hpp"

namespace squine {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

inline std::string to_csv(const ExperimentReport& r) { return to_csv(Table{r.columns, r.rows}); }

inline Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (header) {
      t.columns = std::move(cells);
      header = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

inline constexpr int kSchemaVersion = 1;

inline std::string to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = r.name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  if (r.seed) j["seed"] = *r.seed;
  j["columns"] = r.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) obj[r.columns[i]] = row[i];
    rows.push_back(obj);
  }
  j["rows"] = rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.summary) summary[k] = v;
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

}  // namespace squine
