#pragma once

// Serialization helpers for the CLI: shortest round-trip number formatting
// and the two table formats (CSV with comment lines, JSON with
// {meta, columns, rows}).

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "darboux/errors.hpp"

namespace darboux::io {

using json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  json meta = json::object();
};

inline void write_csv(std::ostream& os, const Table& table) {
  for (const auto& [key, value] : table.meta.items()) {
    os << "# " << key << ": ";
    if (value.is_string())
      os << value.get<std::string>();
    else
      os << value.dump();
    os << '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? "," : "") << format_double(row[c]);
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const Table& table) {
  json doc;
  doc["meta"] = table.meta;
  doc["columns"] = table.columns;
  doc["rows"] = table.rows;
  os << doc.dump(2) << '\n';
}

inline void write_table(const std::string& path, const Table& table,
                        bool as_json) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw invalid_parameter_error("cannot open output file: " + path);
  if (as_json)
    write_json(os, table);
  else
    write_csv(os, table);
}

}  // namespace darboux::io
