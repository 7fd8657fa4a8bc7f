#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qdchan/cli.hpp"

namespace qdchan::cli {

std::string format_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("refusing to emit a non-finite number");
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  // "%g" honours LC_NUMERIC; force '.' in case a locale was installed.
  for (char* c = buffer; *c; ++c)
    if (*c == ',') *c = '.';
  return buffer;
}

Table CurveTable::to_table() const {
  Table table;
  table.meta = meta;
  table.columns = {"mu", "I_product", "I_entangled"};
  if (has_custom) table.columns.emplace_back("I_custom");
  table.columns.emplace_back("delta");
  for (const CurveRow& row : rows) {
    std::vector<Cell> cells{row.mu, row.I_product, row.I_entangled};
    if (has_custom) cells.emplace_back(row.I_custom.value_or(NAN));
    cells.emplace_back(row.delta);
    table.rows.push_back(std::move(cells));
  }
  return table;
}

namespace {

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char c : v) {
            if (c == '"') quoted += '"';
            quoted += c;
          }
          return quoted + "\"";
        } else {
          return "";
        }
      },
      cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) throw InvalidArgument("refusing to emit a non-finite number");
          return v;
        } else if constexpr (std::is_same_v<T, Null>) {
          return nullptr;
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

std::string render(const Table& table, Format format) {
  std::ostringstream out;
  if (format == Format::Csv) {
    for (const auto& [key, value] : table.meta) out << "# " << key << '=' << value << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
    return out.str();
  }

  nlohmann::ordered_json doc;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) doc["meta"][key] = value;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) record[table.columns[i]] = json_cell(row[i]);
    doc["rows"].push_back(std::move(record));
  }
  return doc.dump(2) + "\n";
}

void emit(const Table& table, Format format, const std::string& path) {
  const std::string text = render(table, format);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace qdchan::cli
