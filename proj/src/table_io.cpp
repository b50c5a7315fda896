#include "ptbilayer/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "ptbilayer/errors.hpp"

namespace ptbilayer {

namespace {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json metadata_object(const ResultTable& table) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) meta[key] = value;
  return meta;
}

}  // namespace

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::kCsv;
  if (name == "json") return TableFormat::kJson;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

void write_csv(const ResultTable& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << csv_escape(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const double* v = std::get_if<double>(&row[i])) {
        os << format_number(*v);
      } else {
        os << csv_escape(std::get<std::string>(row[i]));
      }
    }
    os << '\n';
  }
}

void write_json(const ResultTable& table, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata_object(table);
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const Cell& cell : row) {
      if (const double* v = std::get_if<double>(&cell)) {
        if (std::isfinite(*v)) {
          r.push_back(*v);
        } else {
          r.push_back(nullptr);
        }
      } else {
        r.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(1) << '\n';
}

void write_metadata_json(const ResultTable& table, std::ostream& os) {
  os << metadata_object(table).dump(1) << '\n';
}

void write_table(const ResultTable& table, TableFormat format, std::ostream& os) {
  if (format == TableFormat::kCsv) {
    write_csv(table, os);
  } else {
    write_json(table, os);
  }
}

}  // namespace ptbilayer
