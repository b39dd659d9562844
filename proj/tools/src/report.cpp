#include "edeco/cli/report.hpp"

#include <cmath>
#include <cstdio>

namespace edeco::cli {
namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_cell(const Json& cell) {
  if (cell.is_number_float()) return format_double(cell.get<double>());
  if (cell.is_number()) return cell.dump();
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_string()) return csv_field(cell.get<std::string>());
  if (cell.is_null()) return "";
  return csv_field(cell.dump());
}

Json table_json(const Table& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t c = 0; c < table.columns.size() && c < row.size(); ++c) {
      obj[table.columns[c]] = row[c];
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

}  // namespace

Json number(double value) {
  if (!std::isfinite(value)) return kUnbounded;
  return value;
}

Json number_or_unbounded(const std::optional<double>& value) {
  return value ? number(*value) : Json(kUnbounded);
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_field(table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Report& report) {
  Json doc = Json::object();
  doc["command"] = std::string(to_string(report.command));
  doc["parameters"] = report.parameters;
  doc["summary"] = report.summary;
  doc["rows"] = table_json(report.table);
  return doc.dump(2) + "\n";
}

}  // namespace edeco::cli
