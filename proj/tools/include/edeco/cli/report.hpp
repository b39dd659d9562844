#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "edeco/cli/config.hpp"

namespace edeco::cli {

using Json = nlohmann::ordered_json;

/// Serialized in place of a missing bound (e.g. an infinite length).
inline constexpr const char* kUnbounded = "unbounded";

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

/// Result of one command: resolved parameters, scalar summary and per-point
/// table. `passed` is false only for a selftest with failing criteria.
struct Report {
  Command command = Command::selftest;
  Json parameters = Json::object();
  Json summary = Json::object();
  Table table;
  bool passed = true;
};

/// Finite doubles as numbers; infinities and NaN as the unbounded sentinel.
Json number(double value);
Json number_or_unbounded(const std::optional<double>& value);

/// 17 significant digits, the shortest form that round-trips every double.
std::string format_double(double value);

/// RFC 4180 CSV with a header row and LF line endings.
std::string render_csv(const Table& table);
/// Pretty-printed JSON with a trailing newline.
std::string render_json(const Report& report);

}  // namespace edeco::cli
