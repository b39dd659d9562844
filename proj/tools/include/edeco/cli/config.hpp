#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace edeco::cli {

enum class Command { ramsey, michelson, ghz, design, bounds, selftest };

std::string_view to_string(Command c) noexcept;
Command parse_command(std::string_view text);

enum class Format { csv, json };

enum class ValueType { number, integer, text, flag };

/// One recognised parameter. `fallback` is the textual default, empty when
/// the key has no default.
struct KeySpec {
  std::string_view name;
  ValueType type;
  std::string_view fallback;
  std::string_view help;
};

std::span<const KeySpec> keys_for(Command c);
const KeySpec* find_key(Command c, std::string_view name);

struct RunConfig {
  Command command = Command::selftest;
  std::map<std::string, std::string> parameters;  // normalized key -> raw text
  std::optional<std::filesystem::path> output_path;
  Format format = Format::json;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Lower-cases nothing; maps '-' to '_' and strips leading dashes.
std::string normalize_key(std::string_view key);

/// Flat `key = value` text (# comments, LF or CRLF) merged with overrides,
/// which win. The `command`, `out` and `format` keys fill the matching
/// fields. Every remaining key must belong to the command and parse as its
/// type.
RunConfig parse_config(std::string_view file_contents, const Overrides& overrides);

/// Full-consume decimal/scientific parse; rejects unit suffixes and
/// non-finite values.
double parse_number(std::string_view key, std::string_view text);
std::size_t parse_integer(std::string_view key, std::string_view text);
bool parse_flag(std::string_view key, std::string_view text);

/// Typed view over a RunConfig with schema defaults.
class Params {
 public:
  explicit Params(const RunConfig& cfg) : cfg_(&cfg) {}

  bool has(std::string_view key) const;
  double number(std::string_view key) const;
  std::size_t integer(std::string_view key) const;
  std::string text(std::string_view key) const;
  bool flag(std::string_view key) const;
  /// Throws ErrorKind::config when the key has neither a value nor a default.
  void require(std::string_view key) const;

 private:
  std::string raw(std::string_view key) const;
  const RunConfig* cfg_;
};

struct Sweep {
  std::string key;
  std::vector<std::string> values;
};

struct Invocation {
  RunConfig config;
  std::optional<Sweep> sweep;
};

/// `<command> [--key value | --flag ...] [--config path] [--out path]
/// [--format csv|json] [--sweep key --values a,b,c]`, program name excluded.
Invocation parse_arguments(std::span<const std::string> args);

}  // namespace edeco::cli
