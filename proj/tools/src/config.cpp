#include "edeco/cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "edeco/error.hpp"

namespace edeco::cli {
namespace {

using enum ValueType;

constexpr std::array kRamseyKeys{
    KeySpec{"mode", text, "quantized", "quantized | semiclassical"},
    KeySpec{"field", text, "fock", "fock | coherent"},
    KeySpec{"n", integer, "12", "Fock photon number"},
    KeySpec{"alpha", number, "5", "coherent amplitude (real)"},
    KeySpec{"n_max", integer, "0", "Fock cutoff, 0 = automatic"},
    KeySpec{"coupling", number, "1e6", "JC coupling g, rad/s"},
    KeySpec{"pulse_area", number, "1.5707963267948966", "rotation per pulse, rad"},
    KeySpec{"detuning", number, "0", "atomic minus field frequency, rad/s"},
    KeySpec{"delta_e", number, "1", "atomic gap, eV"},
    KeySpec{"wait", number, "1", "free evolution time, s"},
    KeySpec{"phases", integer, "64", "phase samples on [0, 2 pi)"},
    KeySpec{"partition", text, "none", "none | global | local | atom | field"},
    KeySpec{"sigma", number, "0", "s"},
    KeySpec{"gamma_sp", number, "0", "spontaneous decay rate, 1/s"},
};

constexpr std::array kMichelsonKeys{
    KeySpec{"alpha", number, "2", "input coherent amplitude (real)"},
    KeySpec{"n_max", integer, "0", "Fock cutoff per arm, 0 = automatic"},
    KeySpec{"arm_time", number, "1", "s"},
    KeySpec{"photon_energy", number, "1", "eV"},
    KeySpec{"partition", text, "none", "none | global | local | arm_c | arm_d"},
    KeySpec{"sigma", number, "0", "s"},
};

constexpr std::array kGhzKeys{
    KeySpec{"n_atoms", integer, "1", "atoms in the GHZ state"},
    KeySpec{"delta_e", number, "1", "eV"},
    KeySpec{"sigma", number, "0", "s"},
    KeySpec{"gamma_sp", number, "0", "single-atom decay rate, 1/s"},
    KeySpec{"three_body_rate", number, "0", "k3 N^3 / V^2, 1/s"},
    KeySpec{"wait", number, "1", "s"},
    KeySpec{"points", integer, "11", "samples on [0, wait]"},
};

constexpr std::array kDesignKeys{
    KeySpec{"species", text, "", "built-in species (Sr)"},
    KeySpec{"gamma_sp", number, "", "1/s"},
    KeySpec{"delta_e", number, "", "eV"},
    KeySpec{"mass", number, "", "kg"},
    KeySpec{"kappa", number, "", "m^3/s"},
    KeySpec{"k3", number, "", "m^6/s"},
    KeySpec{"grid_decades", number, "8", "span of the oracle grids"},
    KeySpec{"grid_per_decade", integer, "100", "oracle grid density"},
};

constexpr std::array kBoundsKeys{
    KeySpec{"cosmic", flag, "false", "cosmic coherence bound"},
    KeySpec{"single_atom", flag, "false", "single-atom sigma reach"},
    KeySpec{"matterwave", flag, "false", "matter-wave exclusion"},
    KeySpec{"distance", flag, "false", "distance reach"},
    KeySpec{"sigma", number, "", "s"},
    KeySpec{"age", number, "", "s (overrides age_years)"},
    KeySpec{"age_years", number, "1e10", "Julian years"},
    KeySpec{"gamma", number, "1e-3", "detectable single-atom rate, 1/s"},
    KeySpec{"delta_e", number, "1", "eV"},
    KeySpec{"mass", number, "3.82e-26", "kg"},
    KeySpec{"velocity", number, "3000", "m/s"},
    KeySpec{"path_separation", number, "20e-6", "m"},
    KeySpec{"flight_length", number, "1", "m"},
    KeySpec{"gamma_sp", number, "1e-3", "1/s"},
    KeySpec{"distance_gamma", number, "1e-8", "entangled-state rate, 1/s"},
    KeySpec{"coherence_time", number, "1", "laser coherence time, s"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorKind::config, message);
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::ramsey: return "ramsey";
    case Command::michelson: return "michelson";
    case Command::ghz: return "ghz";
    case Command::design: return "design";
    case Command::bounds: return "bounds";
    case Command::selftest: return "selftest";
  }
  return "unknown";
}

Command parse_command(std::string_view text) {
  for (Command c : {Command::ramsey, Command::michelson, Command::ghz, Command::design,
                    Command::bounds, Command::selftest}) {
    if (text == to_string(c)) return c;
  }
  config_error("unknown command '" + std::string(text) + "'");
}

std::span<const KeySpec> keys_for(Command c) {
  switch (c) {
    case Command::ramsey: return kRamseyKeys;
    case Command::michelson: return kMichelsonKeys;
    case Command::ghz: return kGhzKeys;
    case Command::design: return kDesignKeys;
    case Command::bounds: return kBoundsKeys;
    case Command::selftest: return {};
  }
  return {};
}

const KeySpec* find_key(Command c, std::string_view name) {
  for (const KeySpec& k : keys_for(c)) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

std::string normalize_key(std::string_view key) {
  while (!key.empty() && key.front() == '-') key.remove_prefix(1);
  std::string out(key);
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

double parse_number(std::string_view key, std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    config_error("malformed number for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

std::size_t parse_integer(std::string_view key, std::string_view text) {
  const double value = parse_number(key, text);
  if (value < 0.0 || value > 9007199254740992.0 || std::floor(value) != value) {
    config_error("'" + std::string(key) + "' needs a non-negative integer, got '" + std::string(text) + "'");
  }
  return static_cast<std::size_t>(value);
}

bool parse_flag(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  config_error("'" + std::string(key) + "' is a flag (true/false), got '" + std::string(text) + "'");
}

RunConfig parse_config(std::string_view file_contents, const Overrides& overrides) {
  std::map<std::string, std::string> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= file_contents.size()) {
    const auto next = file_contents.find('\n', pos);
    std::string_view line = file_contents.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    pos = next == std::string_view::npos ? file_contents.size() + 1 : next + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      config_error("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) config_error("config line " + std::to_string(line_no) + ": empty key");
    if (!entries.emplace(key, std::string(value)).second) {
      config_error("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  for (const auto& [key, value] : overrides) entries[normalize_key(key)] = value;

  RunConfig cfg;
  const auto take = [&](const char* name) -> std::optional<std::string> {
    const auto it = entries.find(name);
    if (it == entries.end()) return std::nullopt;
    std::string v = it->second;
    entries.erase(it);
    return v;
  };
  const auto command = take("command");
  if (!command) config_error("no command given");
  cfg.command = parse_command(*command);
  if (const auto out = take("out")) cfg.output_path = std::filesystem::path(*out);
  if (const auto format = take("format")) {
    if (*format == "csv") {
      cfg.format = Format::csv;
    } else if (*format == "json") {
      cfg.format = Format::json;
    } else {
      config_error("format must be csv or json, got '" + *format + "'");
    }
  }

  for (const auto& [key, value] : entries) {
    const KeySpec* spec = find_key(cfg.command, key);
    if (spec == nullptr) {
      config_error("unknown key '" + key + "' for command " + std::string(to_string(cfg.command)));
    }
    switch (spec->type) {
      case ValueType::number: parse_number(key, value); break;
      case ValueType::integer: parse_integer(key, value); break;
      case ValueType::flag: parse_flag(key, value); break;
      case ValueType::text:
        if (value.empty()) config_error("'" + key + "' needs a value");
        break;
    }
  }
  cfg.parameters = std::move(entries);
  return cfg;
}

bool Params::has(std::string_view key) const {
  return cfg_->parameters.find(std::string(key)) != cfg_->parameters.end();
}

std::string Params::raw(std::string_view key) const {
  const KeySpec* spec = find_key(cfg_->command, key);
  if (spec == nullptr) {
    throw Error(ErrorKind::config, "internal: key '" + std::string(key) + "' is not in the schema");
  }
  const auto it = cfg_->parameters.find(std::string(key));
  if (it != cfg_->parameters.end()) return it->second;
  if (spec->fallback.empty()) {
    config_error("missing required key '" + std::string(key) + "' for command " +
                 std::string(to_string(cfg_->command)));
  }
  return std::string(spec->fallback);
}

void Params::require(std::string_view key) const { raw(key); }

double Params::number(std::string_view key) const { return parse_number(key, raw(key)); }
std::size_t Params::integer(std::string_view key) const { return parse_integer(key, raw(key)); }
std::string Params::text(std::string_view key) const { return raw(key); }
bool Params::flag(std::string_view key) const { return parse_flag(key, raw(key)); }

Invocation parse_arguments(std::span<const std::string> args) {
  Overrides overrides;
  std::string file_text;
  std::optional<std::string> sweep_key;
  std::optional<std::string> sweep_values;

  std::size_t i = 0;
  if (i < args.size() && args[i].rfind("--", 0) != 0) overrides.emplace_back("command", args[i++]);
  for (; i < args.size(); ++i) {
    const std::string& token = args[i];
    if (token.rfind("--", 0) != 0 || token.size() == 2) {
      config_error("unexpected argument '" + token + "'");
    }
    std::string key;
    std::optional<std::string> value;
    if (const auto eq = token.find('='); eq != std::string::npos) {
      key = normalize_key(std::string_view(token).substr(0, eq));
      value = token.substr(eq + 1);
    } else {
      key = normalize_key(token);
      if (i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0) value = args[++i];
    }

    if (key == "config") {
      if (!value) config_error("--config needs a path");
      std::ifstream in(*value, std::ios::binary);
      if (!in) throw Error(ErrorKind::io, "cannot read config file '" + *value + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      file_text = buf.str();
    } else if (key == "sweep") {
      if (!value) config_error("--sweep needs a parameter name");
      sweep_key = normalize_key(*value);
    } else if (key == "values") {
      sweep_values = value.value_or("");
    } else {
      overrides.emplace_back(key, value.value_or("true"));
    }
  }

  Invocation inv{parse_config(file_text, overrides), std::nullopt};
  if (sweep_key.has_value() != sweep_values.has_value()) {
    config_error("--sweep and --values must be given together");
  }
  if (sweep_key) {
    const KeySpec* spec = find_key(inv.config.command, *sweep_key);
    if (spec == nullptr) {
      config_error("unknown sweep key '" + *sweep_key + "' for command " +
                   std::string(to_string(inv.config.command)));
    }
    if (spec->type != ValueType::number && spec->type != ValueType::integer) {
      config_error("sweep key '" + *sweep_key + "' is not numeric");
    }
    Sweep sweep{*sweep_key, {}};
    std::string_view rest = *sweep_values;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      if (item.empty()) config_error("empty entry in --values");
      if (spec->type == ValueType::number) {
        parse_number(sweep.key, item);
      } else {
        parse_integer(sweep.key, item);
      }
      sweep.values.emplace_back(item);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
      if (rest.empty()) config_error("empty entry in --values");
    }
    if (sweep.values.empty()) config_error("--values must list at least one value");
    inv.sweep = std::move(sweep);
  }
  return inv;
}

}  // namespace edeco::cli
