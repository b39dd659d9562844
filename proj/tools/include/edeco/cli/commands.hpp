#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "edeco/cli/config.hpp"
#include "edeco/cli/report.hpp"
#include "edeco/sensitivity/design.hpp"

namespace edeco::cli {

struct SpeciesEntry {
  std::string name;
  SpeciesParams params;
  std::string provenance;
};

std::span<const SpeciesEntry> species_table();
const SpeciesEntry* find_species(std::string_view name);

Report run_command(const RunConfig& cfg);
/// One row per value, in the given order; each row is the flattened summary
/// of the command run with `sweep.key` set to that value.
Report run_sweep(const RunConfig& cfg, const Sweep& sweep);

struct Rendered {
  std::string csv;
  std::string json;
};
Rendered render(const Report& report);

/// Whole command line (program name excluded): parse, run, print or write
/// `<out>.csv`, `<out>.json` and `<out>.meta.json`. Errors go to `err` as a
/// JSON object. Returns the process exit status.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace edeco::cli
