#include "edeco/cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <vector>

#include "edeco/cli/acceptance.hpp"
#include "edeco/constants.hpp"
#include "edeco/error.hpp"
#include "edeco/interferometry/ghz.hpp"
#include "edeco/interferometry/michelson.hpp"
#include "edeco/interferometry/ramsey.hpp"
#include "edeco/sensitivity/bounds.hpp"

#ifndef EDECO_VERSION
#define EDECO_VERSION "unknown"
#endif

namespace edeco::cli {
namespace {

Json echo_parameters(const RunConfig& cfg) {
  const Params p(cfg);
  Json out = Json::object();
  for (const KeySpec& k : keys_for(cfg.command)) {
    if (!p.has(k.name) && k.fallback.empty()) continue;
    switch (k.type) {
      case ValueType::number: out[std::string(k.name)] = p.number(k.name); break;
      case ValueType::integer: out[std::string(k.name)] = p.integer(k.name); break;
      case ValueType::flag: out[std::string(k.name)] = p.flag(k.name); break;
      case ValueType::text: out[std::string(k.name)] = p.text(k.name); break;
    }
  }
  return out;
}

Report ramsey(const RunConfig& cfg) {
  const Params p(cfg);
  RamseyConfig rc;
  const std::string field = p.text("field");
  if (field == "fock") {
    rc.field = FieldState::fock(p.integer("n"));
  } else if (field == "coherent") {
    rc.field = FieldState::coherent(p.number("alpha"));
  } else {
    throw Error(ErrorKind::config, "field must be fock or coherent, got '" + field + "'");
  }
  rc.n_max = p.integer("n_max");
  rc.coupling = p.number("coupling");
  rc.pulse_area = p.number("pulse_area");
  rc.detuning = p.number("detuning");
  rc.omega0 = constants::angular_frequency_ev(p.number("delta_e"));
  rc.wait = p.number("wait");
  rc.phases = uniform_phases(p.integer("phases"));
  rc.partition = parse_partition(p.text("partition"));
  rc.sigma = p.number("sigma");
  rc.spontaneous_rate = p.number("gamma_sp");

  const std::string mode = p.text("mode");
  FringeResult fringe;
  if (mode == "quantized") {
    fringe = run_ramsey_quantized(rc);
  } else if (mode == "semiclassical") {
    fringe = run_ramsey_semiclassical(rc);
  } else {
    throw Error(ErrorKind::config, "mode must be quantized or semiclassical, got '" + mode + "'");
  }

  Report r;
  r.command = cfg.command;
  r.parameters = echo_parameters(cfg);
  r.summary["visibility"] = number(fringe.visibility);
  r.summary["points"] = fringe.points.size();
  r.table.columns = {"phi", "p_g"};
  for (const FringePoint& pt : fringe.points) r.table.rows.push_back({number(pt.phi), number(pt.p_g)});
  return r;
}

Report michelson(const RunConfig& cfg) {
  const Params p(cfg);
  MichelsonConfig mc;
  mc.alpha = p.number("alpha");
  mc.n_max = p.integer("n_max");
  mc.arm_time = p.number("arm_time");
  mc.mode_frequency = constants::angular_frequency_ev(p.number("photon_energy"));
  mc.partition = parse_partition(p.text("partition"));
  mc.sigma = p.number("sigma");
  const MichelsonResult res = run_michelson(mc);

  Report r;
  r.command = cfg.command;
  r.parameters = echo_parameters(cfg);
  r.summary["mean_photons_out_a"] = number(res.mean_photons_out_a);
  r.summary["mean_photons_out_b"] = number(res.mean_photons_out_b);
  r.summary["n_max"] = res.arm_state.space().dim_of("arm_c") - 1;
  r.table.columns = {"mean_photons_out_a", "mean_photons_out_b"};
  r.table.rows.push_back({number(res.mean_photons_out_a), number(res.mean_photons_out_b)});
  return r;
}

Report ghz(const RunConfig& cfg) {
  const Params p(cfg);
  GhzConfig gc;
  gc.n_atoms = p.integer("n_atoms");
  gc.omega0 = constants::angular_frequency_ev(p.number("delta_e"));
  gc.sigma = p.number("sigma");
  gc.gamma_sp = p.number("gamma_sp");
  gc.three_body_rate = p.number("three_body_rate");
  gc.wait = p.number("wait");
  const GhzResult end = run_ghz(gc);
  const auto curve = ghz_curve(gc, p.integer("points"));

  Report r;
  r.command = cfg.command;
  r.parameters = echo_parameters(cfg);
  r.summary["coherence"] = number(end.coherence);
  r.summary["survival"] = number(end.survival);
  r.summary["effective_rate"] = number(end.effective_rate);
  r.table.columns = {"t", "coherence", "survival"};
  for (const GhzPoint& pt : curve) {
    r.table.rows.push_back({number(pt.t), number(pt.value.coherence), number(pt.value.survival)});
  }
  return r;
}

std::vector<std::pair<std::string, double>> design_fields(const DesignResult& d) {
  return {{"n_opt", d.n_opt},
          {"v_opt", d.v_opt},
          {"gamma_min", d.gamma_min},
          {"sigma_min", d.sigma_min},
          {"l_max", d.l_max},
          {"creation_time", d.creation_time},
          {"creation_margin", d.creation_margin},
          {"rate_gravitational", d.rates.gravitational},
          {"rate_spontaneous", d.rates.spontaneous},
          {"rate_three_body", d.rates.three_body}};
}

Report design(const RunConfig& cfg) {
  const Params p(cfg);
  SpeciesParams sp;
  std::string name = "custom";
  std::string provenance = "user supplied";
  if (p.has("species")) {
    const SpeciesEntry* entry = find_species(p.text("species"));
    if (entry == nullptr) {
      throw Error(ErrorKind::config, "unknown species '" + p.text("species") + "'");
    }
    sp = entry->params;
    name = entry->name;
    provenance = entry->provenance;
  } else {
    for (const char* key : {"gamma_sp", "delta_e", "kappa", "k3"}) p.require(key);
  }
  if (p.has("gamma_sp")) sp.gamma_sp = p.number("gamma_sp");
  if (p.has("delta_e")) sp.delta_e = p.number("delta_e");
  if (p.has("mass")) sp.mass = p.number("mass");
  if (p.has("kappa")) {
    sp.kappa = p.number("kappa");
    sp.scattering.reset();
  }
  if (p.has("k3")) sp.k3 = p.number("k3");
  if (p.has("mass") && !p.has("kappa")) sp.scattering.reset();

  const DesignResult exact = ghz_design(sp);
  const double decades = p.number("grid_decades");
  const int per_decade = static_cast<int>(p.integer("grid_per_decade"));
  const auto n_grid = log_grid(exact.n_opt, decades, per_decade);
  const auto v_grid = log_grid(exact.v_opt, decades, per_decade);
  const DesignResult grid = ghz_design_grid(sp, n_grid, v_grid);

  Report r;
  r.command = cfg.command;
  r.parameters = echo_parameters(cfg);
  r.summary["species"] = name;
  r.summary["provenance"] = provenance;
  Json inputs = Json::object();
  inputs["gamma_sp"] = sp.gamma_sp;
  inputs["delta_e"] = sp.delta_e;
  inputs["mass"] = sp.mass;
  inputs["kappa"] = sp.kappa;
  inputs["k3"] = sp.k3;
  r.summary["inputs"] = inputs;
  Json closed = Json::object();
  Json brute = Json::object();
  Json diff = Json::object();
  r.table.columns = {"quantity", "closed_form", "grid", "relative_difference"};
  const auto a = design_fields(exact);
  const auto b = design_fields(grid);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double rel = (b[k].second - a[k].second) / a[k].second;
    closed[a[k].first] = number(a[k].second);
    brute[a[k].first] = number(b[k].second);
    diff[a[k].first] = number(rel);
    r.table.rows.push_back({a[k].first, number(a[k].second), number(b[k].second), number(rel)});
  }
  r.summary["closed_form"] = closed;
  r.summary["grid"] = brute;
  r.summary["relative_difference"] = diff;
  return r;
}

Report bounds(const RunConfig& cfg) {
  const Params p(cfg);
  bool cosmic = p.flag("cosmic");
  bool single = p.flag("single_atom");
  bool matter = p.flag("matterwave");
  bool distance = p.flag("distance");
  if (!cosmic && !single && !matter && !distance) cosmic = single = matter = distance = true;

  Report r;
  r.command = cfg.command;
  r.parameters = echo_parameters(cfg);
  r.table.columns = {"section", "quantity", "value", "unit"};
  auto row = [&](const char* section, const char* quantity, const Json& value, const char* unit) {
    r.table.rows.push_back({section, quantity, value, unit});
    r.summary[section][quantity] = value;
  };

  if (cosmic) {
    if (p.has("age") && p.has("age_years")) {
      throw Error(ErrorKind::config, "give either age or age_years, not both");
    }
    const double age = p.has("age") ? p.number("age") : p.number("age_years") * constants::julian_year;
    row("cosmic", "age", number(age), "s");
    row("cosmic", "delta_e", number(cosmic_bound(p.number("sigma"), age)), "eV");
  }
  if (single) {
    row("single_atom", "sigma", number(single_atom_reach(p.number("gamma"), p.number("delta_e"))), "s");
  }
  if (matter) {
    const MatterwaveBound b = matterwave_bound(p.number("mass"), p.number("velocity"),
                                               p.number("path_separation"), p.number("sigma"),
                                               p.number("flight_length"));
    row("matterwave", "rate", number(b.rate), "1/s");
    row("matterwave", "decoherence_length", number_or_unbounded(b.decoherence_length), "m");
    row("matterwave", "excluded", b.excluded, "");
  }
  if (distance) {
    const DistanceReach d = distance_reach(p.number("distance_gamma"), p.number("gamma_sp"),
                                           p.number("coherence_time"));
    row("distance", "l_decoherence", number_or_unbounded(d.l_decoherence), "m");
    row("distance", "l_laser", number(d.l_laser), "m");
    row("distance", "l_max", number(d.l_max), "m");
  }
  return r;
}

Report selftest(const RunConfig& cfg) {
  Report r;
  r.command = cfg.command;
  r.parameters = Json::object();
  r.table.columns = {"criterion", "name", "passed", "detail"};
  std::size_t passed = 0;
  const auto& criteria = acceptance_criteria();
  for (const Criterion& c : criteria) {
    CriterionResult res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res = {false, std::string("error: ") + e.what()};
    }
    passed += res.passed ? 1 : 0;
    r.table.rows.push_back({c.id, c.name, res.passed, res.detail});
  }
  r.summary["total"] = criteria.size();
  r.summary["passed"] = passed;
  r.summary["failed"] = criteria.size() - passed;
  r.passed = passed == criteria.size();
  r.summary["all_passed"] = r.passed;
  return r;
}

void flatten(const Json& value, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (value.is_object()) {
    for (const auto& [k, v] : value.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (!value.is_array()) {
    out.emplace_back(prefix, value);
  }
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::io, "failed writing '" + path.string() + "'");
}

}  // namespace

std::span<const SpeciesEntry> species_table() {
  static const std::vector<SpeciesEntry> table{
      {"Sr",
       SpeciesParams{1e-3, 1.0, 87.0 * 1.66053906660e-27, 1e-17, 1e-41, std::nullopt},
       "order-of-magnitude working point for strontium clock atoms; not measured values"},
  };
  return table;
}

const SpeciesEntry* find_species(std::string_view name) {
  for (const SpeciesEntry& e : species_table()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Report run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::ramsey: return ramsey(cfg);
    case Command::michelson: return michelson(cfg);
    case Command::ghz: return ghz(cfg);
    case Command::design: return design(cfg);
    case Command::bounds: return bounds(cfg);
    case Command::selftest: return selftest(cfg);
  }
  throw Error(ErrorKind::config, "unknown command");
}

Report run_sweep(const RunConfig& cfg, const Sweep& sweep) {
  const KeySpec* spec = find_key(cfg.command, sweep.key);
  if (spec == nullptr || (spec->type != ValueType::number && spec->type != ValueType::integer)) {
    throw Error(ErrorKind::config, "sweep key '" + sweep.key + "' is not numeric");
  }
  if (sweep.values.empty()) throw Error(ErrorKind::config, "sweep needs at least one value");

  Report r;
  r.command = cfg.command;
  RunConfig base = cfg;
  base.parameters.erase(sweep.key);
  r.parameters = echo_parameters(base);
  Json values = Json::array();
  for (const std::string& v : sweep.values) {
    RunConfig point = cfg;
    point.parameters[sweep.key] = v;
    const Json typed = spec->type == ValueType::number ? Json(parse_number(sweep.key, v))
                                                       : Json(parse_integer(sweep.key, v));
    values.push_back(typed);
    const Report one = run_command(point);
    r.passed = r.passed && one.passed;
    std::vector<std::pair<std::string, Json>> cells;
    flatten(one.summary, "", cells);
    if (r.table.columns.empty()) {
      r.table.columns.push_back(sweep.key);
      for (const auto& [name, value] : cells) r.table.columns.push_back(name);
    }
    std::vector<Json> row{typed};
    for (const auto& [name, value] : cells) row.push_back(value);
    r.table.rows.push_back(std::move(row));
  }
  r.summary["sweep"] = sweep.key;
  r.summary["values"] = values;
  return r;
}

Rendered render(const Report& report) { return {render_csv(report.table), render_json(report)}; }

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    if (args.empty() || args[0] == "--help" || args[0] == "help") {
      std::ostream& os = args.empty() ? err : out;
      os << "usage: edeco <command> [--key value ...] [--config path] [--out path]\n"
            "             [--format csv|json] [--sweep key --values a,b,c]\n";
      for (Command c : {Command::ramsey, Command::michelson, Command::ghz, Command::design,
                        Command::bounds, Command::selftest}) {
        os << "\n" << to_string(c) << "\n";
        for (const KeySpec& k : keys_for(c)) {
          os << "  --" << k.name;
          if (!k.fallback.empty()) os << " (" << k.fallback << ")";
          os << "  " << k.help << "\n";
        }
      }
      return args.empty() ? 2 : 0;
    }

    const Invocation inv = parse_arguments(args);
    const Report report = inv.sweep ? run_sweep(inv.config, *inv.sweep) : run_command(inv.config);
    const Rendered text = render(report);

    if (inv.config.output_path) {
      std::filesystem::path base = *inv.config.output_path;
      if (base.extension() == ".csv" || base.extension() == ".json") base.replace_extension();
      const auto with = [&](const char* suffix) { return std::filesystem::path(base.string() + suffix); };
      write_file(with(".csv"), text.csv);
      write_file(with(".json"), text.json);
      Json meta = Json::object();
      meta["tool"] = "edeco";
      meta["version"] = EDECO_VERSION;
      meta["command"] = std::string(to_string(inv.config.command));
      meta["arguments"] = std::vector<std::string>(args.begin(), args.end());
      meta["created_utc"] = utc_now();
      meta["files"] = {with(".csv").filename().string(), with(".json").filename().string()};
      write_file(with(".meta.json"), meta.dump(2) + "\n");
    } else {
      out << (inv.config.format == Format::csv ? text.csv : text.json);
    }
    return report.passed ? 0 : 1;
  } catch (const Error& e) {
    Json obj = Json::object();
    obj["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    err << obj.dump() << "\n";
    return e.kind() == ErrorKind::config ? 2 : 1;
  } catch (const std::exception& e) {
    Json obj = Json::object();
    obj["error"] = {{"kind", "internal"}, {"message", e.what()}};
    err << obj.dump() << "\n";
    return 1;
  }
}

}  // namespace edeco::cli
