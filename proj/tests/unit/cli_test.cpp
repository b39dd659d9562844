#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "edeco/cli/commands.hpp"
#include "edeco/cli/config.hpp"
#include "edeco/cli/report.hpp"
#include "edeco/error.hpp"

namespace {

using namespace edeco;
using namespace edeco::cli;

std::optional<ErrorKind> kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

Invocation invoke(std::vector<std::string> args) { return parse_arguments(args); }

Json run_json(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_cli(args, out, err);
  EXPECT_EQ(status, 0) << err.str();
  return Json::parse(out.str());
}

TEST(Config, EmptyFileWithCommandOverride) {
  const RunConfig cfg = parse_config("", {{"command", "selftest"}});
  EXPECT_EQ(cfg.command, Command::selftest);
  EXPECT_TRUE(cfg.parameters.empty());
  EXPECT_FALSE(cfg.output_path.has_value());
}

TEST(Config, OverrideBeatsFile) {
  const RunConfig cfg = parse_config("command = bounds\nsigma = 1e-38\n", {{"sigma", "1e-40"}});
  EXPECT_EQ(Params(cfg).number("sigma"), 1e-40);
}

TEST(Config, UnitSuffixIsMalformed) {
  EXPECT_EQ(kind_of([] { parse_config("command = bounds\nsigma = 1e-38s\n", {}); }), ErrorKind::config);
}

TEST(Config, NumberParsing) {
  EXPECT_EQ(parse_number("x", "2.5e-3"), 2.5e-3);
  EXPECT_EQ(parse_number("x", "-4"), -4.0);
  EXPECT_EQ(kind_of([] { parse_number("x", ""); }), ErrorKind::config);
  EXPECT_EQ(kind_of([] { parse_number("x", "inf"); }), ErrorKind::config);
  EXPECT_EQ(kind_of([] { parse_number("x", "nan"); }), ErrorKind::config);
  EXPECT_EQ(kind_of([] { parse_number("x", "1 2"); }), ErrorKind::config);
  EXPECT_EQ(parse_integer("n", "12"), 12u);
  EXPECT_EQ(parse_integer("n", "1e5"), 100000u);
  EXPECT_EQ(kind_of([] { parse_integer("n", "2.5"); }), ErrorKind::config);
  EXPECT_EQ(kind_of([] { parse_integer("n", "-1"); }), ErrorKind::config);
  EXPECT_TRUE(parse_flag("f", "yes"));
  EXPECT_FALSE(parse_flag("f", "0"));
  EXPECT_EQ(kind_of([] { parse_flag("f", "maybe"); }), ErrorKind::config);
}

TEST(Config, UnknownKeyRejected) {
  EXPECT_EQ(kind_of([] { parse_config("command = ghz\nsigmaa = 1\n", {}); }), ErrorKind::config);
  // A key that exists for another command is still unknown here.
  EXPECT_EQ(kind_of([] { parse_config("command = ghz\nspecies = Sr\n", {}); }), ErrorKind::config);
}

TEST(Config, DuplicateFileKeyRejected) {
  EXPECT_EQ(kind_of([] { parse_config("command = ghz\nsigma = 1\nsigma = 2\n", {}); }), ErrorKind::config);
}

TEST(Config, CrlfCommentsAndWhitespace) {
  const RunConfig cfg =
      parse_config("# header\r\ncommand = ghz \r\n\r\n  n_atoms=40  # trailing\r\nformat = csv\r\n", {});
  EXPECT_EQ(cfg.command, Command::ghz);
  EXPECT_EQ(Params(cfg).integer("n_atoms"), 40u);
  EXPECT_EQ(cfg.format, Format::csv);
}

TEST(Config, KebabCaseKeys) {
  EXPECT_EQ(normalize_key("--gamma-sp"), "gamma_sp");
  const RunConfig cfg = parse_config("command = ghz\n", {{"gamma-sp", "0.5"}});
  EXPECT_EQ(Params(cfg).number("gamma_sp"), 0.5);
}

TEST(Config, MissingRequiredKeys) {
  // design without a species needs every physical input.
  const RunConfig design = parse_config("command = design\n", {});
  EXPECT_EQ(kind_of([&] { run_command(design); }), ErrorKind::config);
  // bounds has no default sigma.
  const RunConfig bounds = parse_config("command = bounds\ncosmic = true\n", {});
  EXPECT_EQ(kind_of([&] { run_command(bounds); }), ErrorKind::config);
}

TEST(Config, UnknownCommand) {
  EXPECT_EQ(kind_of([] { parse_config("command = fly\n", {}); }), ErrorKind::config);
  EXPECT_EQ(kind_of([] { invoke({}); }), ErrorKind::config);
}

TEST(Arguments, FormsOfOptions) {
  const Invocation inv = invoke({"bounds", "--sigma", "1e-40", "--age-years=2e9", "--cosmic", "--format", "csv"});
  EXPECT_EQ(inv.config.command, Command::bounds);
  EXPECT_EQ(inv.config.parameters.at("sigma"), "1e-40");
  EXPECT_EQ(inv.config.parameters.at("age_years"), "2e9");
  EXPECT_EQ(inv.config.parameters.at("cosmic"), "true");
  EXPECT_EQ(inv.config.format, Format::csv);
  EXPECT_FALSE(inv.sweep.has_value());
}

TEST(Arguments, ConfigFileWithFlagOverride) {
  const auto path = std::filesystem::temp_directory_path() / "edeco_cli_test.cfg";
  std::ofstream(path) << "command = bounds\nsigma = 1e-38\n";
  const Invocation inv = invoke({"bounds", "--config", path.string(), "--sigma", "1e-40"});
  EXPECT_EQ(Params(inv.config).number("sigma"), 1e-40);
  std::filesystem::remove(path);
  EXPECT_EQ(kind_of([&] { invoke({"bounds", "--config", path.string()}); }), ErrorKind::io);
}

TEST(Sweep, SemiclassicalVisibilityNonIncreasing) {
  const Invocation inv = invoke({"ramsey", "--mode", "semiclassical", "--partition", "atom", "--sweep", "sigma",
                                 "--values", "0,1e-36,1e-34"});
  ASSERT_TRUE(inv.sweep.has_value());
  const Report r = run_sweep(inv.config, *inv.sweep);
  ASSERT_EQ(r.table.rows.size(), 3u);
  ASSERT_EQ(r.table.columns.at(0), "sigma");
  const auto col = std::find(r.table.columns.begin(), r.table.columns.end(), "visibility") - r.table.columns.begin();
  ASSERT_LT(static_cast<std::size_t>(col), r.table.columns.size());
  double previous = 2.0;
  std::vector<double> sigmas;
  for (const auto& row : r.table.rows) {
    sigmas.push_back(row.at(0).get<double>());
    const double v = row.at(static_cast<std::size_t>(col)).get<double>();
    EXPECT_LE(v, previous);
    previous = v;
  }
  EXPECT_EQ(sigmas, (std::vector<double>{0.0, 1e-36, 1e-34}));
  EXPECT_LT(previous, 1.0);
}

TEST(Sweep, SingleValueMatchesRun) {
  const Invocation inv = invoke({"ghz", "--n-atoms", "20", "--sigma", "1e-35", "--sweep", "wait", "--values", "0.5"});
  const Report swept = run_sweep(inv.config, *inv.sweep);
  RunConfig direct = inv.config;
  direct.parameters["wait"] = "0.5";
  const Report one = run_command(direct);
  ASSERT_EQ(swept.table.rows.size(), 1u);
  const auto& row = swept.table.rows.front();
  for (std::size_t k = 1; k < swept.table.columns.size(); ++k) {
    EXPECT_EQ(row[k], one.summary.at(swept.table.columns[k])) << swept.table.columns[k];
  }
}

TEST(Sweep, Errors) {
  EXPECT_EQ(kind_of([] { invoke({"ghz", "--sweep", "sigma", "--values", ""}); }), ErrorKind::config);
  EXPECT_EQ(kind_of([] { invoke({"ghz", "--sweep", "sigma", "--values", "1,,2"}); }), ErrorKind::config);
  EXPECT_EQ(kind_of([] { invoke({"ramsey", "--sweep", "mode", "--values", "1,2"}); }), ErrorKind::config);
  const RunConfig cfg = parse_config("command = ghz\n", {});
  EXPECT_EQ(kind_of([&] { run_sweep(cfg, Sweep{"sigma", {}}); }), ErrorKind::config);
}

TEST(Commands, RamseyGlobalDecoherenceInvisible) {
  const Json a = run_json({"ramsey", "--partition", "global", "--sigma", "1e-30"});
  const Json b = run_json({"ramsey", "--partition", "global", "--sigma", "0"});
  EXPECT_NEAR(a["summary"]["visibility"].get<double>(), b["summary"]["visibility"].get<double>(), 1e-9);
}

TEST(Commands, DesignStrontium) {
  const Json j = run_json({"design", "--species", "Sr"});
  EXPECT_EQ(j["summary"]["species"], "Sr");
  EXPECT_NEAR(j["summary"]["closed_form"]["n_opt"].get<double>(), 1e5, 1e5 * 1e-9);
  EXPECT_FALSE(j["summary"]["provenance"].get<std::string>().empty());
}

TEST(Commands, CosmicBound) {
  const Json j = run_json({"bounds", "--cosmic", "--sigma", "5.391e-44", "--age-years", "1e10"});
  const double de = j["summary"]["cosmic"]["delta_e"].get<double>();
  EXPECT_GT(de, 2e-3);
  EXPECT_LT(de, 10e-3);
  EXPECT_FALSE(j["summary"].contains("matterwave"));
}

TEST(Report, CsvSchema) {
  Table t{{"name", "value"}, {{"plain", number(0.1)}, {"needs, \"quotes\"", number(1.0 / 3.0)}}};
  EXPECT_EQ(render_csv(t),
            "name,value\nplain,0.10000000000000001\n\"needs, \"\"quotes\"\"\",0.33333333333333331\n");
  EXPECT_EQ(render_csv(Table{{"a"}, {}}), "a\n");
}

TEST(Report, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, -2.5}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
}

TEST(Report, UnboundedSentinel) {
  EXPECT_EQ(number(std::numeric_limits<double>::infinity()), kUnbounded);
  EXPECT_EQ(number(std::nan("")), kUnbounded);
  EXPECT_EQ(number_or_unbounded(std::nullopt), kUnbounded);
  EXPECT_EQ(number_or_unbounded(2.0), 2.0);
  const Json j = run_json({"bounds", "--matterwave", "--sigma", "0"});
  EXPECT_EQ(j["summary"]["matterwave"]["decoherence_length"], kUnbounded);
}

TEST(Report, JsonRoundTrip) {
  const Invocation inv = invoke({"design", "--species", "Sr"});
  const Rendered out = render(run_command(inv.config));
  const Json parsed = Json::parse(out.json);
  EXPECT_EQ(parsed.dump(2) + "\n", out.json);
  EXPECT_EQ(parsed["command"], "design");
  EXPECT_EQ(parsed["rows"].size(), parsed["summary"]["closed_form"].size());
}

TEST(Cli, DeterministicOutput) {
  std::ostringstream a, b, err;
  const std::vector<std::string> args{"ghz", "--n-atoms", "100", "--sigma", "1e-38", "--format", "csv"};
  ASSERT_EQ(run_cli(args, a, err), 0);
  ASSERT_EQ(run_cli(args, b, err), 0);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().rfind("t,coherence,survival\n", 0), 0u);
}

TEST(Cli, OutWritesThreeFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "edeco_cli_out";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ostringstream out, err;
  const std::string base = (dir / "run").string();
  ASSERT_EQ(run_cli(std::vector<std::string>{"design", "--species", "Sr", "--out", base}, out, err), 0) << err.str();
  for (const char* suffix : {".csv", ".json", ".meta.json"}) {
    EXPECT_TRUE(std::filesystem::exists(base + suffix)) << suffix;
  }
  std::ifstream meta(base + ".meta.json");
  const Json m = Json::parse(meta);
  EXPECT_EQ(m["command"], "design");
  EXPECT_TRUE(m.contains("created_utc"));
  std::ifstream data(base + ".json");
  const Json d = Json::parse(data);
  EXPECT_FALSE(d.contains("created_utc"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ErrorObjectsAndExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(run_cli(std::vector<std::string>{"bounds", "--sigma", "1e-38s"}, out, err), 2);
  const Json e = Json::parse(err.str());
  EXPECT_EQ(e["error"]["kind"], "config");
  EXPECT_FALSE(e["error"]["message"].get<std::string>().empty());
  EXPECT_TRUE(out.str().empty());

  std::ostringstream out2, err2;
  EXPECT_EQ(run_cli(std::vector<std::string>{"design", "--gamma-sp", "-1", "--delta-e", "1", "--kappa", "1e-17",
                                             "--k3", "0"},
                    out2, err2),
            1);
  EXPECT_TRUE(Json::parse(err2.str())["error"].contains("kind"));
}

}  // namespace
