// Runs every acceptance criterion and prints one line per criterion. The
// CLI determinism criterion additionally drives the installed binary.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "edeco/cli/acceptance.hpp"

#ifndef EDECO_CLI_PATH
#error "EDECO_CLI_PATH must point at the edeco executable"
#endif

namespace {

struct Captured {
  int status = -1;
  std::string out;
};

Captured capture(const std::string& command) {
  Captured c;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) c.out.append(buf.data(), n);
  c.status = pclose(pipe.release());
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool json_round_trips(const std::string& text) {
  try {
    const auto parsed = nlohmann::ordered_json::parse(text);
    return parsed.dump(2) + "\n" == text;
  } catch (const std::exception&) {
    return false;
  }
}

// Repeated binary runs of design and selftest; outputs compared byte for byte.
std::pair<bool, std::string> binary_determinism() {
  const std::string exe = EDECO_CLI_PATH;
  const auto dir = std::filesystem::temp_directory_path() / "edeco_acceptance";
  std::filesystem::create_directories(dir);
  bool ok = true;
  std::string detail;
  for (const char* tag : {"a", "b"}) {
    const Captured run = capture("\"" + exe + "\" design --species Sr --out \"" + (dir / tag).string() + "\"");
    ok = ok && run.status == 0;
  }
  const bool design_same = slurp(dir / "a.csv") == slurp(dir / "b.csv") &&
                           slurp(dir / "a.json") == slurp(dir / "b.json") && !slurp(dir / "a.json").empty();
  const bool design_json = json_round_trips(slurp(dir / "a.json"));
  const Captured s1 = capture("\"" + exe + "\" selftest");
  const Captured s2 = capture("\"" + exe + "\" selftest");
  const bool selftest_same = s1.status == 0 && s2.status == 0 && s1.out == s2.out && !s1.out.empty();
  const bool selftest_json = json_round_trips(s1.out);
  ok = ok && design_same && design_json && selftest_same && selftest_json;
  detail = std::string("binary design ") + (design_same ? "identical" : "differs") + ", selftest " +
           (selftest_same ? "identical" : "differs") + ", JSON " +
           (design_json && selftest_json ? "re-parses" : "does not re-parse");
  std::filesystem::remove_all(dir);
  return {ok, detail};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failures = 0;
  double total = 0.0;
  for (const auto& c : edeco::cli::acceptance_criteria()) {
    const auto start = clock::now();
    edeco::cli::CriterionResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(clock::now() - start).count();
    total += seconds;
    const bool in_budget = seconds <= c.budget_seconds;
    const bool passed = r.passed && in_budget;
    failures += passed ? 0 : 1;
    std::printf("%s %2d %-34s %6.2f s (budget %4.0f s)  %s\n", passed ? "PASS" : "FAIL", c.id, c.name.c_str(),
                seconds, c.budget_seconds, r.detail.c_str());
    if (c.id == 13) {
      const auto t0 = clock::now();
      const auto [ok, detail] = binary_determinism();
      const double s = std::chrono::duration<double>(clock::now() - t0).count();
      total += s;
      const bool binary_passed = ok && s <= c.budget_seconds;
      failures += binary_passed ? 0 : 1;
      std::printf("%s %2d %-34s %6.2f s (budget %4.0f s)  %s\n", binary_passed ? "PASS" : "FAIL", c.id,
                  "CLI determinism (binary runs)", s, c.budget_seconds, detail.c_str());
    }
  }
  std::printf("%s: %d failing, %.1f s total\n", failures == 0 ? "ALL PASS" : "FAILURES", failures, total);
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
