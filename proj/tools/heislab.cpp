#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "heislab/config.hpp"
#include "heislab/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spherical means on the Heisenberg group: verification suites"};
  std::string suite, config_path, out_dir = "out";
  std::uint64_t seed = 0;
  bool dump_defaults = false;
  app.add_option("suite", suite, "suite name")->check(CLI::IsMember(heislab::suite_names()));
  app.add_option("--config", config_path, "INI config file");
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "overrides run.seed");
  app.add_flag("--print-defaults", dump_defaults, "print the embedded default config and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (dump_defaults) {
    std::cout << heislab::RunConfig::defaults_text();
    return 0;
  }
  if (suite.empty() || config_path.empty()) {
    std::cerr << "usage: heislab <suite> --config <path> [--out <dir>] [--seed <u64>]\n";
    return 2;
  }
  try {
    auto cfg = heislab::RunConfig::load(config_path);
    if (*seed_opt) cfg.set("run.seed", std::to_string(seed));
    auto rep = heislab::run_suite(suite, cfg);
    rep.write(out_dir, cfg);
    for (const auto& a : rep.assertions)
      std::cout << (a.pass ? "ok   " : "FAIL ") << a.name << (a.detail.empty() ? "" : "  [" + a.detail + "]")
                << '\n';
    std::cout << suite << ": " << (rep.passed() ? "pass" : "fail") << " (" << out_dir << "/summary.json)\n";
    return rep.passed() ? 0 : 1;
  } catch (const heislab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
