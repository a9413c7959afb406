#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "heislab/config.hpp"

namespace heislab {

struct Assertion {
  std::string name;
  int criterion = 0;  // acceptance criterion, 0 for supporting checks
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Assertion> assertions;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, std::string>> files;  // CSV name, contents

  bool check(int criterion, const std::string& name, bool pass, const std::string& detail = {});
  bool passed() const;
  bool has(int criterion) const;
  bool passed(int criterion) const;
  nlohmann::ordered_json summary(const RunConfig& cfg) const;
  // summary.json, the CSVs and, on failure, failures.json
  void write(const std::filesystem::path& dir, const RunConfig& cfg) const;
};

const std::vector<std::string>& suite_names();

// Throws ConfigError for invalid settings.
Report run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace heislab
