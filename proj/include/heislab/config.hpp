#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

namespace heislab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat INI with sections. Every key has an embedded default; unknown keys are errors.
class RunConfig {
 public:
  RunConfig();  // defaults only
  static RunConfig load(const std::string& path);
  static RunConfig parse(const std::string& ini_text);
  static const char* defaults_text();

  void set(const std::string& key, const std::string& value);  // "section.key"
  std::string str(const std::string& key) const;
  double num(const std::string& key) const;
  long integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;
  std::uint64_t seed() const;

  const boost::property_tree::ptree& tree() const { return tree_; }

 private:
  boost::property_tree::ptree tree_;
};

}  // namespace heislab
