#include "heislab/config.hpp"

#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

namespace heislab {

namespace pt = boost::property_tree;

namespace {

const char* kDefaults = R"ini([run]
n = 1
seed = 42

[truncation]
K_cap = 100000
Lambda = 0
panels = 8
order = 24
tol = 1e-12

[means]
points = 10
radii = 0.5 1 2
dilations = 0.5 2
dilation_points = 4
sphere_nodes = 128
rel_tol = 1e-3
max_seconds = 300

[spectral]
ident_tol = 1e-8
ident_alpha = 0 0.5 1
ident_beta = 0.5 1 2
ident_k = 0 1 3
ident_t = 0.5 1 2
kernel_tol = 1e-8
transform_tol = 1e-6
derivative_tol = 1e-6

[laguerre]
k_max = 500
samples = 10000
refine = 4
growth_tol = 0.01
lambda_lo = 10
lambda_hi = 10000
lambda_count = 25
slope_tol = 0.15

[dyadic]
delta = 0.01
k_min = 0
k_max = 2
relaxed = false
half_width = 1
cloud_seeds = 40
cloud_sub = 30
cloud_leaf = 20
cloud_s1 = 0.03
cloud_s2 = 3e-4
balls = 100
max_systems = 8
inner = 0.08333333333333333
outer = 4
max_seconds = 120

[sparse]
delta = 0.5
relaxed = true
half_width = 1
nz = 30
nt = 192
k_max = 3
systems = 2
sphere_m = 32
sphere_radial = 0
level_offset = 2
ball_power = 2
mean_power = 3
p = 2
q = 2
cz_mult = 2
r_nodes = 4

[domination]
dims = 1 2
refine = 2
stability = 0.2
n1_nz = 30
n1_nt = 192
n1_k_max = 3
n1_j_lo = 1
n1_j_hi = 4
n1_sphere_m = 32
n1_sphere_radial = 0
n2_nz = 9
n2_nt = 16
n2_k_max = 1
n2_j_lo = 1
n2_j_hi = 3
n2_sphere_m = 8
n2_sphere_radial = 3

[continuity]
n = 2
p = 2
q = 2
r = 1
j_lo = 1
j_hi = 6
hz = 3.5
ht = 4
panels = 2
order = 6
sphere_m = 8
sphere_radial = 3
min_slope = 0.8

[weights]
p = 1.5 2 3
p0 = 1
q0 = 1.25
lorentz_r = 1.5 2 3
proba_p = 2 3 4
proba_tol = 1e-8

[regions]
n = 2
n_lo = 2
n_hi = 10
)ini";

}  // namespace

const char* RunConfig::defaults_text() { return kDefaults; }

RunConfig::RunConfig() {
  std::istringstream is(kDefaults);
  pt::read_ini(is, tree_);
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  pt::ptree user;
  try {
    std::istringstream is(text);
    pt::read_ini(is, user);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  for (const auto& [section, body] : user) {
    if (body.empty()) throw ConfigError("config: key outside a section: " + section);
    for (const auto& [key, val] : body) cfg.set(section + "." + key, val.data());
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!tree_.get_child_optional(key)) throw ConfigError("unknown config key: " + key);
  tree_.put(key, value);
}

std::string RunConfig::str(const std::string& key) const {
  auto v = tree_.get_optional<std::string>(key);
  if (!v) throw ConfigError("missing config key: " + key);
  return *v;
}

double RunConfig::num(const std::string& key) const {
  const std::string s = str(key);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: " + key + " = " + s);
  }
  if (used != s.size()) throw ConfigError("not a number: " + key + " = " + s);
  return v;
}

long RunConfig::integer(const std::string& key) const {
  const std::string s = str(key);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not an integer: " + key + " = " + s);
  }
  if (used != s.size()) throw ConfigError("not an integer: " + key + " = " + s);
  return v;
}

bool RunConfig::flag(const std::string& key) const {
  const std::string s = str(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("not a boolean: " + key + " = " + s);
}

std::vector<double> RunConfig::list(const std::string& key) const {
  std::istringstream is(str(key));
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(tok, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ConfigError("bad list entry in " + key + ": " + tok);
  }
  if (out.empty()) throw ConfigError("empty list: " + key);
  return out;
}

std::uint64_t RunConfig::seed() const {
  const std::string s = str("run.seed");
  if (s.empty() || s[0] == '-' || s[0] == '+') throw ConfigError("run.seed must be an unsigned 64-bit integer");
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("run.seed must be an unsigned 64-bit integer");
}

}  // namespace heislab
