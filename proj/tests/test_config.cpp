#include "doctest.h"
#include "heislab/config.hpp"
#include "heislab/suites.hpp"

using namespace heislab;

TEST_CASE("defaults") {
  RunConfig c;
  CHECK(c.integer("run.n") == 1);
  CHECK(c.seed() == 42u);
  CHECK(c.num("dyadic.delta") == 0.01);
  CHECK(c.list("means.radii") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK_FALSE(c.flag("dyadic.relaxed"));
  CHECK(c.flag("sparse.relaxed"));
}

TEST_CASE("overrides and errors") {
  auto c = RunConfig::parse("[run]\nn = 2\n[means]\npoints = 12\n");
  CHECK(c.integer("run.n") == 2);
  CHECK(c.integer("means.points") == 12);
  CHECK(c.integer("means.sphere_nodes") == 128);
  CHECK_THROWS_AS(RunConfig::parse("[run]\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("[nosuch]\nn = 1\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/x.ini"), ConfigError);
  CHECK_THROWS_AS(c.set("run.bogus", "1"), ConfigError);
  c.set("run.seed", "7");
  CHECK(c.seed() == 7u);
  c.set("run.seed", "-7");
  CHECK_THROWS_AS(c.seed(), ConfigError);
  c.set("means.points", "ten");
  CHECK_THROWS_AS(c.integer("means.points"), ConfigError);
}

TEST_CASE("invalid settings surface as config errors") {
  RunConfig c;
  c.set("run.n", "7");
  CHECK_THROWS_AS(run_suite("laguerre-verify", c), ConfigError);
  CHECK_THROWS_AS(run_suite("no-such-suite", RunConfig()), ConfigError);
  RunConfig d;
  d.set("sparse.relaxed", "false");
  CHECK_THROWS_AS(run_suite("sparse-verify", d), ConfigError);
}

TEST_CASE("regions suite is deterministic") {
  RunConfig c;
  auto a = run_suite("regions", c), b = run_suite("regions", c);
  CHECK(a.passed());
  CHECK(a.summary(c).dump() == b.summary(c).dump());
  CHECK(a.files == b.files);
}
