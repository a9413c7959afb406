#include <set>

#include "doctest.h"
#include "heislab/dyadic.hpp"

using namespace heislab;

namespace {

DyadicGrid small_cloud_grid(std::uint64_t seed) {
  auto s = sobol_samples(BoxRegion::cube(1, 0.5, 0.5), 3000, seed);
  BuildOptions opt;
  opt.delta = 0.01;
  opt.k_min = 0;
  opt.k_max = 1;
  auto sys = build_systems(s, opt, seed);
  return DyadicGrid(std::move(s), std::move(sys));
}

}  // namespace

TEST_CASE("samples") {
  auto s = sobol_samples(BoxRegion::cube(1, 0.5, 0.5), 500, 3);
  CHECK(s.size() == 500);
  for (const auto& p : s.points) CHECK(s.region.contains(p));
  auto t = sobol_samples(BoxRegion::cube(1, 0.5, 0.5), 500, 3);
  CHECK(t.points == s.points);
  GridSpec g(BoxRegion::cube(1, 1.0, 1.0), {4, 4, 8});
  auto gs = grid_samples(g);
  CHECK(gs.size() == g.size());
  CHECK(gs.measure[0] == doctest::Approx(g.cell_volume()));
  auto c = clustered_cloud(BoxRegion::cube(1, 1.0, 1.0), CloudSpec{5, 3, 2, 0.03, 3e-4}, 9);
  CHECK(c.size() == 5u * (1 + 3 * (1 + 2)));
}

TEST_CASE("nets, partition and nesting") {
  auto g = small_cloud_grid(11);
  const auto& sys = g.systems.front();
  for (int k = sys.k_min; k <= sys.k_max; ++k) {
    const auto& c = sys.centers(k);
    const double side = sys.side(k);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) CHECK(dist_left(c[i], c[j]) >= side);
  }
  // coarse centres persist at finer levels
  for (const auto& p : sys.centers(0)) {
    bool found = false;
    for (const auto& q : sys.centers(1)) found = found || q == p;
    CHECK(found);
  }
  auto rep = check_invariants(g);
  CHECK(rep.partition);
  CHECK(rep.nesting);
  CHECK(rep.sandwich);
  CHECK(rep.worst_outer_ratio <= 4.0);
  std::size_t total = 0;
  for (const auto& q : g.cubes_at(0, 0)) total += g.members(q).size();
  CHECK(total == g.samples.size());
  for (const auto& q : g.cubes_at(0, 1)) {
    auto par = g.parent(q);
    for (int i : g.members(q)) CHECK(g.contains(par, i));
  }
}

TEST_CASE("property (2) on random balls") {
  auto s = sobol_samples(BoxRegion::cube(1, 0.5, 0.5), 3000, 5);
  BuildOptions opt;
  opt.delta = 0.01;
  opt.k_max = 2;
  auto res = build_until_property2(s, opt, {1, 2}, 40, 8, 6);
  CHECK(res.balls_failed == 0);
  auto balls = random_balls(res.grid.samples, 0.01, {1, 2}, 40, 7);
  for (const auto& b : check_balls(res.grid, balls)) CHECK(b.found);
  CHECK(doubling_constant(res.grid, balls) >= 1.0);
}

TEST_CASE("cube averages") {
  auto g = small_cloud_grid(12);
  std::vector<double> one(g.samples.size(), 1.0), f(g.samples.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0 + (i % 5);
  for (const auto& q : g.cubes()) {
    CHECK(cube_average(g, one, q, 2.0) == doctest::Approx(1.0));
    CHECK(cube_average(g, f, q, 1.0) <= cube_average(g, f, q, 2.0) * (1 + 1e-12));
  }
}

TEST_CASE("build rejects coarse grids and bad deltas") {
  GridSpec g(BoxRegion::cube(1, 1.0, 1.0), {4, 4, 4});
  BuildOptions opt;
  opt.delta = 0.01;
  opt.k_max = 2;
  CHECK_THROWS_AS(build_grid_systems(g, opt, 1), GridTooCoarse);
  BuildOptions loose;
  loose.delta = 0.5;
  auto s = sobol_samples(BoxRegion::cube(1, 0.5, 0.5), 100, 1);
  CHECK_THROWS(build_systems(s, loose, 1));
}
