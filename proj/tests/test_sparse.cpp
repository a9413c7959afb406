#include <cmath>
#include <random>

#include "doctest.h"
#include "heislab/corpus.hpp"
#include "heislab/sparse.hpp"

using namespace heislab;

namespace {

struct Small {
  GridSpec grid;
  DyadicGrid dy;
  SphereRule rule;
};

const Small& small() {
  static const Small s = [] {
    Small o;
    o.grid = GridSpec(BoxRegion::cube(1, 1.0, 1.0), {16, 16, 64});
    BuildOptions opt;
    opt.delta = 0.5;
    opt.relaxed = true;
    opt.k_max = 2;
    opt.systems = 1;
    o.dy = build_grid_systems(o.grid, opt, 3);
    o.rule = SphereRule::make(1, 16);
    return o;
  }();
  return s;
}

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = e(gen) * e(gen);
  return v;
}

}  // namespace

TEST_CASE("CZ stopping cubes match brute force") {
  const auto& g = small().dy;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto f = random_values(g.samples.size(), seed);
    for (const auto& root : g.cubes_at(0, g.k_min()))
      for (double p : {1.0, 2.0}) {
        auto fast = cz_stopping(g, f, root, p, 2.0);
        CHECK(fast == cz_stopping_brute(g, f, root, p, 2.0));
        for (const auto& q : fast) CHECK(cube_average(g, f, q, p) > 2.0 * cube_average(g, f, root, p));
      }
  }
}

TEST_CASE("sparse families are sparse") {
  const auto& g = small().dy;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto f = random_values(g.samples.size(), seed), gv = random_values(g.samples.size(), seed + 100);
    for (const auto& root : g.cubes_at(0, g.k_min())) {
      auto fam = build_sparse_family(g, f, gv, root, 1.5, 1.5);
      CHECK_FALSE(fam.flagged);
      CHECK(fam.cubes.front() == root);
      auto sr = check_sparsity(g, fam);
      CHECK(sr.disjoint);
      CHECK(sr.inside);
      CHECK(sr.major);
      CHECK(sparse_form(g, fam, f, gv, 1.5, 1.5) >=
            g.measure(root) * cube_average(g, f, root, 1.5) * cube_average(g, gv, root, 1.5) * (1 - 1e-12));
    }
  }
  // constant data stops nowhere
  std::vector<double> one(g.samples.size(), 1.0);
  auto root = g.cubes_at(0, g.k_min()).front();
  auto fam = build_sparse_family(g, one, one, root, 2.0, 2.0);
  CHECK(fam.cubes.size() == 1);
  CHECK(sparse_form(g, fam, one, one, 2.0, 2.0) == doctest::Approx(g.measure(root)));
}

TEST_CASE("escalation halves the covered mass") {
  const auto& g = small().dy;
  auto f = random_values(g.samples.size(), 9), gv = random_values(g.samples.size(), 10);
  auto root = g.cubes_at(0, g.k_min()).front();
  auto st = stopping_children_escalating(g, f, gv, root, 1.0, 1.0);
  CHECK(st.covered < 0.5);
  CHECK(st.multiplier >= 2.0);
}

TEST_CASE("linearization") {
  const auto& s = small();
  const auto& g = s.dy;
  for (const auto& pr : sparse_pairs(1)) {
    auto f = sample_values(g, pr.f), gv = sample_values(g, pr.g);
    LinearizeInput in{&g, &s.grid, &f, &s.rule, LocalizationSpec{2, 2.0, 3.0}, 1};
    auto L = linearize(in, 0);
    auto r = check_linearization(g, L, gv);
    CHECK(r.b_disjoint);
    CHECK(r.union_equal);
    CHECK(r.covering);
    CHECK(r.half_bound);
  }
}

TEST_CASE("Lorentz norms") {
  std::vector<double> mu(10, 0.7), c(10, 3.0);
  for (double r : {1.5, 2.0, 4.0}) {
    CHECK(lorentz_norm(c, mu, r) == doctest::Approx(3.0));
    CHECK(lorentz_norm_rearranged(c, mu, r) == doctest::Approx(3.0 * r));
  }
  // two levels: f = 2 on half the mass, 1 elsewhere
  std::vector<double> f{2, 2, 1, 1}, m(4, 1.0);
  CHECK(lorentz_norm(f, m, 2.0) == doctest::Approx(1.0 + std::sqrt(0.5)));
  auto v = random_values(500, 4), w = random_values(500, 5);
  for (double r : {1.5, 3.0}) {
    CHECK(r * lorentz_norm(v, w, r) == doctest::Approx(lorentz_norm_rearranged(v, w, r)).epsilon(1e-12));
    auto s = check_level_set_lemma(v, w, r);
    CHECK(s.lhs <= s.rhs);
  }
  CHECK_THROWS(lorentz_norm(c, mu, 1.0));
}

TEST_CASE("probability space constant") {
  // p' = 4/3, r' = 2: (int t^{-2/3})^{3/4} = 3^{3/4}
  CHECK(proba_constant(2.0, 4.0) == doctest::Approx(std::pow(3.0, 0.75)).epsilon(1e-14));
  for (double r : {1.5, 2.0})
    for (double p : {2.5, 4.0}) CHECK(proba_constant_quadrature(r, p) == doctest::Approx(proba_constant(r, p)).epsilon(1e-8));
  CHECK_THROWS(proba_constant(2.0, 2.0));
}

TEST_CASE("Carleson single cube") {
  const auto& g = small().dy;
  auto phi = random_values(g.samples.size(), 21);
  auto root = g.cubes_at(0, g.k_min()).front();
  SparseFamily one;
  one.cubes = {root};
  one.E = {g.members(root)};
  auto c = carleson_check(g, one, phi, root, 1.0, 2.0);
  CHECK(std::isfinite(c.ratio));
  CHECK(c.ratio <= 1.0 + 1e-12);
  CHECK_THROWS(carleson_check(g, one, phi, root, 2.0, 1.0));
}
