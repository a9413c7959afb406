#include <cmath>

#include "doctest.h"
#include "heislab/weights.hpp"

using namespace heislab;

namespace {

const DyadicGrid& grid() {
  static const DyadicGrid g = [] {
    BuildOptions opt;
    opt.delta = 0.5;
    opt.relaxed = true;
    opt.k_max = 2;
    return build_grid_systems(GridSpec(BoxRegion::cube(1, 1.0, 1.0), {16, 16, 64}), opt, 3);
  }();
  return g;
}

}  // namespace

TEST_CASE("characteristics of constants are exactly one") {
  const auto& g = grid();
  const auto cubes = g.cubes();
  for (double c : {1.0, 7.0, 0.3})
    for (double p : {1.5, 2.0, 3.0}) {
      std::vector<double> w(g.samples.size(), c);
      CHECK(ap_char(g, w, p, cubes) == 1.0);
      CHECK(rh_char(g, w, p, cubes) == 1.0);
    }
}

TEST_CASE("characteristics of the corpus") {
  const auto& g = grid();
  const auto cubes = g.cubes();
  auto corpus = weight_corpus(g);
  CHECK(corpus.size() == 6);
  for (const auto& wf : corpus) {
    double a = ap_char(g, wf.w, 2.0, cubes), r = rh_char(g, wf.w, 2.0, cubes);
    CHECK(a >= 1.0 - 1e-12);
    CHECK(r >= 1.0 - 1e-12);
    auto w7 = wf.w;
    for (auto& v : w7) v *= 7.0;
    CHECK(ap_char(g, w7, 2.0, cubes) == doctest::Approx(a).epsilon(1e-13));
    CHECK(rh_char(g, w7, 2.0, cubes) == doctest::Approx(r).epsilon(1e-13));
  }
  std::vector<double> bad(g.samples.size(), 1.0);
  bad[3] = 0.0;
  CHECK_THROWS_AS(ap_char(g, bad, 2.0, cubes), std::domain_error);
  CHECK_THROWS_AS(ap_char(g, corpus[0].w, 1.0, cubes), std::domain_error);
}

TEST_CASE("BFP exponents") {
  CHECK(bfp_alpha(2.0, INFINITY) == 1.0);
  CHECK(bfp_alpha(3.0, INFINITY) == 0.5);
  // q0 = 5/4: q0' = 5, p = 2: max(1, 4/3)
  CHECK(bfp_alpha(2.0, 5.0) == doctest::Approx(4.0 / 3.0));
  CHECK(bfp_rh_exponent(2.0, 1.0) == 1.0);
  CHECK(bfp_rh_exponent(2.0, 1.25) == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("BFP slack with constant weights") {
  const auto& g = grid();
  std::vector<double> f(g.samples.size()), gv(g.samples.size()), w(g.samples.size(), 1.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = std::exp(-4.0 * koranyi_norm(g.samples.points[i]));
    gv[i] = 1.0 + 0.5 * std::cos(3.0 * g.samples.points[i].t);
  }
  std::vector<SparseFamily> fams;
  for (const auto& root : g.cubes_at(0, g.k_min())) fams.push_back(build_sparse_family(g, f, gv, root, 1.0, 1.25));
  auto r = bfp_check(g, fams, f, gv, w, 2.0, 1.0, 1.25, g.cubes());
  CHECK(r.ap == 1.0);
  CHECK(r.rh == 1.0);
  CHECK(r.slack >= 1.0);
  CHECK_THROWS(bfp_check(g, fams, f, gv, w, 6.0, 1.0, 1.25, g.cubes()));
}

TEST_CASE("phi") {
  for (int n = 1; n <= 4; ++n) {
    double b = n / (n + 1.0);
    CHECK(phi_inverse(b - 1e-12, n) == doctest::Approx(phi_inverse(b + 1e-12, n)).epsilon(1e-9));
    CHECK(phi_inverse(1e-9, n) == doctest::Approx(1.0));
    CHECK(phi_inverse(1.0 - 1e-9, n) == doctest::Approx(0.0).epsilon(1e-6));
  }
  CHECK(phi_exponent(0.25, 1) == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS(phi_inverse(1.0, 2));
  CHECK_THROWS(phi_inverse(0.0, 2));
}
