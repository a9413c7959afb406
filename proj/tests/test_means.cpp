#include <cmath>
#include <random>

#include "doctest.h"
#include "heislab/means.hpp"
#include "heislab/spectral.hpp"

using namespace heislab;
using C = std::complex<double>;

TEST_CASE("sphere rules") {
  for (auto rule : {SphereRule::make(1, 64), SphereRule::make(2, 8, 3)}) {
    double s = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      s += w;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rule.antipodal());
  }
  CHECK_THROWS(SphereRule::make(2, 8, 0));
}

TEST_CASE("spherical mean trivial cases") {
  auto rule = SphereRule::make(1, 64);
  HeisPoint x({C(0.3, -0.2)}, 0.4);
  CHECK(quadrature_spherical_mean([](const HeisPoint&) { return 1.0; }, 0.7, x, rule) ==
        doctest::Approx(1.0));
  // f = t: the twist averages out under an antipodal rule
  CHECK(quadrature_spherical_mean([](const HeisPoint& y) { return y.t; }, 0.7, x, rule) ==
        doctest::Approx(0.4).epsilon(1e-14));
  CHECK(quadrature_spherical_mean([](const HeisPoint& y) { return y.z_norm2(); }, 0.7, HeisPoint(1), rule) ==
        doctest::Approx(0.49));
  CHECK_THROWS(quadrature_spherical_mean([](const HeisPoint&) { return 1.0; }, 0.0, x, rule));
}

TEST_CASE("averaging bounds and positivity") {
  auto rule = SphereRule::make(2, 8, 3);
  HeisGaussian g(1.0, 1.0, 1.0, HeisPoint(2));
  std::mt19937_64 gen(2);
  for (int i = 0; i < 50; ++i) {
    HeisPoint x = random_point(BoxRegion::cube(2, 1.0, 1.0), gen);
    double v = quadrature_spherical_mean(g, 0.8, x, rule);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("translation and dilation of sampled fields") {
  GridSpec grid(BoxRegion::cube(1, 4.0, 4.0), {40, 40, 40});
  HeisGaussian g(1.0, 1.0, 1.0, HeisPoint(1));
  auto f = SampledField::sample(grid, g);
  HeisPoint y({C(0.2, 0.1)}, 0.1);
  auto ty = translate(f, y);
  CHECK(grid_lp_norm(ty, 2.0) == doctest::Approx(grid_lp_norm(f, 2.0)).epsilon(2e-2));
  HeisPoint id(1);
  auto t0 = translate(f, id);
  for (std::size_t i = 0; i < f.values().size(); ++i)
    CHECK(t0.values()[i] == doctest::Approx(f.values()[i]).epsilon(1e-12));
  // ||delta_r f||_2 = r^{-(2n+2)/2} ||f||_2 up to the grid error
  auto d = dilate_field(f, 1.5);
  CHECK(grid_lp_norm(d, 2.0) / grid_lp_norm(f, 2.0) == doctest::Approx(std::pow(1.5, -2.0)).epsilon(5e-3));
}

TEST_CASE("dilation interchange with translation") {
  FieldFn f = HeisGaussian(1.0, 1.3, 0.7, HeisPoint({C(0.1, 0.2)}, -0.1));
  HeisPoint y({C(0.4, -0.3)}, 0.2), x({C(-0.2, 0.5)}, 0.3);
  const double r = 1.7;
  double lhs = dilate_fn(translate_fn(f, y), r)(x);
  double rhs = translate_fn(dilate_fn(f, r), dilate(1.0 / r, y))(x);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("lacunary and local maxima") {
  auto rule = SphereRule::make(1, 64);
  FieldFn one = [](const HeisPoint&) { return 1.0; };
  HeisPoint x(1);
  CHECK(lacunary_max(one, 0.5, 0, 4, x, rule) == doctest::Approx(1.0));
  CHECK(local_max(one, 0.5, 5, x, rule) == doctest::Approx(1.0));
  FieldFn g = HeisGaussian(1.0, 1.0, 1.0, HeisPoint({C(0.5, 0.0)}, 0.0));
  CHECK(lacunary_max(g, 0.5, 2, 2, x, rule) == doctest::Approx(std::abs(quadrature_spherical_mean(g, 0.25, x, rule))));
  CHECK(lacunary_max(g, 0.5, 0, 4, x, rule) >= lacunary_max(g, 0.5, 1, 3, x, rule));
  CHECK(local_max(g, 0.5, 1, x, rule) == doctest::Approx(quadrature_spherical_mean(g, 1.0, x, rule)));
  CHECK(local_max(g, 0.5, 9, x, rule) >= local_max(g, 0.5, 5, x, rule));
  CHECK(local_max(g, 0.5, 9, x, rule) <= ftc_majorant(g, 0.5, x, rule) * (1 + 1e-12));
}

TEST_CASE("continuity ratio") {
  auto rule = SphereRule::make(1, 64);
  BoxQuadrature q{BoxRegion(1, {4.0, 4.0, 5.0}), 4, 8};
  FieldFn f = HeisGaussian(1.0, 1.0, 1.0, HeisPoint(1));
  CHECK(continuity_ratio(f, HeisPoint(1), 2, 2, 1.0, rule, q) == 0.0);
  HeisPoint y({C(0.1, 0.05)}, 0.01);
  double a = continuity_ratio(f, y, 2, 2, 1.0, rule, q);
  double b = continuity_ratio(f, dilate(0.5, y), 2, 2, 1.0, rule, q);
  CHECK(a > 0.0);
  CHECK(a / b == doctest::Approx(2.0).epsilon(0.1));
}
