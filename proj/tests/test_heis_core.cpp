#include <cmath>
#include <random>

#include "doctest.h"
#include "heislab/heis_core.hpp"

using namespace heislab;
using C = std::complex<double>;

namespace {
HeisPoint rnd(std::mt19937_64& gen, int n) {
  return random_point(BoxRegion::cube(n, 2.0, 3.0), gen);
}
void same(const HeisPoint& a, const HeisPoint& b, double tol = 1e-12) {
  for (int i = 0; i < a.real_dim(); ++i) CHECK(a.coord(i) == doctest::Approx(b.coord(i)).epsilon(tol));
}
}  // namespace

TEST_CASE("group law examples") {
  HeisPoint e(1), a({C(1, 0)}, 0.0), b({C(0, 1)}, 0.0);
  same(group_mul(e, a), a);
  HeisPoint ab = group_mul(a, b);
  CHECK(ab.z[0] == 1.0);
  CHECK(ab.z[1] == 1.0);
  CHECK(ab.t == -0.5);
  CHECK_THROWS_AS(group_mul(HeisPoint(1), HeisPoint(2)), DimensionMismatch);
}

TEST_CASE("inverse") {
  HeisPoint a({C(0, 0)}, 2.5);
  CHECK(group_inv(a).t == -2.5);
  std::mt19937_64 gen(3);
  for (int n : {1, 2})
    for (int i = 0; i < 100; ++i) {
      HeisPoint x = rnd(gen, n);
      HeisPoint id = group_mul(x, group_inv(x));
      CHECK(koranyi_norm(id) <= 1e-7);
      same(group_inv(group_inv(x)), x);
    }
}

TEST_CASE("associativity on 10^4 triples") {
  std::mt19937_64 gen(11);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    int n = 1 + i % 2;
    HeisPoint a = rnd(gen, n), b = rnd(gen, n), c = rnd(gen, n);
    HeisPoint l = group_mul(group_mul(a, b), c), r = group_mul(a, group_mul(b, c));
    for (int k = 0; k < l.real_dim(); ++k)
      worst = std::max(worst, std::abs(l.coord(k) - r.coord(k)) / std::max(1.0, std::abs(l.coord(k))));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Koranyi norm and dilations") {
  CHECK(koranyi_norm(HeisPoint({C(0, 0)}, 4.0)) == doctest::Approx(2.0));
  CHECK(koranyi_norm(HeisPoint({C(3, 4)}, 0.0)) == doctest::Approx(5.0));
  CHECK(koranyi_norm(HeisPoint({C(0, 0)}, -9.0)) == doctest::Approx(3.0));
  HeisPoint d = dilate(2.0, HeisPoint({C(1, -1)}, 0.5));
  CHECK(d.z[0] == 2.0);
  CHECK(d.z[1] == -2.0);
  CHECK(d.t == 2.0);
  CHECK_THROWS(dilate(0.0, HeisPoint(1)));
  std::mt19937_64 gen(5);
  for (int i = 0; i < 200; ++i) {
    HeisPoint a = rnd(gen, 2), b = rnd(gen, 2);
    double r = 0.1 + 3.0 * (i % 17) / 17.0;
    CHECK(koranyi_norm(dilate(r, a)) == doctest::Approx(r * koranyi_norm(a)).epsilon(1e-12));
    same(dilate(r, group_mul(a, b)), group_mul(dilate(r, a), dilate(r, b)));
    same(dilate(r, dilate(2.0, a)), dilate(2.0 * r, a));
  }
}

TEST_CASE("left-invariant distance and balls") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i) {
    HeisPoint a = rnd(gen, 1), x = rnd(gen, 1), y = rnd(gen, 1);
    CHECK(dist_left(x, x) == 0.0);
    CHECK(dist_left(HeisPoint(1), y) == doctest::Approx(koranyi_norm(y)));
    CHECK(dist_left(group_mul(a, x), group_mul(a, y)) == doctest::Approx(dist_left(x, y)).epsilon(1e-10));
    CHECK(ball_contains(a, 0.5, x) == ball_contains(HeisPoint(1), 0.5, group_mul(group_inv(a), x)));
  }
  HeisPoint c(1);
  CHECK(ball_contains(c, 1.0, c));
  CHECK_FALSE(ball_contains(c, 1.0, HeisPoint({C(1, 0)}, 0.0)));
}

TEST_CASE("box region") {
  BoxRegion b = BoxRegion::cube(1, 1.0, 2.0);
  CHECK(b.volume() == doctest::Approx(16.0));
  CHECK(b.contains(HeisPoint({C(0.5, -0.5)}, 1.5)));
  CHECK_FALSE(b.contains(HeisPoint({C(0.5, -0.5)}, 2.5)));
  CHECK_THROWS(BoxRegion(1, {1.0, 0.0, 1.0}));
  // the Koranyi gauge is a metric: measured constant stays at 1 up to rounding
  CHECK(measure_quasi_triangle(b, 2000, 1) <= 1.0 + 1e-9);
}
