#include "doctest.h"
#include "heislab/regions.hpp"

using namespace heislab;

TEST_CASE("vertices are exact rationals") {
  auto s = region_s(2);
  CHECK(s.v[2] == RPoint{Q64(7, 10), Q64(7, 10)});
  CHECK(region_f(2).v[2] == RPoint{Q64(7, 13), Q64(7, 13)});
  CHECK(region_f(2).v[1] == RPoint{Q64(3, 4), Q64(1, 4)});
  CHECK(region_s_prime(1).v[2] == RPoint{Q64(4, 7), Q64(3, 7)});
  CHECK(region_f_prime(3).v[2] == RPoint{Q64(10, 16), Q64(6, 16)});
  CHECK(to_string(Q64(10, 16)) == "5/8");
  CHECK(to_double(Q64(7, 10)) == 0.7);
}

TEST_CASE("duality is an involution and maps S to S'") {
  for (int n = 1; n <= 6; ++n) {
    auto s = region_s(n), sp = region_s_prime(n);
    for (const auto& v : s.v) CHECK(dual(dual(v)) == v);
    // vertex (v, v) of S goes to the third vertex of S'
    CHECK(dual(s.v[2]) == sp.v[2]);
  }
}

TEST_CASE("containment") {
  auto s = region_s(2);
  CHECK(s.contains(RPoint{Q64(1, 2), Q64(1, 2)}));
  CHECK(s.contains(s.v[0]));
  CHECK_FALSE(s.contains(s.v[0], false));
  CHECK_FALSE(s.contains(RPoint{Q64(9, 10), Q64(9, 10)}));
  CHECK(s.contains(0.6, 0.6, false));
  CHECK_FALSE(s.contains(0.5, 0.5, false));  // on the edge x + y = 1
  CHECK(s.contains(s));
  for (int n = 2; n <= 6; ++n) CHECK(region_s(n).contains(euclidean_lacunary(n).v[2]));
  for (int n = 2; n <= 10; ++n) {
    CHECK(region_s(n).contains(region_f(n)));
    CHECK(region_s_prime(n).contains(region_f_prime(n)));
    CHECK(region_s(n).contains(euclidean_lacunary(n).v[2], false));
  }
}

TEST_CASE("barycentric points and names") {
  auto s = region_s(1);
  auto c = barycentric_point(s, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(s.contains(c[0], c[1], false));
  auto v0 = barycentric_point(s, {1.0, 0.0, 0.0});
  CHECK(v0[0] == 0.0);
  CHECK(v0[1] == 1.0);
  CHECK(make_triangle("F'", 4).v == region_f_prime(4).v);
  CHECK(dual(region_s(2)).name == "S*");
  CHECK_THROWS_AS(make_triangle("G", 2), std::invalid_argument);
  CHECK_THROWS_AS(make_triangle("S", 0), std::invalid_argument);
}

TEST_CASE("csv output") {
  auto v = vertices_csv({region_s(2)});
  CHECK(v.rfind("region,vertex,x_num,x_den,y_num,y_den,x,y\n", 0) == 0);
  CHECK(v.find("S,2,7,10,7,10,") != std::string::npos);
  auto p = polyline_csv({region_s(2)});
  int lines = 0;
  for (char ch : p) lines += ch == '\n';
  CHECK(lines == 5);  // header plus closed loop of four points
}
