#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace heislab {

using Q64 = boost::rational<std::int64_t>;

// A point (1/p, 1/q) of the unit square.
struct RPoint {
  Q64 x, y;
  bool operator==(const RPoint&) const = default;
};

struct Triangle {
  std::string name;
  std::array<RPoint, 3> v;
  // closed: boundary counts as inside
  bool contains(const RPoint& p, bool closed = true) const;
  bool contains(double x, double y, bool closed = true) const;
  bool contains(const Triangle& other) const;  // closed inclusion of all vertices
};

// Sparse region for the lacunary maximal function
Triangle region_s(int n);
// L^p improving region S' (dual coordinates)
Triangle region_s_prime(int n);
// Sparse region for the local full maximal function
Triangle region_f(int n);
Triangle region_f_prime(int n);
// Euclidean lacunary triangle (0,1), (1,0), (n/(n+1), n/(n+1)).
Triangle euclidean_lacunary(int n);

// by name: S, S', F, F', E; throws std::invalid_argument otherwise
Triangle make_triangle(const std::string& name, int n);

// (x, y) -> (x, 1 - y)
RPoint dual(const RPoint& p);
Triangle dual(const Triangle& t);

double to_double(const Q64& q);
std::string to_string(const Q64& q);

// (1/p, 1/q) for barycentric weights b over the vertices of t.
std::array<double, 2> barycentric_point(const Triangle& t, const std::array<double, 3>& b);

// "name,vertex,x_num,x_den,y_num,y_den,x,y" rows
std::string vertices_csv(const std::vector<Triangle>& ts);
// closed polyline for plotting: "name,i,x,y" rows
std::string polyline_csv(const std::vector<Triangle>& ts);

}  // namespace heislab
