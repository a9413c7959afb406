#include "heislab/regions.hpp"

#include <sstream>
#include <stdexcept>

namespace heislab {

namespace {

Q64 q(std::int64_t a, std::int64_t b) { return Q64(a, b); }

template <class T>
T cross(T ax, T ay, T bx, T by, T cx, T cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

template <class T>
bool inside(const std::array<T, 6>& v, T x, T y, bool closed) {
  T d0 = cross(v[0], v[1], v[2], v[3], x, y);
  T d1 = cross(v[2], v[3], v[4], v[5], x, y);
  T d2 = cross(v[4], v[5], v[0], v[1], x, y);
  T zero(0);
  bool neg = d0 < zero || d1 < zero || d2 < zero;
  bool pos = d0 > zero || d1 > zero || d2 > zero;
  if (neg && pos) return false;
  if (closed) return true;
  return d0 != zero && d1 != zero && d2 != zero;
}

}  // namespace

bool Triangle::contains(const RPoint& p, bool closed) const {
  std::array<Q64, 6> c{v[0].x, v[0].y, v[1].x, v[1].y, v[2].x, v[2].y};
  return inside(c, p.x, p.y, closed);
}

bool Triangle::contains(double x, double y, bool closed) const {
  std::array<double, 6> c{to_double(v[0].x), to_double(v[0].y), to_double(v[1].x),
                          to_double(v[1].y), to_double(v[2].x), to_double(v[2].y)};
  return inside(c, x, y, closed);
}

bool Triangle::contains(const Triangle& other) const {
  for (const auto& p : other.v)
    if (!contains(p, true)) return false;
  return true;
}

Triangle region_s(int n) {
  Q64 v = q(3 * n + 1, 3 * n + 4);
  return {"S", {RPoint{q(0, 1), q(1, 1)}, RPoint{q(1, 1), q(0, 1)}, RPoint{v, v}}};
}

Triangle region_s_prime(int n) {
  return {"S'", {RPoint{q(0, 1), q(0, 1)}, RPoint{q(1, 1), q(1, 1)},
                 RPoint{q(3 * n + 1, 3 * n + 4), q(3, 3 * n + 4)}}};
}

Triangle region_f(int n) {
  Q64 u = q(3 * n + 1, 3 * n + 7);
  return {"F", {RPoint{q(0, 1), q(1, 1)}, RPoint{q(2 * n - 1, 2 * n), q(1, 2 * n)}, RPoint{u, u}}};
}

Triangle region_f_prime(int n) {
  Q64 w = q(2 * n - 1, 2 * n);
  return {"F'", {RPoint{q(0, 1), q(0, 1)}, RPoint{w, w},
                 RPoint{q(3 * n + 1, 3 * n + 7), q(6, 3 * n + 7)}}};
}

Triangle euclidean_lacunary(int n) {
  Q64 w = q(n, n + 1);
  return {"E", {RPoint{q(0, 1), q(1, 1)}, RPoint{q(1, 1), q(0, 1)}, RPoint{w, w}}};
}

Triangle make_triangle(const std::string& name, int n) {
  if (n < 1) throw std::invalid_argument("triangle: n must be >= 1");
  if (name == "S") return region_s(n);
  if (name == "S'") return region_s_prime(n);
  if (name == "F") return region_f(n);
  if (name == "F'") return region_f_prime(n);
  if (name == "E") return euclidean_lacunary(n);
  throw std::invalid_argument("unknown triangle: " + name);
}

RPoint dual(const RPoint& p) { return {p.x, Q64(1) - p.y}; }

Triangle dual(const Triangle& t) {
  return {t.name + "*", {dual(t.v[0]), dual(t.v[1]), dual(t.v[2])}};
}

double to_double(const Q64& v) {
  return static_cast<double>(v.numerator()) / static_cast<double>(v.denominator());
}

std::string to_string(const Q64& v) {
  std::ostringstream os;
  os << v.numerator();
  if (v.denominator() != 1) os << '/' << v.denominator();
  return os.str();
}

std::array<double, 2> barycentric_point(const Triangle& t, const std::array<double, 3>& b) {
  double x = 0.0, y = 0.0;
  for (int i = 0; i < 3; ++i) {
    x += b[i] * to_double(t.v[i].x);
    y += b[i] * to_double(t.v[i].y);
  }
  return {x, y};
}

std::string vertices_csv(const std::vector<Triangle>& ts) {
  std::ostringstream os;
  os.precision(17);
  os << "region,vertex,x_num,x_den,y_num,y_den,x,y\n";
  for (const auto& t : ts)
    for (int i = 0; i < 3; ++i) {
      const auto& p = t.v[i];
      os << t.name << ',' << i << ',' << p.x.numerator() << ',' << p.x.denominator() << ','
         << p.y.numerator() << ',' << p.y.denominator() << ',' << to_double(p.x) << ','
         << to_double(p.y) << '\n';
    }
  return os.str();
}

std::string polyline_csv(const std::vector<Triangle>& ts) {
  std::ostringstream os;
  os.precision(17);
  os << "region,i,x,y\n";
  for (const auto& t : ts)
    for (int i = 0; i <= 3; ++i) {
      const auto& p = t.v[i % 3];
      os << t.name << ',' << i << ',' << to_double(p.x) << ',' << to_double(p.y) << '\n';
    }
  return os.str();
}

}  // namespace heislab
