#include "heislab/heis_core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace heislab {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxN)
    throw DimensionMismatch("dimension n must be in [1, " + std::to_string(kMaxN) + "]");
}

void check_same(const HeisPoint& a, const HeisPoint& b) {
  if (a.n != b.n) throw DimensionMismatch("points of different dimension");
}

}  // namespace

HeisPoint::HeisPoint(int dim) : n(dim) { check_dim(dim); }

HeisPoint::HeisPoint(std::initializer_list<std::complex<double>> zs, double t_)
    : n(static_cast<int>(zs.size())), t(t_) {
  check_dim(n);
  int j = 0;
  for (auto c : zs) {
    z[2 * j] = c.real();
    z[2 * j + 1] = c.imag();
    ++j;
  }
}

HeisPoint HeisPoint::from_coords(int dim, const double* coords) {
  HeisPoint p(dim);
  for (int i = 0; i < 2 * dim; ++i) p.z[i] = coords[i];
  p.t = coords[2 * dim];
  return p;
}

double HeisPoint::z_norm2() const {
  double s = 0.0;
  for (int i = 0; i < 2 * n; ++i) s += z[i] * z[i];
  return s;
}

bool HeisPoint::is_finite() const {
  for (int i = 0; i < 2 * n; ++i)
    if (!std::isfinite(z[i])) return false;
  return std::isfinite(t);
}

bool operator==(const HeisPoint& a, const HeisPoint& b) {
  if (a.n != b.n || a.t != b.t) return false;
  for (int i = 0; i < 2 * a.n; ++i)
    if (a.z[i] != b.z[i]) return false;
  return true;
}

double im_dot_conj(const HeisPoint& a, const HeisPoint& b) {
  // (x + iy)(u - iv) has imaginary part y u - x v
  double s = 0.0;
  for (int j = 0; j < a.n; ++j) s += a.z[2 * j + 1] * b.z[2 * j] - a.z[2 * j] * b.z[2 * j + 1];
  return s;
}

HeisPoint group_mul(const HeisPoint& a, const HeisPoint& b) {
  check_same(a, b);
  HeisPoint c(a.n);
  for (int i = 0; i < 2 * a.n; ++i) c.z[i] = a.z[i] + b.z[i];
  c.t = a.t + b.t + 0.5 * im_dot_conj(a, b);
  return c;
}

HeisPoint group_inv(const HeisPoint& a) {
  HeisPoint c(a.n);
  for (int i = 0; i < 2 * a.n; ++i) c.z[i] = -a.z[i];
  c.t = -a.t;
  return c;
}

double koranyi_norm(const HeisPoint& a) {
  double r2 = a.z_norm2();
  return std::sqrt(std::sqrt(r2 * r2 + a.t * a.t));
}

double dist_left(const HeisPoint& x, const HeisPoint& y) {
  check_same(x, y);
  // x^{-1} y = (w - z, s - t - 1/2 Im z.conj(w))
  double r2 = 0.0;
  for (int i = 0; i < 2 * x.n; ++i) {
    double d = y.z[i] - x.z[i];
    r2 += d * d;
  }
  double dt = y.t - x.t - 0.5 * im_dot_conj(x, y);
  return std::sqrt(std::sqrt(r2 * r2 + dt * dt));
}

HeisPoint dilate(double r, const HeisPoint& a) {
  if (!(r > 0.0)) throw std::domain_error("dilate: r must be positive");
  HeisPoint c(a.n);
  for (int i = 0; i < 2 * a.n; ++i) c.z[i] = r * a.z[i];
  c.t = r * r * a.t;
  return c;
}

bool ball_contains(const HeisPoint& center, double radius, const HeisPoint& x) {
  return dist_left(center, x) < radius;
}

BoxRegion::BoxRegion(int dim, std::vector<double> hw) : n(dim), half_widths(std::move(hw)) {
  check_dim(dim);
  if (static_cast<int>(half_widths.size()) != 2 * n + 1)
    throw DimensionMismatch("BoxRegion needs 2n+1 half-widths");
  for (double h : half_widths)
    if (!(h > 0.0)) throw std::invalid_argument("BoxRegion half-widths must be positive");
}

BoxRegion BoxRegion::cube(int dim, double hz, double ht) {
  std::vector<double> hw(2 * dim + 1, hz);
  hw.back() = ht;
  return BoxRegion(dim, std::move(hw));
}

bool BoxRegion::contains(const HeisPoint& x) const {
  for (int a = 0; a < 2 * n + 1; ++a)
    if (std::abs(x.coord(a)) > half_widths[a]) return false;
  return true;
}

double BoxRegion::volume() const {
  double v = 1.0;
  for (double h : half_widths) v *= 2.0 * h;
  return v;
}

HeisPoint random_point(const BoxRegion& region, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HeisPoint p(region.n);
  for (int a = 0; a < 2 * region.n + 1; ++a) p.coord(a) = region.half_widths[a] * u(gen);
  return p;
}

double measure_quasi_triangle(const BoxRegion& region, int samples, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    HeisPoint x = random_point(region, gen);
    HeisPoint y = random_point(region, gen);
    HeisPoint z = random_point(region, gen);
    double lhs = dist_left(x, z);
    double rhs = dist_left(x, y) + dist_left(y, z);
    if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
  }
  return worst;
}

}  // namespace heislab
