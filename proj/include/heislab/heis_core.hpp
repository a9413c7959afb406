#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <vector>

namespace heislab {

inline constexpr int kMaxN = 4;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A point (z, t) of H^n. z is stored as interleaved (Re z_1, Im z_1, ...).
struct HeisPoint {
  int n = 1;
  std::array<double, 2 * kMaxN> z{};
  double t = 0.0;

  HeisPoint() = default;
  explicit HeisPoint(int dim);
  HeisPoint(std::initializer_list<std::complex<double>> zs, double t_);

  static HeisPoint from_coords(int dim, const double* coords);

  std::complex<double> zc(int j) const { return {z[2 * j], z[2 * j + 1]}; }
  int real_dim() const { return 2 * n + 1; }
  // axis in [0, 2n]; axis 2n is t
  double coord(int axis) const { return axis == 2 * n ? t : z[axis]; }
  double& coord(int axis) { return axis == 2 * n ? t : z[axis]; }
  double z_norm2() const;
  bool is_finite() const;
};

bool operator==(const HeisPoint& a, const HeisPoint& b);

// Im(z . conj(w)) summed over coordinates.
double im_dot_conj(const HeisPoint& a, const HeisPoint& b);

HeisPoint group_mul(const HeisPoint& a, const HeisPoint& b);
HeisPoint group_inv(const HeisPoint& a);
double koranyi_norm(const HeisPoint& a);
double dist_left(const HeisPoint& x, const HeisPoint& y);
HeisPoint dilate(double r, const HeisPoint& a);
bool ball_contains(const HeisPoint& center, double radius, const HeisPoint& x);

struct BoxRegion {
  int n = 1;
  std::vector<double> half_widths;  // 2n+1 entries, t last

  BoxRegion() = default;
  BoxRegion(int dim, std::vector<double> hw);
  static BoxRegion cube(int dim, double hz, double ht);

  bool contains(const HeisPoint& x) const;
  double volume() const;
};

// Largest observed d(x,z) / (d(x,y) + d(y,z)) over random triples in the box.
double measure_quasi_triangle(const BoxRegion& region, int samples, std::uint64_t seed);

HeisPoint random_point(const BoxRegion& region, std::mt19937_64& gen);

}  // namespace heislab
