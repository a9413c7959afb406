#pragma once

#include <complex>
#include <concepts>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "heislab/heis_core.hpp"

namespace heislab {

// Cell-centred uniform grid over a BoxRegion; axis 2n is t.
struct GridSpec {
  BoxRegion region;
  std::vector<int> counts;

  GridSpec() = default;
  GridSpec(BoxRegion r, std::vector<int> c);

  int n() const { return region.n; }
  int dims() const { return 2 * region.n + 1; }
  std::size_t size() const;
  double spacing(int axis) const { return 2.0 * region.half_widths[axis] / counts[axis]; }
  double cell_volume() const;
  HeisPoint center(std::size_t idx) const;
  std::vector<int> unflatten(std::size_t idx) const;
  std::size_t flatten(const std::vector<int>& ijk) const;
  // index of the cell containing x, or npos outside the region
  std::size_t locate(const HeisPoint& x) const;
  GridSpec refined(int factor) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

enum class Interp { multilinear, nearest };

template <class T>
class BasicSampledField {
 public:
  BasicSampledField() = default;
  BasicSampledField(GridSpec g, std::vector<T> v, Interp mode = Interp::multilinear)
      : grid_(std::move(g)), values_(std::move(v)), mode_(mode) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("SampledField: size mismatch");
  }

  template <class F>
  static BasicSampledField sample(const GridSpec& g, F&& f, Interp mode = Interp::multilinear) {
    std::vector<T> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.center(i));
    return BasicSampledField(g, std::move(v), mode);
  }

  const GridSpec& grid() const { return grid_; }
  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }
  Interp mode() const { return mode_; }
  void set_mode(Interp m) { mode_ = m; }
  int n() const { return grid_.n(); }

  T operator()(const HeisPoint& x) const;

 private:
  GridSpec grid_;
  std::vector<T> values_;
  Interp mode_ = Interp::multilinear;
};

using SampledField = BasicSampledField<double>;
using ComplexField = BasicSampledField<std::complex<double>>;

template <class T>
T BasicSampledField<T>::operator()(const HeisPoint& x) const {
  const int d = grid_.dims();
  if (!grid_.region.contains(x)) return T{};
  if (mode_ == Interp::nearest) {
    std::size_t idx = grid_.locate(x);
    return idx == GridSpec::npos ? T{} : values_[idx];
  }
  // Multilinear between cell centres, zero beyond the outermost centres.
  int base[2 * kMaxN + 1];
  double frac[2 * kMaxN + 1];
  for (int a = 0; a < d; ++a) {
    double u = (x.coord(a) + grid_.region.half_widths[a]) / grid_.spacing(a) - 0.5;
    double f = std::floor(u);
    base[a] = static_cast<int>(f);
    frac[a] = u - f;
  }
  T acc{};
  const int corners = 1 << d;
  for (int c = 0; c < corners; ++c) {
    double wgt = 1.0;
    std::size_t idx = 0;
    bool inside = true;
    for (int a = 0; a < d; ++a) {
      int bit = (c >> a) & 1;
      int i = base[a] + bit;
      if (i < 0 || i >= grid_.counts[a]) {
        inside = false;
        break;
      }
      wgt *= bit ? frac[a] : 1.0 - frac[a];
      idx = idx * grid_.counts[a] + i;
    }
    if (inside && wgt != 0.0) acc += wgt * values_[idx];
  }
  return acc;
}

// Real-valued function on H^n.
template <class F>
concept HeisField = requires(const F& f, const HeisPoint& x) {
  { f(x) } -> std::convertible_to<double>;
};

using FieldFn = std::function<double(const HeisPoint&)>;

// Quadrature on the unit sphere S^{2n-1} of C^n, weights summing to 1.
struct SphereRule {
  int n = 1;
  std::vector<HeisPoint> nodes;  // t = 0
  std::vector<double> weights;
  int exactness = 0;  // polynomial degree integrated exactly

  // n = 1: m uniform points. n >= 2: Hopf/Dirichlet product rule with
  // `m` angles per circle and `radial` Gauss-Legendre nodes per simplex axis.
  static SphereRule make(int n, int m, int radial = 0);
  bool antipodal() const;
};

double sphere_area(int n);  // |S^{2n-1}|

// Midpoint Riemann sums over the grid.
double grid_integral(const SampledField& f);
double grid_lp_norm(const SampledField& f, double p);

}  // namespace heislab
