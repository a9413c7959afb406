#include "heislab/field.hpp"

#include <cmath>
#include <numbers>

#include "heislab/quadrature.hpp"

namespace heislab {

GridSpec::GridSpec(BoxRegion r, std::vector<int> c) : region(std::move(r)), counts(std::move(c)) {
  if (static_cast<int>(counts.size()) != dims()) throw DimensionMismatch("GridSpec: counts size");
  for (int k : counts)
    if (k < 1) throw std::invalid_argument("GridSpec: counts must be positive");
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int k : counts) s *= static_cast<std::size_t>(k);
  return s;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dims(); ++a) v *= spacing(a);
  return v;
}

std::vector<int> GridSpec::unflatten(std::size_t idx) const {
  std::vector<int> ijk(dims());
  for (int a = dims() - 1; a >= 0; --a) {
    ijk[a] = static_cast<int>(idx % counts[a]);
    idx /= counts[a];
  }
  return ijk;
}

std::size_t GridSpec::flatten(const std::vector<int>& ijk) const {
  std::size_t idx = 0;
  for (int a = 0; a < dims(); ++a) idx = idx * counts[a] + ijk[a];
  return idx;
}

HeisPoint GridSpec::center(std::size_t idx) const {
  HeisPoint p(n());
  for (int a = dims() - 1; a >= 0; --a) {
    int i = static_cast<int>(idx % counts[a]);
    idx /= counts[a];
    p.coord(a) = -region.half_widths[a] + (i + 0.5) * spacing(a);
  }
  return p;
}

std::size_t GridSpec::locate(const HeisPoint& x) const {
  std::size_t idx = 0;
  for (int a = 0; a < dims(); ++a) {
    double u = (x.coord(a) + region.half_widths[a]) / spacing(a);
    if (u < 0.0 || u > counts[a]) return npos;
    int i = std::min(static_cast<int>(u), counts[a] - 1);
    idx = idx * counts[a] + i;
  }
  return idx;
}

GridSpec GridSpec::refined(int factor) const {
  std::vector<int> c = counts;
  for (int& k : c) k *= factor;
  return GridSpec(region, std::move(c));
}

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, n) / std::tgamma(static_cast<double>(n));
}

SphereRule SphereRule::make(int n, int m, int radial) {
  if (n < 1 || n > kMaxN) throw DimensionMismatch("SphereRule: unsupported n");
  if (m < 1) throw std::invalid_argument("SphereRule: m must be positive");
  SphereRule rule;
  rule.n = n;
  const double two_pi = 2.0 * std::numbers::pi;

  // simplex points (u_1..u_n) with weights; the uniform measure on S^{2n-1}
  // pushes forward to the uniform measure on the simplex
  std::vector<std::vector<double>> us{{1.0}};
  std::vector<double> uw{1.0};
  if (n >= 2) {
    if (radial < 1) throw std::invalid_argument("SphereRule: radial nodes needed for n >= 2");
    Rule gl = gauss_legendre(radial, 0.0, 1.0);
    us.assign(1, std::vector<double>{});
    uw.assign(1, 1.0);
    std::vector<double> rest{1.0};
    for (int i = 1; i <= n - 1; ++i) {
      std::vector<std::vector<double>> nus;
      std::vector<double> nuw, nrest;
      for (std::size_t a = 0; a < us.size(); ++a) {
        for (std::size_t q = 0; q < gl.size(); ++q) {
          double s = gl.x[q];
          double w = gl.w[q] * (n - i) * std::pow(1.0 - s, n - i - 1);
          auto u = us[a];
          u.push_back(rest[a] * s);
          nus.push_back(std::move(u));
          nuw.push_back(uw[a] * w);
          nrest.push_back(rest[a] * (1.0 - s));
        }
      }
      us = std::move(nus);
      uw = std::move(nuw);
      rest = std::move(nrest);
    }
    for (std::size_t a = 0; a < us.size(); ++a) us[a].push_back(rest[a]);
  }

  std::size_t per = 1;
  for (int j = 0; j < n; ++j) per *= static_cast<std::size_t>(m);
  for (std::size_t a = 0; a < us.size(); ++a) {
    for (std::size_t c = 0; c < per; ++c) {
      HeisPoint p(n);
      std::size_t cc = c;
      for (int j = 0; j < n; ++j) {
        int i = static_cast<int>(cc % m);
        cc /= m;
        double xi = two_pi * i / m;
        double rho = std::sqrt(us[a][j]);
        p.z[2 * j] = rho * std::cos(xi);
        p.z[2 * j + 1] = rho * std::sin(xi);
      }
      rule.nodes.push_back(p);
      rule.weights.push_back(uw[a] / static_cast<double>(per));
    }
  }
  rule.exactness = n == 1 ? m - 1 : std::min(m - 1, 4 * radial - 2 - 2 * (n - 2));
  return rule;
}

bool SphereRule::antipodal() const {
  for (const auto& p : nodes) {
    HeisPoint q = group_inv(p);
    bool found = false;
    for (const auto& r : nodes) {
      double d = 0.0;
      for (int i = 0; i < 2 * n; ++i) d += std::abs(r.z[i] - q.z[i]);
      if (d < 1e-12) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

double grid_integral(const SampledField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().cell_volume();
}

double grid_lp_norm(const SampledField& f, double p) {
  double s = 0.0;
  if (std::isinf(p)) {
    for (double v : f.values()) s = std::max(s, std::abs(v));
    return s;
  }
  for (double v : f.values()) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

}  // namespace heislab
