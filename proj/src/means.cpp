#include "heislab/means.hpp"

#include <algorithm>
#include <cmath>

#include "heislab/quadrature.hpp"

namespace heislab {

MeanResult spherical_mean_checked(const SampledField& f, double r, const HeisPoint& x,
                                  const SphereRule& rule, double tol) {
  MeanResult res;
  res.value = quadrature_spherical_mean(f, r, x, rule);
  const auto& box = f.grid().region;
  HeisPoint w(x.n);
  for (const auto& node : rule.nodes) {
    for (int c = 0; c < 2 * x.n; ++c) w.z[c] = r * node.z[c];
    if (!box.contains(sphere_shift(x, w))) {
      res.exits_region = true;
      break;
    }
  }
  if (!res.exits_region) return res;
  const GridSpec& g = f.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto ijk = g.unflatten(i);
    bool edge = false;
    for (int a = 0; a < g.dims(); ++a)
      if (ijk[a] == 0 || ijk[a] == g.counts[a] - 1) edge = true;
    if (edge) res.boundary_max = std::max(res.boundary_max, std::abs(f.values()[i]));
  }
  res.flagged = res.boundary_max > tol;
  return res;
}

SampledField translate(const SampledField& f, const HeisPoint& y) {
  HeisPoint yi = group_inv(y);
  return SampledField::sample(
      f.grid(), [&](const HeisPoint& x) { return f(group_mul(x, yi)); }, f.mode());
}

FieldFn translate_fn(FieldFn f, const HeisPoint& y) {
  HeisPoint yi = group_inv(y);
  return [f = std::move(f), yi](const HeisPoint& x) { return f(group_mul(x, yi)); };
}

SampledField dilate_field(const SampledField& f, double r) {
  if (!(r > 0.0)) throw std::domain_error("dilate_field: r must be positive");
  return SampledField::sample(
      f.grid(), [&](const HeisPoint& x) { return f(dilate(r, x)); }, f.mode());
}

FieldFn dilate_fn(FieldFn f, double r) {
  if (!(r > 0.0)) throw std::domain_error("dilate_fn: r must be positive");
  return [f = std::move(f), r](const HeisPoint& x) { return f(dilate(r, x)); };
}

double lacunary_max(const FieldFn& f, double delta, int j_lo, int j_hi, const HeisPoint& x,
                    const SphereRule& rule) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("lacunary_max: delta in (0,1)");
  double m = 0.0;
  for (int j = j_lo; j <= j_hi; ++j)
    m = std::max(m, std::abs(quadrature_spherical_mean(f, std::pow(delta, j), x, rule)));
  return m;
}

std::vector<double> local_radii(double delta, int r_nodes) {
  if (r_nodes < 1) throw std::invalid_argument("local_radii: r_nodes >= 1");
  std::vector<double> r(r_nodes, 1.0);
  for (int i = 1; i < r_nodes; ++i)
    r[i] = std::pow(delta, -static_cast<double>(i) / (r_nodes - 1));
  return r;
}

double local_max(const FieldFn& f, double delta, int r_nodes, const HeisPoint& x,
                 const SphereRule& rule) {
  double m = 0.0;
  for (double r : local_radii(delta, r_nodes))
    m = std::max(m, std::abs(quadrature_spherical_mean(f, r, x, rule)));
  return m;
}

double derivative_mean_fd(const FieldFn& f, double r, const HeisPoint& x, const SphereRule& rule,
                          double h) {
  auto d = [&](double hh) {
    return (quadrature_spherical_mean(f, r + hh, x, rule) -
            quadrature_spherical_mean(f, r - hh, x, rule)) /
           (2.0 * hh);
  };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

double ftc_majorant(const FieldFn& f, double delta, const HeisPoint& x, const SphereRule& rule,
                    int panels, int order) {
  Rule q = composite_gauss_legendre(order, panels, 1.0, 1.0 / delta);
  double s = quadrature_spherical_mean(f, 1.0, x, rule);
  for (std::size_t i = 0; i < q.size(); ++i)
    s += q.w[i] * std::abs(derivative_mean_fd(f, q.x[i], x, rule));
  return s;
}

double lp_norm(const FieldFn& f, double p, const BoxQuadrature& q) {
  const int d = 2 * q.region.n + 1;
  std::vector<Rule> rules;
  for (int a = 0; a < d; ++a)
    rules.push_back(composite_gauss_legendre(q.order, q.panels, -q.region.half_widths[a],
                                             q.region.half_widths[a]));
  const std::size_t m = rules[0].size();
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= m;
  double s = 0.0;
  HeisPoint x(q.region.n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t c = idx;
    double w = 1.0;
    for (int a = d - 1; a >= 0; --a) {
      std::size_t i = c % m;
      c /= m;
      x.coord(a) = rules[a].x[i];
      w *= rules[a].w[i];
    }
    double v = std::abs(f(x));
    s = std::isinf(p) ? std::max(s, v) : s + w * std::pow(v, p);
  }
  return std::isinf(p) ? s : std::pow(s, 1.0 / p);
}

double continuity_ratio(const FieldFn& f, const HeisPoint& y, double p, double q, double r,
                        const SphereRule& rule, const BoxQuadrature& quad) {
  FieldFn ty = translate_fn(f, y);
  FieldFn diff = [&](const HeisPoint& x) {
    return quadrature_spherical_mean(f, r, x, rule) - quadrature_spherical_mean(ty, r, x, rule);
  };
  return lp_norm(diff, q, quad) / lp_norm(f, p, quad);
}

}  // namespace heislab
