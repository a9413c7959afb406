#pragma once

#include <cmath>
#include <vector>

#include "heislab/field.hpp"
#include "heislab/heis_core.hpp"

namespace heislab {

// x * (-w, 0) for w on the sphere: (z - w, t - 1/2 Im z.conj(w))
inline HeisPoint sphere_shift(const HeisPoint& x, const HeisPoint& w) {
  HeisPoint y(x.n);
  for (int i = 0; i < 2 * x.n; ++i) y.z[i] = x.z[i] - w.z[i];
  y.t = x.t - 0.5 * im_dot_conj(x, w);
  return y;
}

template <HeisField F>
double quadrature_spherical_mean(const F& f, double r, const HeisPoint& x, const SphereRule& rule) {
  if (!(r > 0.0)) throw std::domain_error("spherical mean: r must be positive");
  if (rule.n != x.n) throw DimensionMismatch("spherical mean: rule dimension");
  double s = 0.0;
  HeisPoint w(x.n);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    for (int c = 0; c < 2 * x.n; ++c) w.z[c] = r * rule.nodes[i].z[c];
    s += rule.weights[i] * f(sphere_shift(x, w));
  }
  return s;
}

struct MeanResult {
  double value = 0.0;
  bool exits_region = false;  // some node left the sampled box
  double boundary_max = 0.0;  // max |f| over boundary cells
  bool flagged = false;       // exits with boundary mass above tol
};

MeanResult spherical_mean_checked(const SampledField& f, double r, const HeisPoint& x,
                                  const SphereRule& rule, double tol = 1e-8);

// tau_y f(x) = f(x y^{-1})
SampledField translate(const SampledField& f, const HeisPoint& y);
FieldFn translate_fn(FieldFn f, const HeisPoint& y);
// delta_r f(x) = f(delta_r x)
SampledField dilate_field(const SampledField& f, double r);
FieldFn dilate_fn(FieldFn f, double r);

// sup over j in [j_lo, j_hi] of |A_{delta^j} f(x)|
double lacunary_max(const FieldFn& f, double delta, int j_lo, int j_hi, const HeisPoint& x,
                    const SphereRule& rule);

// Geometric radii on [1, 1/delta]; one node means r = 1.
std::vector<double> local_radii(double delta, int r_nodes);
double local_max(const FieldFn& f, double delta, int r_nodes, const HeisPoint& x,
                 const SphereRule& rule);

// d/dr A_r f(x) by Richardson-extrapolated central differences.
double derivative_mean_fd(const FieldFn& f, double r, const HeisPoint& x, const SphereRule& rule,
                          double h = 1e-3);

// A_1 f(x) + int_1^{1/delta} |B_r f(x)| dr, the integral by composite Gauss-Legendre.
double ftc_majorant(const FieldFn& f, double delta, const HeisPoint& x, const SphereRule& rule,
                    int panels = 32, int order = 8);

// Tensor-product Gauss-Legendre over a box, for L^p norms of closed-form fields.
struct BoxQuadrature {
  BoxRegion region;
  int panels = 4;
  int order = 8;
};
double lp_norm(const FieldFn& f, double p, const BoxQuadrature& q);

// ||A_r f - A_r tau_y f||_q / ||f||_p
double continuity_ratio(const FieldFn& f, const HeisPoint& y, double p, double q, double r,
                        const SphereRule& rule, const BoxQuadrature& quad);

}  // namespace heislab
