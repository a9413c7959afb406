#include "heislab/spectral.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "heislab/laguerre.hpp"
#include "heislab/means.hpp"
#include "heislab/quadrature.hpp"

namespace heislab {

namespace {

constexpr double kPi = std::numbers::pi;

double z_dist2(const HeisPoint& a, const HeisPoint& b) {
  double s = 0.0;
  for (int i = 0; i < 2 * a.n; ++i) s += (a.z[i] - b.z[i]) * (a.z[i] - b.z[i]);
  return s;
}

}  // namespace

double HeisGaussian::operator()(const HeisPoint& x) const {
  HeisPoint y = group_mul(group_inv(center), x);
  return amp * std::exp(-a * y.z_norm2() - b * y.t * y.t);
}

cplx HeisGaussian::partial_ft(double lambda, const HeisPoint& z) const {
  double shift = center.t + 0.5 * im_dot_conj(center, z);
  double mag = amp * std::exp(-a * z_dist2(z, center)) * std::sqrt(kPi / b) *
               std::exp(-lambda * lambda / (4.0 * b));
  return std::polar(mag, lambda * shift);
}

HeisGaussian HeisGaussian::dilated(double r) const {
  return HeisGaussian(amp, a * r * r, b * r * r * r * r, dilate(1.0 / r, center));
}

PartialTransform partial_ft(const HeisGaussian& f, double lambda) {
  PartialTransform p;
  p.lambda = lambda;
  p.provenance = Provenance::closed_form;
  p.eval = [f, lambda](const HeisPoint& z) { return f.partial_ft(lambda, z); };
  return p;
}

PartialTransform partial_ft(FieldFn f, int n, double lambda, double T, int panels, double tol) {
  auto integrate = [f = std::move(f), lambda, T](const HeisPoint& z, int np) {
    Rule q = composite_gauss_legendre(16, np, -T, T);
    cplx s = 0.0;
    HeisPoint x = z;
    for (std::size_t i = 0; i < q.size(); ++i) {
      x.t = q.x[i];
      s += q.w[i] * std::polar(1.0, lambda * q.x[i]) * f(x);
    }
    return s;
  };
  PartialTransform p;
  p.lambda = lambda;
  p.provenance = Provenance::quadrature;
  HeisPoint z0(n);
  p.error_estimate = std::abs(integrate(z0, 2 * panels) - integrate(z0, panels));
  p.flagged = p.error_estimate > tol;
  p.eval = [integrate, panels](const HeisPoint& z) { return integrate(z, 2 * panels); };
  return p;
}

cplx inverse_partial_ft(const std::function<cplx(double)>& F, double t, double L, int panels) {
  Rule q = composite_gauss_legendre(16, panels, -L, L);
  cplx s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * std::polar(1.0, -q.x[i] * t) * F(q.x[i]);
  return s / (2.0 * kPi);
}

TwistedResult twisted_conv(const ZFn& F, const ZFn& G, double lambda, const HeisPoint& z, double L,
                           int panels, int order, double tol) {
  const int n = z.n, d = 2 * n;
  Rule r = composite_gauss_legendre(order, panels, -L, L);
  const std::size_t m = r.size();
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= m;
  TwistedResult res;
  double mass = 0.0;
  HeisPoint w(n), zw(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t c = idx;
    double wt = 1.0;
    bool shell = false;
    for (int a = d - 1; a >= 0; --a) {
      std::size_t i = c % m;
      c /= m;
      w.z[a] = r.x[i];
      wt *= r.w[i];
      if (std::abs(r.x[i]) > 0.9 * L) shell = true;
    }
    for (int a = 0; a < d; ++a) zw.z[a] = z.z[a] - w.z[a];
    cplx v = F(zw) * G(w) * std::polar(1.0, 0.5 * lambda * im_dot_conj(z, w));
    res.value += wt * v;
    if (shell) mass += wt * std::abs(v);
  }
  res.boundary_mass = mass;
  res.flagged = mass > tol;
  return res;
}

ZFn varphi_fn(int k, double lambda) {
  return [k, lambda](const HeisPoint& z) { return cplx(varphi(k, lambda, z)); };
}

double derivative_multiplier(int k, int n, double lambda, double r) {
  double s = std::sqrt(std::abs(lambda)) * r;
  double v = -0.5 * std::abs(lambda) * r * psi(k, n - 1.0, s);
  if (k > 0) v -= k * std::abs(lambda) * r / n * psi(k - 1, n, s);
  return v;
}

namespace {

// Sum_k m_k w^k varphi_k^lambda(rho) with the tail bound of the remainder.
struct KSum {
  double value = 0.0;
  double tail = 0.0;
  int K = 0;
  bool converged = false;
};

KSum laguerre_sum(int n, double lambda, double rho, double w, const Multiplier& m, int K_cap,
                  double tol) {
  const double sl = std::sqrt(lambda);
  PsiStepper phi(n - 1.0, sl * rho);
  PsiStepper ma(m.kind == MultiplierKind::family ? m.beta + n - 1.0 : n - 1.0,
                m.kind == MultiplierKind::family ? sl : sl * m.r);
  PsiStepper mb(n, sl * m.r);  // psi_{k-1}^n for the derivative kind
  const double aw = std::abs(w);
  const double damp = std::pow(1.0 - w, n);
  auto mbound = [&](double k) {
    return m.kind == MultiplierKind::derivative ? lambda * m.r * (0.5 + k / n) : 1.0;
  };
  KSum out;
  double wk = 1.0, binom = 1.0;
  for (int k = 0; k <= K_cap; ++k) {
    if (k > 0) {
      phi.next();
      ma.next();
      if (k > 1) mb.next();
      wk *= w;
      binom *= (k + n - 1.0) / k;
    }
    double mk;
    switch (m.kind) {
      case MultiplierKind::identity: mk = 1.0; break;
      case MultiplierKind::derivative:
        mk = -0.5 * lambda * m.r * ma.value();
        if (k > 0) mk -= k * lambda * m.r / n * mb.value();
        break;
      default: mk = ma.value(); break;
    }
    out.value += mk * wk * binom * phi.value();
    out.K = k;
    // remainder after k: geometric majorant with ratio q
    double b1 = std::abs(wk) * aw * binom * (k + n) / (k + 1.0) * mbound(k + 1);
    double q = aw * (k + n + 1.0) / (k + 2.0) * mbound(k + 2) / mbound(k + 1);
    if (q < 1.0) {
      out.tail = b1 / (1.0 - q);
      if (damp * out.tail <= tol) {
        out.converged = true;
        break;
      }
    } else {
      out.tail = std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

}  // namespace

SpectralResult spectral_mean(const HeisGaussian& f, const Multiplier& m, const HeisPoint& x,
                             const SpectralTruncation& trunc) {
  if (x.n != f.n) throw DimensionMismatch("spectral_mean: dimension");
  if (m.kind != MultiplierKind::family && m.kind != MultiplierKind::identity && !(m.r > 0.0))
    throw std::domain_error("spectral_mean: r must be positive");
  if (m.kind == MultiplierKind::family && !(m.beta > 0.0))
    throw std::domain_error("spectral_mean: beta must be positive");
  const int n = f.n;
  SpectralResult res;
  // C(lambda) = amp sqrt(pi/b) e^{-lambda^2/4b} falls below tol^{4/3} past Lambda
  res.Lambda = trunc.Lambda > 0.0 ? trunc.Lambda
                                  : 2.0 * std::sqrt(f.b * std::log(1.0 / trunc.tol) * 4.0 / 3.0);
  Rule q = composite_gauss_legendre(trunc.order, trunc.panels, 0.0, res.Lambda);
  res.n_lambda = static_cast<int>(q.size());
  const double rho = std::sqrt(z_dist2(x, f.center));
  const double T = x.t - f.center.t - 0.5 * im_dot_conj(f.center, x);
  double acc = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double lam = q.x[i];
    double C = f.amp * std::sqrt(kPi / f.b) * std::exp(-lam * lam / (4.0 * f.b));
    double w = (4.0 * f.a - lam) / (4.0 * f.a + lam);
    double damp = std::pow(2.0 * lam / (4.0 * f.a + lam), n);
    KSum ks = laguerre_sum(n, lam, rho, w, m, trunc.K_cap, trunc.tol);
    res.K_used = std::max(res.K_used, ks.K);
    if (!ks.converged) res.flagged = true;
    acc += q.w[i] * std::cos(lam * T) * C * damp * ks.value;
    tail += q.w[i] * C * damp * ks.tail;
  }
  // f real: the negative half-line is the conjugate
  res.value = acc / kPi;
  double lam_tail = f.amp * std::exp(-res.Lambda * res.Lambda / (4.0 * f.b));
  if (m.kind == MultiplierKind::derivative) lam_tail *= res.Lambda * m.r * (1.0 + res.Lambda);
  res.tail_estimate = tail / kPi + lam_tail;
  return res;
}

SpectralResult spectral_spherical_mean(const HeisGaussian& f, double r, const HeisPoint& x,
                                       const SpectralTruncation& trunc) {
  return spectral_mean(f, {MultiplierKind::spherical, r, 0.0}, x, trunc);
}

SpectralResult spectral_derivative_mean(const HeisGaussian& f, double r, const HeisPoint& x,
                                        const SpectralTruncation& trunc) {
  return spectral_mean(f, {MultiplierKind::derivative, r, 0.0}, x, trunc);
}

SpectralResult spectral_family_mean(const HeisGaussian& f, double beta, const HeisPoint& x,
                                    const SpectralTruncation& trunc) {
  return spectral_mean(f, {MultiplierKind::family, 1.0, beta}, x, trunc);
}

double poisson_kernel(double r, double t) {
  if (!(r > 0.0)) throw std::domain_error("poisson_kernel: r must be positive");
  return 4.0 / kPi * r / (r * r + 16.0 * t * t);
}

double q_kernel(double r, double t) {
  if (!(r > 0.0)) throw std::domain_error("q_kernel: r must be positive");
  double d = r * r + 16.0 * t * t;
  return 8.0 / kPi * r * r * r / (d * d);
}

double k_beta_kernel(double beta, double t) {
  if (!(beta > 0.0)) throw std::domain_error("k_beta_kernel: beta must be positive");
  if (t <= 0.0) return 0.0;
  return std::exp((beta - 1.0) * std::log(t) - t - boost::math::lgamma(beta));
}

cplx k_beta_transform(double beta, double lambda) {
  if (!(beta > 0.0)) throw std::domain_error("k_beta_transform: beta must be positive");
  return std::pow(cplx(1.0, -lambda), -beta);
}

cplx k_beta_transform_quadrature(double beta, double lambda) {
  if (!(beta > 0.0)) throw std::domain_error("k_beta_transform: beta must be positive");
  boost::math::quadrature::tanh_sinh<double> ts;
  double re = ts.integrate([&](double t) { return k_beta_kernel(beta, t) * std::cos(lambda * t); },
                           0.0, 60.0);
  double im = ts.integrate([&](double t) { return k_beta_kernel(beta, t) * std::sin(lambda * t); },
                           0.0, 60.0);
  return {re, im};
}

double poisson_transform(double r, double lambda) { return std::exp(-r * std::abs(lambda) / 4.0); }

double poisson_transform_quadrature(double r, double lambda) {
  if (lambda == 0.0) return kernel_mass(KernelKind::poisson, r);
  boost::math::quadrature::ooura_fourier_cos<double> oc;
  auto [v, err] = oc.integrate([r](double t) { return poisson_kernel(r, t); }, std::abs(lambda));
  (void)err;
  return 2.0 * v;
}

double kernel_mass(KernelKind kind, double param) {
  boost::math::quadrature::exp_sinh<double> es;
  switch (kind) {
    case KernelKind::poisson:
      return 2.0 * es.integrate([param](double t) { return poisson_kernel(param, t); }, 0.0,
                                std::numeric_limits<double>::infinity());
    case KernelKind::q:
      return 2.0 * es.integrate([param](double t) { return q_kernel(param, t); }, 0.0,
                                std::numeric_limits<double>::infinity());
    case KernelKind::k_beta: {
      boost::math::quadrature::tanh_sinh<double> ts;
      return ts.integrate([param](double t) { return k_beta_kernel(param, t); }, 0.0, 1.0) +
             es.integrate([param](double t) { return k_beta_kernel(param, t); }, 1.0,
                          std::numeric_limits<double>::infinity());
    }
  }
  return 0.0;
}

double poisson_u_derivative_fd(double u, double a, double t, double h) {
  auto p = [&](double uu) { return poisson_kernel(uu * uu * a, t); };
  auto d = [&](double hh) { return (p(u + hh) - p(u - hh)) / (2.0 * hh); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

double poisson_u_derivative_rhs(double u, double a, double t) {
  double s = u * u * a;
  return 2.0 / u * (poisson_kernel(s, t) - q_kernel(s, t));
}

IdentSides corollary_ident_check(double alpha, double beta, int k, double t) {
  if (!(alpha > -1.0) || !(beta > 0.0)) throw std::domain_error("corollary_ident: parameters");
  IdentSides out;
  out.lhs = psi(k, alpha + beta, t);
  double c = std::exp(boost::math::lgamma(beta + alpha + 1.0) - boost::math::lgamma(beta) -
                      boost::math::lgamma(alpha + 1.0));
  // xc is the signed distance to the nearer endpoint, so 1 - s stays exact near s = 1
  auto g = [&](double s, double xc) {
    double s1 = xc > 0.0 ? xc : 1.0 - s;
    double s0 = xc < 0.0 ? -xc : s;
    return std::pow(s0, alpha) * std::pow(s1, beta - 1.0) * psi(k, alpha, t * std::sqrt(s0)) *
           std::exp(-t * t * s1 / 4.0);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double I = ts.integrate(g, 0.0, 1.0);
  out.rhs = c * I;
  out.rhs_factor2 = 2.0 * out.rhs;
  return out;
}

double poisson_smooth(const FieldFn& f, double s, const HeisPoint& x, int theta_nodes) {
  if (s == 0.0) return f(x);
  Rule q = gauss_legendre(theta_nodes, -0.5 * kPi, 0.5 * kPi);
  double acc = 0.0;
  HeisPoint y = x;
  for (std::size_t i = 0; i < q.size(); ++i) {
    y.t = x.t - 0.25 * s * std::tan(q.x[i]);
    acc += q.w[i] * f(y);
  }
  return acc / kPi;
}

namespace {

double family_integral(double beta, const FieldFn& f, const HeisPoint& x, int nodes,
                       const SphereRule& rule, int theta_nodes) {
  // Jacobi weight u^{beta-1}(1-u)^{n-1}, normalized: the prefactor makes it a probability
  Rule q = gauss_jacobi_unit(nodes, beta - 1.0, x.n - 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double u = q.x[i];
    double r = std::sqrt(1.0 - u);
    FieldFn Ar = [&](const HeisPoint& y) { return quadrature_spherical_mean(f, r, y, rule); };
    acc += q.w[i] * poisson_smooth(Ar, u, x, theta_nodes);
  }
  return acc;
}

}  // namespace

FamilyResult analytic_family_mean(double beta, const FieldFn& f, const HeisPoint& x, int r_nodes,
                                  const SphereRule& rule, int theta_nodes, double tol) {
  if (!(beta > 0.0)) throw std::domain_error("analytic_family_mean: beta must be positive");
  FamilyResult res;
  double coarse = family_integral(beta, f, x, r_nodes, rule, theta_nodes);
  res.value = family_integral(beta, f, x, 2 * r_nodes, rule, theta_nodes);
  res.error_estimate = std::abs(res.value - coarse);
  res.flagged = res.error_estimate > tol * std::max(1.0, std::abs(res.value));
  return res;
}

}  // namespace heislab
