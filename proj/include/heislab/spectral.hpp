#pragma once

#include <complex>
#include <functional>

#include "heislab/field.hpp"
#include "heislab/heis_core.hpp"

namespace heislab {

using cplx = std::complex<double>;
using ZFn = std::function<cplx(const HeisPoint&)>;  // reads z only

// amp * exp(-a|z'|^2 - b t'^2) with (z', t') = center^{-1} x.
struct HeisGaussian {
  int n = 1;
  double amp = 1.0, a = 1.0, b = 1.0;
  HeisPoint center;

  HeisGaussian() = default;
  HeisGaussian(double amp_, double a_, double b_, HeisPoint c)
      : n(c.n), amp(amp_), a(a_), b(b_), center(c) {}

  double operator()(const HeisPoint& x) const;
  // f^lambda(z) = int e^{i lambda t} f(z, t) dt in closed form
  cplx partial_ft(double lambda, const HeisPoint& z) const;
  // delta_r f = f o delta_r, again a Gaussian
  HeisGaussian dilated(double r) const;
};

enum class Provenance { closed_form, quadrature };

struct PartialTransform {
  double lambda = 0.0;
  Provenance provenance = Provenance::closed_form;
  ZFn eval;
  bool flagged = false;
  double error_estimate = 0.0;

  cplx operator()(const HeisPoint& z) const { return eval(z); }
};

PartialTransform partial_ft(const HeisGaussian& f, double lambda);

// Composite Gauss-Legendre in t over [-T, T]. The error estimate compares
// `panels` against 2*`panels` at z = 0 and flags when it exceeds tol.
PartialTransform partial_ft(FieldFn f, int n, double lambda, double T, int panels = 16,
                            double tol = 1e-10);

// (2 pi)^{-1} int_{-L}^{L} e^{-i lambda t} F(lambda) dlambda
cplx inverse_partial_ft(const std::function<cplx(double)>& F, double t, double L,
                        int panels = 32);

struct TwistedResult {
  cplx value;
  double boundary_mass = 0.0;  // |integrand| mass in the outer tenth of the box
  bool flagged = false;
};

// F *_lambda G(z) = int F(z-w) G(w) e^{i(lambda/2) Im z.conj(w)} dw over [-L, L]^{2n}.
TwistedResult twisted_conv(const ZFn& F, const ZFn& G, double lambda, const HeisPoint& z,
                           double L, int panels = 8, int order = 12, double tol = 1e-8);

// varphi_k^lambda as a ZFn.
ZFn varphi_fn(int k, double lambda);

enum class MultiplierKind { spherical, derivative, family, identity };

struct Multiplier {
  MultiplierKind kind = MultiplierKind::spherical;
  double r = 1.0;
  double beta = 0.0;  // family only
};

struct SpectralTruncation {
  int K_cap = 100000;
  double Lambda = 0.0;  // 0 picks the Gaussian tail cutoff
  int panels = 8;
  int order = 24;
  double tol = 1e-12;  // per-node k-tail and lambda-tail target
};

struct SpectralResult {
  double value = 0.0;
  double tail_estimate = 0.0;
  int K_used = 0;  // largest k reached over lambda nodes
  double Lambda = 0.0;
  int n_lambda = 0;
  bool flagged = false;
};

SpectralResult spectral_mean(const HeisGaussian& f, const Multiplier& m, const HeisPoint& x,
                             const SpectralTruncation& trunc = {});
SpectralResult spectral_spherical_mean(const HeisGaussian& f, double r, const HeisPoint& x,
                                       const SpectralTruncation& trunc = {});
SpectralResult spectral_derivative_mean(const HeisGaussian& f, double r, const HeisPoint& x,
                                        const SpectralTruncation& trunc = {});
SpectralResult spectral_family_mean(const HeisGaussian& f, double beta, const HeisPoint& x,
                                    const SpectralTruncation& trunc = {});

// Coefficient of the derivative multiplier at (k, lambda, r).
double derivative_multiplier(int k, int n, double lambda, double r);

// Kernels in t. Constants fixed by unit mass: 4/pi and 8/pi.
double poisson_kernel(double r, double t);
double q_kernel(double r, double t);
double k_beta_kernel(double beta, double t);
cplx k_beta_transform(double beta, double lambda);             // (1 - i lambda)^{-beta}
cplx k_beta_transform_quadrature(double beta, double lambda);  // tanh-sinh on [0, 60]
double poisson_transform(double r, double lambda);             // e^{-r|lambda|/4}
double poisson_transform_quadrature(double r, double lambda);  // Ooura cosine transform

enum class KernelKind { poisson, q, k_beta };
double kernel_mass(KernelKind kind, double param);

// d/du p_{u^2 a}(t): Richardson central differences vs (2/u)(p - q).
double poisson_u_derivative_fd(double u, double a, double t, double h = 1e-3);
double poisson_u_derivative_rhs(double u, double a, double t);

struct IdentSides {
  double lhs = 0.0;
  double rhs = 0.0;          // without the leading factor 2
  double rhs_factor2 = 0.0;  // as printed
};
IdentSides corollary_ident_check(double alpha, double beta, int k, double t);

// P_s f(z,t) = (1/pi) int_{-pi/2}^{pi/2} f(z, t - (s/4) tan th) dth
double poisson_smooth(const FieldFn& f, double s, const HeisPoint& x, int theta_nodes = 64);

struct FamilyResult {
  double value = 0.0;
  double error_estimate = 0.0;  // r_nodes vs 2*r_nodes
  bool flagged = false;
};

// Integral route for the analytic family at real beta > 0.
FamilyResult analytic_family_mean(double beta, const FieldFn& f, const HeisPoint& x, int r_nodes,
                                  const SphereRule& rule, int theta_nodes = 64,
                                  double tol = 1e-6);

}  // namespace heislab
