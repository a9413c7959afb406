#include <cmath>

#include "doctest.h"
#include "heislab/corpus.hpp"
#include "heislab/laguerre.hpp"
#include "heislab/means.hpp"
#include "heislab/spectral.hpp"

using namespace heislab;
using C = std::complex<double>;

TEST_CASE("Gaussian partial Fourier transform") {
  HeisGaussian g(1.0, 1.0, 2.0, HeisPoint({C(0.3, -0.1)}, 0.2));
  HeisPoint z({C(0.1, 0.4)}, 0.0);
  auto cf = partial_ft(g, 1.3);
  auto qd = partial_ft(FieldFn(g), 1, 1.3, 8.0, 32);
  CHECK(std::abs(cf(z) - qd(z)) <= 1e-10);
  // real f: f^{-lambda} = conj(f^lambda)
  CHECK(std::abs(g.partial_ft(-1.3, z) - std::conj(g.partial_ft(1.3, z))) <= 1e-15);
  // inversion at one point
  auto F = [&](double lam) { return g.partial_ft(lam, z); };
  HeisPoint x = z;
  x.t = 0.1;
  CHECK(std::abs(inverse_partial_ft(F, 0.1, 40.0, 64).real() - g(x)) <= 1e-6);
}

TEST_CASE("twisted convolution of Laguerre functions") {
  // varphi_j *_lambda varphi_k = (2 pi / lambda)^n delta_jk varphi_k
  HeisPoint z({C(0.3, 0.1)}, 0.0);
  for (int k : {0, 1}) {
    auto tc = twisted_conv(varphi_fn(k, 1.0), varphi_fn(k, 1.0), 1.0, z, 10.0, 8, 16);
    CHECK(std::abs(tc.value - C(2 * M_PI * varphi(k, 1.0, z), 0.0)) <= 1e-8);
    CHECK_FALSE(tc.flagged);
  }
  auto off = twisted_conv(varphi_fn(0, 1.0), varphi_fn(1, 1.0), 1.0, z, 10.0, 8, 16);
  CHECK(std::abs(off.value) <= 1e-8);
}

TEST_CASE("spectral and quadrature routes agree") {
  auto rule = SphereRule::make(1, 128);
  for (const auto& g : gaussian_corpus(1))
    for (double r : {0.5, 2.0}) {
      HeisPoint x({C(0.2, -0.1)}, 0.05);
      auto s = spectral_spherical_mean(g, r, x);
      CHECK_FALSE(s.flagged);
      CHECK(s.value == doctest::Approx(quadrature_spherical_mean(g, r, x, rule)).epsilon(1e-8));
      auto b = spectral_derivative_mean(g, r, x);
      CHECK(b.value == doctest::Approx(derivative_mean_fd(FieldFn(g), r, x, rule)).epsilon(1e-6));
    }
}

TEST_CASE("small radius tends to f") {
  HeisGaussian g(1.0, 1.0, 1.0, HeisPoint(1));
  HeisPoint x({C(0.2, 0.0)}, 0.1);
  CHECK(spectral_spherical_mean(g, 1e-4, x).value == doctest::Approx(g(x)).epsilon(1e-6));
}

TEST_CASE("kernels") {
  CHECK(poisson_kernel(1.0, 0.0) == doctest::Approx(4.0 / M_PI));
  CHECK(q_kernel(2.0, 0.0) == doctest::Approx(4.0 / M_PI));
  CHECK(q_kernel(2.0, 0.3) == doctest::Approx(q_kernel(1.0, 0.15) / 2.0));
  for (double r : {0.3, 1.0, 5.0}) {
    CHECK(kernel_mass(KernelKind::poisson, r) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(kernel_mass(KernelKind::q, r) == doctest::Approx(1.0).epsilon(1e-8));
  }
  for (double b : {0.5, 2.7}) CHECK(kernel_mass(KernelKind::k_beta, b) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(k_beta_kernel(1.0, 0.5) == doctest::Approx(std::exp(-0.5)));
  CHECK(k_beta_kernel(1.0, -0.5) == 0.0);
  CHECK_THROWS(k_beta_kernel(0.0, 1.0));
  CHECK(poisson_transform_quadrature(1.0, 4.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(poisson_transform(2.0, 0.0) == 1.0);
  // (1 - 3i)^{-2} = (-8 + 6i) / 100, modulus 0.1
  CHECK(std::abs(k_beta_transform(2.0, 3.0) - C(-0.08, 0.06)) <= 1e-15);
  CHECK(std::abs(k_beta_transform_quadrature(2.0, 3.0) - C(-0.08, 0.06)) <= 1e-9);
  CHECK(std::abs(k_beta_transform(1.0, 2.0) - 1.0 / C(1.0, -2.0)) <= 1e-15);
}

TEST_CASE("derivative relation carries 2/u") {
  for (double u : {0.5, 1.0, 3.0})
    CHECK(poisson_u_derivative_fd(u, 0.75, 0.2) ==
          doctest::Approx(poisson_u_derivative_rhs(u, 0.75, 0.2)).epsilon(1e-7));
  double fd = poisson_u_derivative_fd(1.0, 0.75, 0.2);
  double a = 0.75, t = 0.2;
  double half = (poisson_kernel(a, t) - q_kernel(a, t));  // the 1/u version at u = 1
  CHECK(std::abs(fd - half) > 1e-3);
}

TEST_CASE("Laguerre identity holds without the factor 2") {
  auto a = corollary_ident_check(0.0, 1.0, 0, 1.0);
  CHECK(a.lhs == doctest::Approx(std::exp(-0.25)).epsilon(1e-12));
  CHECK(a.rhs == doctest::Approx(a.lhs).epsilon(1e-10));
  CHECK(a.rhs_factor2 / a.lhs == doctest::Approx(2.0).epsilon(1e-10));
  auto b = corollary_ident_check(1.0, 0.5, 3, 2.0);
  CHECK(std::abs(b.lhs - b.rhs) <= 1e-8);
  for (double t : {0.5, 1.0, 2.0}) {
    auto c = corollary_ident_check(0.5, 2.0, 0, t);
    CHECK(c.lhs == doctest::Approx(std::exp(-t * t / 4)).epsilon(1e-12));
  }
  CHECK_THROWS(corollary_ident_check(-1.0, 1.0, 0, 1.0));
}

TEST_CASE("analytic family: integral and spectral routes") {
  auto rule = SphereRule::make(1, 128);
  HeisGaussian g = gaussian_corpus(1)[1];
  HeisPoint x({C(0.1, 0.2)}, 0.05);
  auto sp = spectral_family_mean(g, 1.0, x);
  auto ir = analytic_family_mean(1.0, FieldFn(g), x, 16, rule);
  CHECK(sp.value == doctest::Approx(ir.value).epsilon(1e-3));
  // nonnegative f gives a nonnegative average bounded by sup f
  CHECK(ir.value >= 0.0);
  CHECK(ir.value <= g.amp * (1 + 1e-9));
}
