#include <cmath>

#include "doctest.h"
#include "heislab/laguerre.hpp"
#include "heislab/quadrature.hpp"

using namespace heislab;

TEST_CASE("Laguerre polynomials") {
  CHECK(laguerre_poly(0, 0.3, 2.0) == 1.0);
  CHECK(laguerre_poly(1, 0.3, 2.0) == doctest::Approx(0.3 + 1 - 2.0));
  CHECK(laguerre_poly(2, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  for (double d : {0.0, 0.5, 2.0})
    for (double x : {0.1, 1.0, 3.0}) {
      double k2 = x * x / 2 - (d + 2) * x + (d + 1) * (d + 2) / 2;
      CHECK(laguerre_poly(2, d, x) == doctest::Approx(k2).epsilon(1e-12));
    }
  CHECK_THROWS(laguerre_poly(2, -1.0, 1.0));
}

TEST_CASE("gamma ratio") {
  CHECK(gamma_ratio(0, 2.5) == 1.0);
  CHECK(gamma_ratio(1000, 0.0) == doctest::Approx(1.0));
  CHECK(gamma_ratio(10, 1.0) == doctest::Approx(1.0 / 11).epsilon(1e-12));
  // k = 10^6 does not overflow: Gamma(d+1) k^{-d} asymptotically
  double g = gamma_ratio(1000000, 1.5);
  CHECK(g == doctest::Approx(std::tgamma(2.5) * std::pow(1e6, -1.5)).epsilon(1e-5));
}

TEST_CASE("normalized Laguerre functions") {
  for (double d : {-1.0 / 3.0, 0.0, 0.5, 1.0})
    for (int k : {0, 3, 100, 10000}) CHECK(std::abs(psi(k, d, 0.0) - 1.0) <= 1e-14);
  CHECK(psi(0, 0.7, 1.3) == doctest::Approx(std::exp(-1.3 * 1.3 / 4)));
  CHECK(std::abs(psi(1, 0.0, std::sqrt(2.0))) <= 1e-15);
  auto seq = psi_sequence(20, 1.0, 2.0);
  CHECK(seq[3] == doctest::Approx(psi(3, 1.0, 2.0)).epsilon(1e-14));
  // frozen value at (k, delta, r) = (3, 1, 2)
  CHECK(psi(3, 1.0, 2.0) == doctest::Approx(-0.122626480390481).epsilon(1e-13));
}

TEST_CASE("relation to the standard Laguerre functions uses 2^{delta/2}") {
  const int k = 3;
  const double d = 1.0, r = 2.0;
  double base = std::sqrt(gamma_ratio(k, d)) * std::pow(r, -d) * std_laguerre(k, d, r * r / 2);
  CHECK(psi(k, d, r) == doctest::Approx(std::pow(2.0, d / 2) * base).epsilon(1e-12));
  // the 2^delta form is off by 2^{delta/2}
  CHECK(std::abs(psi(k, d, r) - std::pow(2.0, d) * base) > 0.05);
  CHECK(std_laguerre(0, 0.0, 1.7) == doctest::Approx(std::exp(-0.85)));
}

TEST_CASE("Gram matrix of standard Laguerre functions is Gamma(delta+1) I") {
  for (double d : {0.0, 1.0, 0.5}) {
    Rule q = gauss_laguerre(40, d);
    for (int j = 0; j <= 20; j += 5)
      for (int k = 0; k <= 20; k += 4) {
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i)
          s += q.w[i] * std::exp(q.x[i]) * std::pow(q.x[i], -d) * std_laguerre(j, d, q.x[i]) * std_laguerre(k, d, q.x[i]);
        double want = j == k ? std::tgamma(d + 1) : 0.0;
        CHECK(std::abs(s - want) <= 1e-6);
      }
  }
}

TEST_CASE("varphi") {
  HeisPoint z(2);
  CHECK(varphi(4, 1.5, z) == doctest::Approx(5.0));  // C(4 + 1, 4)
  z.z[0] = 0.6;
  HeisPoint w(2);
  w.z[3] = 0.6;
  CHECK(varphi(3, 2.0, z) == doctest::Approx(varphi(3, 2.0, w)));
  CHECK(varphi(0, -2.0, z) == doctest::Approx(std::exp(-0.5 * 0.36)));
  CHECK_THROWS(varphi(1, 0.0, z));
}

TEST_CASE("envelope regimes") {
  CHECK(envelope_T(10, 1.0, 0.05, 0.1) == doctest::Approx(std::pow(0.5, 0.5)));
  CHECK(envelope_T(27, 0.0, 27.0, 0.1) == doctest::Approx(std::pow(27.0, -1.0 / 3)));
  CHECK(envelope_T(5, 0.0, 10.0, 0.1) == doctest::Approx(std::exp(-1.0)));
  CHECK(envelope_regime(4, 0.1) == Regime::small);
  CHECK(envelope_regime(4, 1.0) == Regime::oscillatory);
  CHECK(envelope_regime(4, 5.0) == Regime::turning);
  CHECK(envelope_regime(4, 7.0) == Regime::exponential);
  CHECK_THROWS(envelope_T(0, 0.0, 1.0, 0.1));
}

TEST_CASE("envelope certificate is finite and refinement-monotone") {
  auto a = certify_envelope(0.0, 200, 2000);
  auto b = certify_envelope(0.0, 200, 8000, a.gamma);
  CHECK(std::isfinite(a.C));
  CHECK(b.C >= a.C * (1 - 1e-12));
  CHECK(b.C <= a.C * 1.01);
}

TEST_CASE("uniform and weighted scans") {
  auto s = uniform_bound_scan(0.0, 1.0, 200);
  CHECK(s.sup <= 1.0 + 1e-12);
  std::vector<double> xs, ys;
  for (double lam : {1.0, 10.0, 100.0, 1000.0}) {
    auto w = weighted_bound_scan(0.5, lam, static_cast<int>(2 * lam) + 100);
    xs.push_back(lam);
    ys.push_back(w.sup);
  }
  CHECK(std::abs(loglog_slope(xs, ys) - 1.0 / 6) <= 0.1);
  CHECK(loglog_slope({1.0, 10.0}, {1.0, 100.0}) == doctest::Approx(2.0));
}
