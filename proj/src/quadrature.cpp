#include "heislab/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace heislab {

namespace {

const Rule& legendre_base(int order) {
  static std::map<int, Rule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  Rule r;
  std::vector<double> pos = boost::math::legendre_p_zeros<double>(order);
  auto weight = [order](double x) {
    double dp = boost::math::legendre_p_prime<double>(order, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  // boost returns the nonnegative zeros in increasing order
  for (auto i = pos.size(); i-- > 0;) {
    if (pos[i] == 0.0) continue;
    r.x.push_back(-pos[i]);
    r.w.push_back(weight(pos[i]));
  }
  for (double x : pos) {
    r.x.push_back(x);
    r.w.push_back(weight(x));
  }
  return cache.emplace(order, std::move(r)).first->second;
}

}  // namespace

Rule gauss_legendre(int order, double a, double b) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  const Rule& base = legendre_base(order);
  Rule r;
  r.x.resize(base.size());
  r.w.resize(base.size());
  double h = 0.5 * (b - a), c = 0.5 * (b + a);
  for (std::size_t i = 0; i < base.size(); ++i) {
    r.x[i] = c + h * base.x[i];
    r.w[i] = h * base.w[i];
  }
  return r;
}

Rule composite_gauss_legendre(int order, int panels, double a, double b) {
  Rule out;
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    Rule r = gauss_legendre(order, a + p * h, a + (p + 1) * h);
    out.x.insert(out.x.end(), r.x.begin(), r.x.end());
    out.w.insert(out.w.end(), r.w.begin(), r.w.end());
  }
  return out;
}

Rule gauss_laguerre(int order, double alpha) {
  if (order < 1) throw std::invalid_argument("gauss_laguerre: order must be >= 1");
  if (!(alpha > -1.0)) throw std::domain_error("gauss_laguerre: alpha must exceed -1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int i = 0; i < order; ++i) {
    J(i, i) = 2.0 * i + alpha + 1.0;
    if (i + 1 < order) {
      double b = std::sqrt((i + 1.0) * (i + 1.0 + alpha));
      J(i, i + 1) = b;
      J(i + 1, i) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  // eigenvector weights lose all relative accuracy below ~1e-16 of the largest, so
  // polish the nodes and take w = Gamma(n+a+1) x / (n! ((n+1) L_{n+1}(x))^2)
  const int n = order;
  auto lag = [&](double x, double& ln, double& lnm1, double& lnp1) {
    double prev = 1.0, cur = 1.0 + alpha - x;
    for (int j = 1; j < n; ++j) {
      double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
      prev = cur;
      cur = next;
    }
    if (n == 1) prev = 1.0;
    ln = cur;
    lnm1 = prev;
    lnp1 = ((2.0 * n + 1.0 + alpha - x) * cur - (n + alpha) * prev) / (n + 1.0);
  };
  const double lg = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0);
  Rule r;
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i), ln, lnm1, lnp1;
    for (int it = 0; it < 3; ++it) {
      lag(x, ln, lnm1, lnp1);
      double d = (n * ln - (n + alpha) * lnm1) / x;
      if (d == 0.0) break;
      x -= ln / d;
    }
    lag(x, ln, lnm1, lnp1);
    const double a = (n + 1.0) * lnp1;
    r.x.push_back(x);
    r.w.push_back(std::exp(lg + std::log(x) - 2.0 * std::log(std::abs(a))));
  }
  return r;
}

Rule gauss_jacobi_unit(int order, double p, double q) {
  if (order < 1) throw std::invalid_argument("gauss_jacobi_unit: order must be >= 1");
  if (!(p > -1.0 && q > -1.0)) throw std::domain_error("gauss_jacobi_unit: exponents must exceed -1");
  // Jacobi (1-x)^al (1+x)^be on [-1,1] with x = 2u - 1
  const double al = q, be = p, s = al + be;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int k = 0; k < order; ++k) {
    J(k, k) = k == 0 ? (be - al) / (s + 2.0)
                     : (be * be - al * al) / ((2.0 * k + s) * (2.0 * k + s + 2.0));
    if (k + 1 < order) {
      double m = k + 1.0;
      double b2 = m == 1.0 ? 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + s) * (2.0 + s) * (3.0 + s))
                           : 4.0 * m * (m + al) * (m + be) * (m + s) /
                                 ((2.0 * m + s) * (2.0 * m + s) * (2.0 * m + s + 1.0) *
                                  (2.0 * m + s - 1.0));
      J(k, k + 1) = std::sqrt(b2);
      J(k + 1, k) = J(k, k + 1);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule r;
  for (int i = 0; i < order; ++i) {
    double v = es.eigenvectors()(0, i);
    r.x.push_back(0.5 * (es.eigenvalues()(i) + 1.0));
    r.w.push_back(v * v);
  }
  return r;
}

}  // namespace heislab
