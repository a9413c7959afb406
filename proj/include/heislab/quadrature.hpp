#pragma once

#include <vector>

namespace heislab {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// Gauss-Legendre on [a, b]. Nodes are cached per order.
Rule gauss_legendre(int order, double a = -1.0, double b = 1.0);

// Gauss-Laguerre for the weight x^alpha e^{-x} on (0, inf), Golub-Welsch.
Rule gauss_laguerre(int order, double alpha);

// Gauss-Jacobi for u^p (1-u)^q on [0, 1], weights normalized to sum 1.
Rule gauss_jacobi_unit(int order, double p, double q);

// Composite Gauss-Legendre: `panels` equal panels on [a, b].
Rule composite_gauss_legendre(int order, int panels, double a, double b);

}  // namespace heislab
