#pragma once

#include <string>
#include <vector>

#include "heislab/dyadic.hpp"
#include "heislab/sparse.hpp"

namespace heislab {

// A positive weight sampled on the samples of a DyadicGrid.
struct WeightField {
  std::string id;
  std::vector<double> w;
};

// sup_Q <w>_Q <sigma>_Q^{p-1}, sigma = w^{1-p'}. The weight is rescaled per cube by its
// first value, so constant weights give exactly 1.
double ap_char(const DyadicGrid& g, const std::vector<double>& w, double p,
               const std::vector<CubeRef>& cubes);
// sup_Q <w>_{Q,p} / <w>_Q
double rh_char(const DyadicGrid& g, const std::vector<double>& w, double p,
               const std::vector<CubeRef>& cubes);

double bfp_alpha(double p, double q0_prime);

struct BfpReport {
  double p = 2.0, p0 = 1.0, q0 = 1.0;
  double ap = 1.0, rh = 1.0, alpha = 1.0;
  double constant = 1.0;  // absorbed single-system constant
  double lhs = 0.0, rhs = 0.0, slack = 0.0;  // slack = rhs / lhs
};

// Lambda_{p0,q0}(f,g) against C {[w]_{A_{p/p0}} [w]_{RH_{(q0'/p)'}}}^alpha ||f||_{L^p(w)}
// ||g||_{L^{p'}(sigma)}. C = (1/eta) ((p/p0)')^{1/p0} ((p'/q0)')^{1/q0}: Doob's dyadic
// maximal bound for one system after the sparse majorization.
BfpReport bfp_check(const DyadicGrid& g, const std::vector<SparseFamily>& fams,
                    const std::vector<double>& f, const std::vector<double>& gv,
                    const std::vector<double>& w, double p, double p0, double q0,
                    const std::vector<CubeRef>& cubes);
// The same with the two characteristics supplied.
BfpReport bfp_check(const DyadicGrid& g, const std::vector<SparseFamily>& fams,
                    const std::vector<double>& f, const std::vector<double>& gv,
                    const std::vector<double>& w, double p, double p0, double q0, double ap,
                    double rh);
// (q0'/p)', the reverse-Hoelder exponent paired with A_{p/p0}
double bfp_rh_exponent(double p, double q0);

// 1/phi(1/p0), the exponent map of the weighted bound.
double phi_inverse(double p0_inv, int n);
// phi itself
double phi_exponent(double p0_inv, int n);

// Constants, two-valued checkerboards and truncated Koranyi powers min(|x|^a, cap).
std::vector<WeightField> weight_corpus(const DyadicGrid& g);

}  // namespace heislab
