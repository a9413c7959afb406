#pragma once

#include <array>
#include <string>
#include <vector>

#include "heislab/heis_core.hpp"

namespace heislab {

double laguerre_poly(int k, double delta, double x);

// Gamma(k+1)Gamma(delta+1)/Gamma(k+delta+1) = prod_{j<=k} j/(j+delta).
double gamma_ratio(int k, double delta);
double log_gamma_ratio(int k, double delta);

// Walks psi_k^delta(r) = gamma_ratio * L_k^delta(r^2/2) e^{-r^2/4} upward in k.
// Values are carried as mantissa * exp(log_scale) so that the exponential
// regime (large r, small k) neither underflows nor loses the recurrence.
class PsiStepper {
 public:
  PsiStepper(double delta, double r);
  int k() const { return k_; }
  double value() const;      // psi_k, 0 on underflow
  double log_abs() const;    // log|psi_k|, -inf at exact zeros
  bool underflow() const;    // value() returned 0 for a nonzero psi_k
  void next();

 private:
  double delta_, x_;
  int k_ = 0;
  double diff_ = 0.0, cur_ = 1.0, log_scale_;  // diff_ = psi_k - psi_{k-1}
};

double psi(int k, double delta, double r);
// psi_0 .. psi_K at a fixed argument
std::vector<double> psi_sequence(int K, double delta, double r);

// (gamma_ratio)^{1/2} L_k^delta(r) e^{-r/2} r^{delta/2}
double std_laguerre(int k, double delta, double r);

// phi_k^lambda(z) = L_k^{n-1}(|lambda||z|^2/2) e^{-|lambda||z|^2/4}
double varphi(int k, double lambda, const HeisPoint& z);
double varphi_radial(int k, int n, double lambda, double rho);

enum class Regime { small, oscillatory, turning, exponential };
std::string regime_name(Regime r);
Regime envelope_regime(int k, double r);
double envelope_T(int k, double delta, double r, double gamma);

struct EnvelopeCertificate {
  double delta = 0.0;
  int k_max = 0;
  int samples = 0;
  double gamma = 0.0;
  double C = 0.0;
  std::array<double, 4> regime_max{};  // indexed by Regime
  int worst_k = 0;
  double worst_r = 0.0;
  bool underflow = false;
  bool overflow = false;
};

// Scans a shared log-spaced r-grid on [r_lo, r_hi] for k = 1..k_max.
// gamma <= 0 asks for a fit: the largest 2^{-j} whose exponential-regime
// ratio stays below the other three regimes.
EnvelopeCertificate certify_envelope(double delta, int k_max, int samples, double gamma = 0.0);

struct ScanResult {
  double delta = 0.0;
  double lambda = 0.0;
  int k_max = 0;
  double sup = 0.0;
  int argmax_k = 0;
  bool underflow = false;
};

ScanResult uniform_bound_scan(double delta, double lambda, int k_max);
ScanResult weighted_bound_scan(double delta, double lambda, int k_max);

// Least-squares slope of log(sup) against log(lambda).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace heislab
