#include "heislab/laguerre.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heislab {

namespace {

void check_delta(double delta) {
  if (!(delta > -1.0)) throw std::domain_error("Laguerre type delta must exceed -1");
}

constexpr double kBig = 1e100;
const double kLogBig = std::log(kBig);
constexpr double kLogMin = -745.0;

}  // namespace

double laguerre_poly(int k, double delta, double x) {
  check_delta(delta);
  if (k < 0) throw std::domain_error("laguerre_poly: k must be >= 0");
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 1.0 + delta - x;
  for (int j = 1; j < k; ++j) {
    double next = ((2.0 * j + 1.0 + delta - x) * cur - (j + delta) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double gamma_ratio(int k, double delta) {
  check_delta(delta);
  if (k == 0 || delta == 0.0) return 1.0;
  return boost::math::tgamma(delta + 1.0) * boost::math::tgamma_delta_ratio(k + 1.0, delta);
}

double log_gamma_ratio(int k, double delta) {
  check_delta(delta);
  if (k == 0 || delta == 0.0) return 0.0;
  return boost::math::lgamma(delta + 1.0) +
         std::log(boost::math::tgamma_delta_ratio(k + 1.0, delta));
}

PsiStepper::PsiStepper(double delta, double r) : delta_(delta), x_(0.5 * r * r) {
  check_delta(delta);
  log_scale_ = -0.5 * x_;
}

void PsiStepper::next() {
  double k = k_;
  // difference form of the three-term recurrence; exact at x = 0
  diff_ = (k * diff_ - x_ * cur_) / (k + 1.0 + delta_);
  cur_ += diff_;
  ++k_;
  double m = std::max(std::abs(cur_), std::abs(diff_));
  if (m > kBig) {
    cur_ /= kBig;
    diff_ /= kBig;
    log_scale_ += kLogBig;
  } else if (m < 1.0 / kBig && m > 0.0) {
    cur_ *= kBig;
    diff_ *= kBig;
    log_scale_ -= kLogBig;
  }
}

double PsiStepper::log_abs() const {
  if (cur_ == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(cur_)) + log_scale_;
}

double PsiStepper::value() const {
  double la = log_abs();
  if (la < kLogMin) return 0.0;
  return std::copysign(std::exp(la), cur_);
}

bool PsiStepper::underflow() const { return cur_ != 0.0 && log_abs() < kLogMin; }

double psi(int k, double delta, double r) {
  if (k < 0) throw std::domain_error("psi: k must be >= 0");
  PsiStepper s(delta, r);
  for (int j = 0; j < k; ++j) s.next();
  return s.value();
}

std::vector<double> psi_sequence(int K, double delta, double r) {
  std::vector<double> out;
  out.reserve(K + 1);
  PsiStepper s(delta, r);
  out.push_back(s.value());
  for (int j = 0; j < K; ++j) {
    s.next();
    out.push_back(s.value());
  }
  return out;
}

double std_laguerre(int k, double delta, double r) {
  if (!(r > 0.0)) throw std::domain_error("std_laguerre: r must be positive");
  PsiStepper s(delta, std::sqrt(2.0 * r));
  for (int j = 0; j < k; ++j) s.next();
  double la = s.log_abs();
  if (!std::isfinite(la)) return 0.0;
  double lv = la - 0.5 * log_gamma_ratio(k, delta) + 0.5 * delta * std::log(r);
  if (lv < kLogMin) return 0.0;
  return std::copysign(std::exp(lv), s.value() == 0.0 ? 1.0 : s.value());
}

double varphi_radial(int k, int n, double lambda, double rho) {
  if (lambda == 0.0) throw std::domain_error("varphi: lambda must be nonzero");
  double delta = n - 1.0;
  return psi(k, delta, std::sqrt(std::abs(lambda)) * rho) / gamma_ratio(k, delta);
}

double varphi(int k, double lambda, const HeisPoint& z) {
  return varphi_radial(k, z.n, lambda, std::sqrt(z.z_norm2()));
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::small: return "small";
    case Regime::oscillatory: return "oscillatory";
    case Regime::turning: return "turning";
    case Regime::exponential: return "exponential";
  }
  return "?";
}

Regime envelope_regime(int k, double r) {
  if (k < 1) throw std::domain_error("envelope regimes need k >= 1");
  if (r <= 1.0 / k) return Regime::small;
  if (r <= 0.5 * k) return Regime::oscillatory;
  if (r <= 1.5 * k) return Regime::turning;
  return Regime::exponential;
}

namespace {

double log_envelope_poly(int k, double delta, double r, Regime reg) {
  double kk = k;
  switch (reg) {
    case Regime::small: return 0.5 * delta * std::log(kk * r);
    case Regime::oscillatory: return -0.25 * std::log(kk * r);
    case Regime::turning:
      return -0.25 * std::log(kk) - 0.25 * std::log(std::cbrt(kk) + std::abs(kk - r));
    case Regime::exponential: return 0.0;
  }
  return 0.0;
}

}  // namespace

double envelope_T(int k, double delta, double r, double gamma) {
  Regime reg = envelope_regime(k, r);
  if (reg == Regime::exponential) return std::exp(-gamma * r);
  return std::exp(log_envelope_poly(k, delta, r, reg));
}

EnvelopeCertificate certify_envelope(double delta, int k_max, int samples, double gamma) {
  check_delta(delta);
  if (k_max < 1 || samples < 2) throw std::invalid_argument("certify_envelope: bad sizes");
  constexpr int kCandidates = 24;
  const double r_lo = 0.01 / k_max;
  const double r_hi = 6.0 * k_max + 40.0;
  const double step = std::log(r_hi / r_lo) / (samples - 1);

  EnvelopeCertificate cert;
  cert.delta = delta;
  cert.k_max = k_max;
  cert.samples = samples;
  const double ninf = -std::numeric_limits<double>::infinity();
  std::array<double, 4> poly_max{ninf, ninf, ninf, ninf};
  std::array<double, kCandidates> exp_max;
  exp_max.fill(ninf);
  std::array<std::pair<int, double>, 4> poly_arg{};
  std::array<std::pair<int, double>, kCandidates> exp_arg{};
  double fixed_exp_max = ninf;
  std::pair<int, double> fixed_exp_arg{};

  std::vector<double> log_g(k_max + 1, 0.0);
  for (int k = 1; k <= k_max; ++k) log_g[k] = log_g[k - 1] + std::log(k / (k + delta));

  for (int i = 0; i < samples; ++i) {
    double r = r_lo * std::exp(step * i);
    double log_r = std::log(r);
    PsiStepper s(delta, std::sqrt(2.0 * r));
    for (int k = 1; k <= k_max; ++k) {
      s.next();
      double la = s.log_abs();
      if (!std::isfinite(la)) {
        if (std::isnan(la)) cert.overflow = true;
        continue;
      }
      double ll = la - 0.5 * log_g[k] + 0.5 * delta * log_r;
      if (std::isinf(ll) && ll > 0) cert.overflow = true;
      Regime reg = envelope_regime(k, r);
      int ri = static_cast<int>(reg);
      if (reg != Regime::exponential) {
        double lr = ll - log_envelope_poly(k, delta, r, reg);
        if (lr > poly_max[ri]) {
          poly_max[ri] = lr;
          poly_arg[ri] = {k, r};
        }
      } else if (gamma > 0.0) {
        double lr = ll + gamma * r;
        if (lr > fixed_exp_max) {
          fixed_exp_max = lr;
          fixed_exp_arg = {k, r};
        }
      } else {
        for (int j = 0; j < kCandidates; ++j) {
          double lr = ll + std::ldexp(1.0, -(j + 1)) * r;
          if (lr > exp_max[j]) {
            exp_max[j] = lr;
            exp_arg[j] = {k, r};
          }
        }
      }
    }
  }

  double pmax = *std::max_element(poly_max.begin(), poly_max.end());
  double emax;
  std::pair<int, double> earg;
  if (gamma > 0.0) {
    cert.gamma = gamma;
    emax = fixed_exp_max;
    earg = fixed_exp_arg;
  } else {
    int pick = kCandidates - 1;
    for (int j = 0; j < kCandidates; ++j) {
      if (exp_max[j] <= pmax) {
        pick = j;
        break;
      }
    }
    cert.gamma = std::ldexp(1.0, -(pick + 1));
    emax = exp_max[pick];
    earg = exp_arg[pick];
  }
  for (int j = 0; j < 3; ++j) cert.regime_max[j] = std::exp(poly_max[j]);
  cert.regime_max[3] = std::exp(emax);
  double best = pmax;
  std::pair<int, double> arg{};
  for (int j = 0; j < 3; ++j)
    if (poly_max[j] == pmax) arg = poly_arg[j];
  if (emax > best) {
    best = emax;
    arg = earg;
  }
  cert.C = std::exp(best);
  cert.worst_k = arg.first;
  cert.worst_r = arg.second;
  return cert;
}

namespace {

ScanResult scan(double delta, double lambda, int k_max, bool weighted) {
  ScanResult res;
  res.delta = delta;
  res.lambda = lambda;
  res.k_max = k_max;
  PsiStepper s(delta, std::sqrt(lambda));
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) s.next();
    double v = std::abs(s.value());
    if (s.underflow()) res.underflow = true;
    if (weighted) v *= std::sqrt(k * lambda);
    if (v > res.sup) {
      res.sup = v;
      res.argmax_k = k;
    }
  }
  return res;
}

}  // namespace

ScanResult uniform_bound_scan(double delta, double lambda, int k_max) {
  if (delta < -1.0 / 3.0) throw std::domain_error("uniform_bound_scan: delta must be >= -1/3");
  if (!(lambda > 0.0)) throw std::domain_error("uniform_bound_scan: lambda must be positive");
  return scan(delta, lambda, k_max, false);
}

ScanResult weighted_bound_scan(double delta, double lambda, int k_max) {
  if (delta < 0.5) throw std::domain_error("weighted_bound_scan: delta must be >= 1/2");
  if (lambda < 1.0) throw std::domain_error("weighted_bound_scan: lambda must be >= 1");
  return scan(delta, lambda, k_max, true);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: sizes");
  double mx = 0, my = 0;
  std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace heislab
