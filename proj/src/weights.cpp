#include "heislab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heislab {

namespace {

void check_positive(const std::vector<double>& w) {
  for (double v : w)
    if (!(v > 0.0) || !std::isfinite(v)) throw std::domain_error("weight must be positive and finite");
}

double conj_exp(double p) { return std::isinf(p) ? 1.0 : p / (p - 1.0); }

// <h(w / w_ref)>_Q with w_ref the first member value
template <class H>
double scaled_average(const DyadicGrid& g, const std::vector<double>& w, const CubeRef& q, H h) {
  const auto& m = g.members(q);
  const double ref = w[m.front()];
  double acc = 0.0, mass = 0.0;
  for (int i : m) {
    acc += h(w[i] / ref) * g.samples.measure[i];
    mass += g.samples.measure[i];
  }
  return acc / mass;
}

double lp_weighted(const std::vector<double>& f, const std::vector<double>& w,
                   const std::vector<double>& mu, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += std::pow(std::abs(f[i]), p) * w[i] * mu[i];
  return std::pow(acc, 1.0 / p);
}

}  // namespace

double ap_char(const DyadicGrid& g, const std::vector<double>& w, double p,
               const std::vector<CubeRef>& cubes) {
  if (!(p > 1.0)) throw std::domain_error("ap_char: p must exceed 1");
  check_positive(w);
  const double e = 1.0 - conj_exp(p);
  double best = 0.0;
  for (const auto& q : cubes) {
    double aw = scaled_average(g, w, q, [](double v) { return v; });
    double as = scaled_average(g, w, q, [e](double v) { return std::pow(v, e); });
    best = std::max(best, aw * std::pow(as, p - 1.0));
  }
  return best;
}

double rh_char(const DyadicGrid& g, const std::vector<double>& w, double p,
               const std::vector<CubeRef>& cubes) {
  if (!(p >= 1.0)) throw std::domain_error("rh_char: p must be >= 1");
  check_positive(w);
  double best = 0.0;
  for (const auto& q : cubes) {
    double aw = scaled_average(g, w, q, [](double v) { return v; });
    double ap = p == 1.0 ? aw
                         : std::pow(scaled_average(g, w, q, [p](double v) { return std::pow(v, p); }),
                                    1.0 / p);
    best = std::max(best, ap / aw);
  }
  return best;
}

double bfp_alpha(double p, double q0_prime) {
  if (std::isinf(q0_prime)) return 1.0 / (p - 1.0);
  return std::max(1.0 / (p - 1.0), (q0_prime - 1.0) / (q0_prime - p));
}

namespace {

double rh_exponent(double p, double q0p) { return std::isinf(q0p) ? 1.0 : conj_exp(q0p / p); }

void check_bfp_exponents(double p, double p0, double q0p) {
  if (!(p0 >= 1.0 && p0 < q0p && p0 < p && p < q0p))
    throw std::domain_error("bfp_check: need 1 <= p0 < p < q0'");
}

}  // namespace

BfpReport bfp_check(const DyadicGrid& g, const std::vector<SparseFamily>& fams,
                    const std::vector<double>& f, const std::vector<double>& gv,
                    const std::vector<double>& w, double p, double p0, double q0,
                    const std::vector<CubeRef>& cubes) {
  const double q0p = conj_exp(q0);
  check_bfp_exponents(p, p0, q0p);
  return bfp_check(g, fams, f, gv, w, p, p0, q0, ap_char(g, w, p / p0, cubes),
                   rh_char(g, w, rh_exponent(p, q0p), cubes));
}

BfpReport bfp_check(const DyadicGrid& g, const std::vector<SparseFamily>& fams,
                    const std::vector<double>& f, const std::vector<double>& gv,
                    const std::vector<double>& w, double p, double p0, double q0, double ap,
                    double rh) {
  const double q0p = conj_exp(q0);
  check_bfp_exponents(p, p0, q0p);
  check_positive(w);
  BfpReport r;
  r.p = p;
  r.p0 = p0;
  r.q0 = q0;
  r.ap = ap;
  r.rh = rh;
  const double pp = conj_exp(p);
  r.alpha = bfp_alpha(p, q0p);
  const double eta = 0.5;
  r.constant = (1.0 / eta) * std::pow(conj_exp(p / p0), 1.0 / p0) *
               std::pow(conj_exp(pp / q0), 1.0 / q0);
  for (const auto& fam : fams) r.lhs += sparse_form(g, fam, f, gv, p0, q0);
  std::vector<double> sigma(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) sigma[i] = std::pow(w[i], 1.0 - pp);
  r.rhs = r.constant * std::pow(r.ap * r.rh, r.alpha) * lp_weighted(f, w, g.samples.measure, p) *
          lp_weighted(gv, sigma, g.samples.measure, pp);
  r.slack = r.lhs > 0.0 ? r.rhs / r.lhs : INFINITY;
  return r;
}

double bfp_rh_exponent(double p, double q0) { return rh_exponent(p, conj_exp(q0)); }

double phi_inverse(double p0_inv, int n) {
  if (!(p0_inv > 0.0 && p0_inv < 1.0)) throw std::domain_error("phi: 1/p0 must lie in (0,1)");
  const double brk = static_cast<double>(n) / (n + 1.0);
  return p0_inv <= brk ? 1.0 - p0_inv / n : n * (1.0 - p0_inv);
}

double phi_exponent(double p0_inv, int n) { return 1.0 / phi_inverse(p0_inv, n); }

std::vector<WeightField> weight_corpus(const DyadicGrid& g) {
  const auto& pts = g.samples.points;
  const std::size_t N = pts.size();
  std::vector<WeightField> out;
  out.push_back({"const-1", std::vector<double>(N, 1.0)});
  out.push_back({"const-7", std::vector<double>(N, 7.0)});
  for (double h : {0.5, 0.25}) {
    WeightField cb{"checker-" + std::to_string(h).substr(0, 4), std::vector<double>(N)};
    for (std::size_t i = 0; i < N; ++i) {
      long s = 0;
      for (int a = 0; a < pts[i].real_dim(); ++a) s += static_cast<long>(std::floor(pts[i].coord(a) / h));
      cb.w[i] = (s % 2 == 0) ? 1.0 : 3.0;
    }
    out.push_back(std::move(cb));
  }
  for (double a : {0.5, -0.5}) {
    WeightField kp{a > 0 ? "koranyi+0.5" : "koranyi-0.5", std::vector<double>(N)};
    for (std::size_t i = 0; i < N; ++i) {
      double r = std::max(koranyi_norm(pts[i]), 1e-3);
      kp.w[i] = std::min(std::pow(r, a), 10.0);
    }
    out.push_back(std::move(kp));
  }
  return out;
}

}  // namespace heislab
