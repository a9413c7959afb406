#include "heislab/sparse.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <stdexcept>

#include "heislab/means.hpp"

namespace heislab {

namespace {

// (level, centre-lexicographic, idx)
bool cube_order(const DyadicGrid& g, const CubeRef& a, const CubeRef& b) {
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  if (a.k != b.k) return a.k < b.k;
  HeisPoint ca = g.center(a), cb = g.center(b);
  for (int i = 0; i < ca.real_dim(); ++i)
    if (ca.coord(i) != cb.coord(i)) return ca.coord(i) < cb.coord(i);
  return a.idx < b.idx;
}

void sort_cubes(const DyadicGrid& g, std::vector<CubeRef>& v) {
  std::sort(v.begin(), v.end(),
            [&](const CubeRef& a, const CubeRef& b) { return cube_order(g, a, b); });
}

double pth_mean(const std::vector<double>& f, const std::vector<double>& m, const CellSet& s,
                double total, double p) {
  if (std::isinf(p)) {
    double v = 0.0;
    for (int i : s) v = std::max(v, std::abs(f[i]));
    return v;
  }
  double acc = 0.0;
  for (int i : s) acc += std::pow(std::abs(f[i]), p) * m[i];
  return std::pow(acc / total, 1.0 / p);
}

}  // namespace

double set_measure(const DyadicGrid& g, const CellSet& s) {
  double m = 0.0;
  for (int i : s) m += g.samples.measure[i];
  return m;
}

double set_average(const DyadicGrid& g, const std::vector<double>& f, const CellSet& s,
                   const CubeRef& q, double p) {
  if (p < 1.0) throw std::domain_error("set_average: p must be >= 1");
  return pth_mean(f, g.samples.measure, s, g.measure(q), p);
}

CellSet cells_in_ball(const GridSpec& grid, const HeisPoint& a, double R) {
  const int d = grid.dims();
  const int n = grid.n();
  const double zn = std::sqrt(a.z_norm2());
  std::vector<int> lo(d), hi(d);
  for (int ax = 0; ax < d; ++ax) {
    double ext = ax < 2 * n ? R : R * R + 0.5 * R * zn;
    double h = grid.spacing(ax), L = grid.region.half_widths[ax];
    lo[ax] = std::max(0, static_cast<int>(std::floor((a.coord(ax) - ext + L) / h - 0.5)));
    hi[ax] = std::min(grid.counts[ax] - 1,
                      static_cast<int>(std::ceil((a.coord(ax) + ext + L) / h - 0.5)));
    if (lo[ax] > hi[ax]) return {};
  }
  CellSet out;
  std::vector<int> ijk = lo;
  for (;;) {
    std::size_t idx = grid.flatten(ijk);
    if (dist_left(a, grid.center(idx)) < R) out.push_back(static_cast<int>(idx));
    int ax = d - 1;
    while (ax >= 0 && ijk[ax] == hi[ax]) {
      ijk[ax] = lo[ax];
      --ax;
    }
    if (ax < 0) break;
    ++ijk[ax];
  }
  std::sort(out.begin(), out.end());
  return out;
}

CellSet localization_set(const DyadicGrid& g, const GridSpec& grid, const CubeRef& q,
                         const LocalizationSpec& loc) {
  const int kp = q.k + loc.level_offset;
  if (kp > g.k_max() || loc.level_offset < 1) return {};
  const double R = std::pow(g.delta(), q.k + loc.ball_power);
  const auto& centers = g.systems[0].centers(kp);
  CellSet out;
  for (int pi = 0; pi < static_cast<int>(centers.size()); ++pi) {
    CubeRef P{0, kp, pi};
    if (!g.nonempty(P)) continue;
    std::size_t home = grid.locate(centers[pi]);
    if (home == GridSpec::npos || !g.contains(q, static_cast<int>(home))) continue;
    auto ball = cells_in_ball(grid, centers[pi], R);
    bool inside = std::all_of(ball.begin(), ball.end(), [&](int id) { return g.contains(q, id); });
    if (!inside) continue;
    const auto& m = g.members(P);
    out.insert(out.end(), m.begin(), m.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> localized_mean(const LinearizeInput& in, const CubeRef& q) {
  const DyadicGrid& g = *in.dyadic;
  const GridSpec& grid = *in.grid;
  const auto& f = *in.f;
  const auto& members = g.members(q);
  std::vector<double> out(members.size(), 0.0);
  CellSet V = localization_set(g, grid, q, in.loc);
  if (V.empty()) return out;
  std::vector<char> inV(grid.size(), 0);
  for (int i : V) inV[i] = 1;
  const double t0 = std::pow(g.delta(), q.k + in.loc.mean_power);
  const int rn = std::max(1, in.r_nodes);
  const SphereRule& rule = *in.rule;
  auto fv = [&](const HeisPoint& y) {
    std::size_t idx = grid.locate(y);
    return idx != GridSpec::npos && inV[idx] ? f[idx] : 0.0;
  };
  for (int j = 0; j < rn; ++j) {
    double t = t0 * std::pow(g.delta(), static_cast<double>(j) / rn);
    for (std::size_t i = 0; i < members.size(); ++i) {
      double v = std::abs(quadrature_spherical_mean(fv, t, g.samples.points[members[i]], rule));
      out[i] = std::max(out[i], v);
    }
  }
  return out;
}

LinearizationSets linearize(const LinearizeInput& in, int alpha) {
  const DyadicGrid& g = *in.dyadic;
  const std::size_t N = g.samples.size();
  const int L = g.k_max() - g.k_min() + 1;
  LinearizationSets out;
  out.alpha = alpha;
  out.cubes = g.cubes(alpha);
  const std::size_t C = out.cubes.size();
  out.AQ.resize(C);
  out.E.resize(C);
  out.B.resize(C);
  out.sup.assign(N, 0.0);
  for (std::size_t c = 0; c < C; ++c) {
    out.AQ[c] = localized_mean(in, out.cubes[c]);
    const auto& m = g.members(out.cubes[c]);
    for (std::size_t i = 0; i < m.size(); ++i) out.sup[m[i]] = std::max(out.sup[m[i]], out.AQ[c][i]);
  }
  // inE[l][x]: x lies in E of its level-l cube
  std::vector<std::vector<char>> inE(L, std::vector<char>(N, 0));
  for (std::size_t c = 0; c < C; ++c) {
    const auto& m = g.members(out.cubes[c]);
    const int l = out.cubes[c].k - g.k_min();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (out.AQ[c][i] >= 0.5 * out.sup[m[i]]) {
        out.E[c].push_back(m[i]);
        inE[l][m[i]] = 1;
      }
    }
  }
  for (std::size_t c = 0; c < C; ++c) {
    const int l = out.cubes[c].k - g.k_min();
    for (int x : out.E[c]) {
      bool earlier = false;
      for (int l2 = 0; l2 < l && !earlier; ++l2) earlier = inE[l2][x];
      if (!earlier) out.B[c].push_back(x);
    }
  }
  return out;
}

LinearizationSets linearize_full(LinearizeInput in, int alpha, int r_nodes) {
  in.r_nodes = r_nodes;
  return linearize(in, alpha);
}

LinearizationReport check_linearization(const DyadicGrid& g, const LinearizationSets& L,
                                        const std::vector<double>& gv) {
  const std::size_t N = g.samples.size();
  LinearizationReport rep;
  std::vector<int> countB(N, 0), countE(N, 0);
  std::vector<double> aq_at_b(N, 0.0);
  for (std::size_t c = 0; c < L.cubes.size(); ++c) {
    const auto& m = g.members(L.cubes[c]);
    for (int x : L.E[c]) ++countE[x];
    std::size_t i = 0;
    for (int x : L.B[c]) {
      ++countB[x];
      while (m[i] != x) ++i;
      aq_at_b[x] = L.AQ[c][i];
    }
  }
  for (std::size_t x = 0; x < N; ++x) {
    if (countB[x] > 1) rep.b_disjoint = false;
    if ((countB[x] > 0) != (countE[x] > 0)) rep.union_equal = false;
    if (L.sup[x] > 0.0 && countE[x] == 0) rep.covering = false;
  }
  // termwise sup <= 2 A_Q on B_Q; summed in sample order so rounding stays monotone
  for (std::size_t x = 0; x < N; ++x) {
    double w = gv[x] * g.samples.measure[x];
    rep.lhs += L.sup[x] * w;
    rep.rhs += aq_at_b[x] * w;
  }
  rep.half_bound = rep.lhs <= 2.0 * rep.rhs;
  return rep;
}

std::vector<CubeRef> cz_stopping(const DyadicGrid& g, const std::vector<double>& f,
                                 const CubeRef& q0, double p, double mult) {
  if (!(mult > 1.0)) throw std::domain_error("cz_stopping: threshold multiplier must exceed 1");
  const double level = mult * cube_average(g, f, q0, p);
  std::vector<CubeRef> out, stack = g.children(q0);
  while (!stack.empty()) {
    CubeRef c = stack.back();
    stack.pop_back();
    if (cube_average(g, f, c, p) > level) {
      out.push_back(c);
    } else {
      auto ch = g.children(c);
      stack.insert(stack.end(), ch.begin(), ch.end());
    }
  }
  sort_cubes(g, out);
  return out;
}

std::vector<CubeRef> cz_stopping_brute(const DyadicGrid& g, const std::vector<double>& f,
                                       const CubeRef& q0, double p, double mult) {
  const double level = mult * cube_average(g, f, q0, p);
  auto all = g.descendants(q0);
  std::vector<CubeRef> hit;
  for (const auto& c : all)
    if (cube_average(g, f, c, p) > level) hit.push_back(c);
  std::sort(hit.begin(), hit.end());
  std::vector<CubeRef> out;
  for (const auto& c : hit) {
    bool maximal = true;
    for (CubeRef a = c; a.k - 1 > q0.k;) {
      a = g.parent(a);
      if (std::binary_search(hit.begin(), hit.end(), a)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(c);
  }
  sort_cubes(g, out);
  return out;
}

std::vector<CubeRef> stopping_children(const DyadicGrid& g, const std::vector<double>& f,
                                       const std::vector<double>& gv, const CubeRef& q0, double p,
                                       double q, double mult) {
  if (!(mult > 1.0)) throw std::domain_error("stopping_children: multiplier must exceed 1");
  const double lf = mult * cube_average(g, f, q0, p);
  const double lg = mult * cube_average(g, gv, q0, q);
  std::vector<CubeRef> out, stack = g.children(q0);
  while (!stack.empty()) {
    CubeRef c = stack.back();
    stack.pop_back();
    if (cube_average(g, f, c, p) > lf || cube_average(g, gv, c, q) > lg) {
      out.push_back(c);
    } else {
      auto ch = g.children(c);
      stack.insert(stack.end(), ch.begin(), ch.end());
    }
  }
  sort_cubes(g, out);
  return out;
}

StoppingResult stopping_children_escalating(const DyadicGrid& g, const std::vector<double>& f,
                                            const std::vector<double>& gv, const CubeRef& q0,
                                            double p, double q, double max_mult) {
  StoppingResult r;
  for (double m = 2.0; m <= max_mult; m *= 2.0) {
    r.cubes = stopping_children(g, f, gv, q0, p, q, m);
    r.multiplier = m;
    double cov = 0.0;
    for (const auto& c : r.cubes) cov += g.measure(c);
    r.covered = cov / g.measure(q0);
    if (r.covered < 0.5) return r;
  }
  throw std::runtime_error("stopping_children: no multiplier up to the cap gives |E| < |Q0|/2");
}

SparseFamily build_sparse_family(const DyadicGrid& g, const std::vector<double>& f,
                                 const std::vector<double>& gv, const CubeRef& q0, double p,
                                 double q, int max_depth) {
  SparseFamily fam;
  std::vector<int> mark(g.samples.size(), -1);
  struct Item {
    CubeRef c;
    int depth;
  };
  std::vector<Item> queue{{q0, 0}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Item it = queue[head];
    fam.max_depth = std::max(fam.max_depth, it.depth);
    auto st = stopping_children_escalating(g, f, gv, it.c, p, q);
    const int id = static_cast<int>(fam.cubes.size());
    for (const auto& c : st.cubes)
      for (int x : g.members(c)) mark[x] = id;
    CellSet F;
    for (int x : g.members(it.c))
      if (mark[x] != id) F.push_back(x);
    fam.cubes.push_back(it.c);
    fam.E.push_back(std::move(F));
    fam.multiplier.push_back(st.multiplier);
    fam.depth.push_back(it.depth);
    if (it.depth >= max_depth) {
      if (!st.cubes.empty()) fam.flagged = true;
      continue;
    }
    for (const auto& c : st.cubes) queue.push_back({c, it.depth + 1});
  }
  return fam;
}

double sparse_form(const DyadicGrid& g, const SparseFamily& s, const std::vector<double>& f,
                   const std::vector<double>& gv, double p, double q) {
  double acc = 0.0;
  for (const auto& c : s.cubes)
    acc += g.measure(c) * cube_average(g, f, c, p) * cube_average(g, gv, c, q);
  return acc;
}

SparsityReport check_sparsity(const DyadicGrid& g, const SparseFamily& s) {
  SparsityReport rep;
  std::vector<char> used(g.samples.size(), 0);
  for (std::size_t i = 0; i < s.cubes.size(); ++i) {
    const CubeRef& c = s.cubes[i];
    for (int x : s.E[i]) {
      if (used[x]) rep.disjoint = false;
      used[x] = 1;
      if (!g.contains(c, x)) rep.inside = false;
    }
    double frac = set_measure(g, s.E[i]) / g.measure(c);
    rep.worst_fraction = std::min(rep.worst_fraction, frac);
    if (!(frac > s.eta)) rep.major = false;
  }
  return rep;
}

std::vector<double> sample_values(const DyadicGrid& g, const FieldFn& f) {
  std::vector<double> v(g.samples.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.samples.points[i]);
  return v;
}

double lacunary_pairing(const DyadicGrid& g, const FieldFn& f, const std::vector<double>& gv,
                        int j_lo, int j_hi, const SphereRule& rule) {
  double acc = 0.0;
  for (std::size_t x = 0; x < gv.size(); ++x) {
    if (gv[x] == 0.0) continue;
    double m = lacunary_max(f, g.delta(), j_lo, j_hi, g.samples.points[x], rule);
    acc += std::abs(gv[x]) * m * g.samples.measure[x];
  }
  return acc;
}

DominationReport sparse_bound(const DyadicGrid& g, const std::vector<double>& fv,
                              const std::vector<double>& gv, double p, double q) {
  DominationReport rep;
  rep.n = g.samples.n();
  rep.p = p;
  rep.q = q;
  for (int a = 0; a < static_cast<int>(g.systems.size()); ++a) {
    for (const auto& root : g.cubes_at(a, g.k_min())) {
      auto fam = build_sparse_family(g, fv, gv, root, p, q);
      rep.rhs += sparse_form(g, fam, fv, gv, p, q);
      rep.family_size += fam.cubes.size();
      rep.max_depth = std::max(rep.max_depth, fam.max_depth);
      for (double m : fam.multiplier) rep.max_multiplier = std::max(rep.max_multiplier, m);
    }
  }
  return rep;
}

DominationReport verify_domination(const DyadicGrid& g, const FieldFn& f, const FieldFn& gfn,
                                   double p, double q, int j_lo, int j_hi,
                                   const SphereRule& rule) {
  auto fv = sample_values(g, f);
  auto gv = sample_values(g, gfn);
  DominationReport rep = sparse_bound(g, fv, gv, p, q);
  rep.lhs = lacunary_pairing(g, f, gv, j_lo, j_hi, rule);
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : (rep.lhs > 0.0 ? INFINITY : 0.0);
  return rep;
}

namespace {

struct Level {
  double v;
  double mass;
};

// distinct |f| values ascending with their normalized masses
std::vector<Level> levels_of(const std::vector<double>& f, const std::vector<double>& mu) {
  if (f.size() != mu.size()) throw std::invalid_argument("lorentz: size mismatch");
  double total = 0.0;
  for (double m : mu) total += m;
  if (!(total > 0.0)) throw std::invalid_argument("lorentz: measure must be positive");
  std::vector<Level> v;
  for (std::size_t i = 0; i < f.size(); ++i) v.push_back({std::abs(f[i]), mu[i] / total});
  std::sort(v.begin(), v.end(), [](const Level& a, const Level& b) { return a.v < b.v; });
  std::vector<Level> out;
  for (const auto& l : v) {
    if (!out.empty() && out.back().v == l.v)
      out.back().mass += l.mass;
    else
      out.push_back(l);
  }
  return out;
}

}  // namespace

double lorentz_norm(const std::vector<double>& f, const std::vector<double>& mu, double r) {
  if (!(r > 1.0)) throw std::domain_error("lorentz_norm: r must exceed 1");
  auto lv = levels_of(f, mu);
  // d_f(s) = mu(|f| >= u_i) on [u_{i-1}, u_i)
  std::vector<double> tail(lv.size() + 1, 0.0);
  for (std::size_t i = lv.size(); i-- > 0;) tail[i] = tail[i + 1] + lv[i].mass;
  double acc = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    acc += (lv[i].v - prev) * std::pow(std::min(1.0, tail[i]), 1.0 / r);
    prev = lv[i].v;
  }
  return acc;
}

double lorentz_norm_rearranged(const std::vector<double>& f, const std::vector<double>& mu,
                               double r) {
  if (!(r > 1.0)) throw std::domain_error("lorentz_norm: r must exceed 1");
  auto lv = levels_of(f, mu);
  double acc = 0.0, c = 0.0;
  for (std::size_t i = lv.size(); i-- > 0;) {
    double c2 = std::min(1.0, c + lv[i].mass);
    acc += lv[i].v * r * (std::pow(c2, 1.0 / r) - std::pow(c, 1.0 / r));
    c = c2;
  }
  return acc;
}

LevelSetSides check_level_set_lemma(const std::vector<double>& f, const std::vector<double>& mu,
                                    double r) {
  LevelSetSides s;
  s.rhs = 2.0 * lorentz_norm(f, mu, r);
  auto lv = levels_of(f, mu);
  double vmin = 0.0, vmax = 0.0;
  for (const auto& l : lv)
    if (l.v > 0.0) {
      if (vmin == 0.0) vmin = l.v;
      vmax = l.v;
    }
  if (vmax == 0.0) return s;
  const int m_lo = static_cast<int>(std::floor(std::log2(vmin))) - 1;
  const int m_hi = static_cast<int>(std::floor(std::log2(vmax))) + 1;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double a = std::ldexp(1.0, m), b = std::ldexp(1.0, m + 1);
    double mass = 0.0;
    for (const auto& l : lv)
      if (l.v >= a && l.v <= b) mass += l.mass;
    if (mass > 0.0) s.lhs += a * std::pow(mass, 1.0 / r);
  }
  return s;
}

double proba_constant(double r, double p) {
  if (!(r > 1.0 && p > r)) throw std::domain_error("proba_constant: need p > r > 1");
  const double pp = p / (p - 1.0), rp = r / (r - 1.0);
  return std::pow(1.0 / (1.0 - pp / rp), 1.0 / pp);
}

double proba_constant_quadrature(double r, double p) {
  if (!(r > 1.0 && p > r)) throw std::domain_error("proba_constant: need p > r > 1");
  const double pp = p / (p - 1.0), rp = r / (r - 1.0);
  const double a = pp / rp;
  boost::math::quadrature::tanh_sinh<double> ts;
  double I = ts.integrate([a](double t) { return std::pow(t, -a); }, 0.0, 1.0);
  return std::pow(I, 1.0 / pp);
}

CarlesonSides carleson_check(const DyadicGrid& g, const SparseFamily& s,
                             const std::vector<double>& phi, const CubeRef& q0, double s_exp,
                             double t_exp) {
  if (!(s_exp >= 1.0 && t_exp > s_exp)) throw std::domain_error("carleson_check: need 1 <= s < t");
  CarlesonSides c;
  for (const auto& Q : s.cubes) c.lhs += cube_average(g, phi, Q, s_exp) * g.measure(Q);
  c.rhs = cube_average(g, phi, q0, t_exp) * g.measure(q0);
  c.ratio = c.rhs > 0.0 ? c.lhs / c.rhs : (c.lhs > 0.0 ? INFINITY : 0.0);
  return c;
}

}  // namespace heislab
