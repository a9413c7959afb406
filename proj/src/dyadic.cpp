#include "heislab/dyadic.hpp"

#include <algorithm>
#include <boost/random/sobol.hpp>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"

namespace heislab {

SampleSet grid_samples(const GridSpec& g) {
  SampleSet s;
  s.region = g.region;
  s.points.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) s.points.push_back(g.center(i));
  s.measure.assign(g.size(), g.cell_volume());
  return s;
}

SampleSet sobol_samples(const BoxRegion& region, int count, std::uint64_t seed) {
  const int d = 2 * region.n + 1;
  boost::random::sobol qrng(d);
  qrng.discard(d);  // skip the origin
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> shift(d);
  for (double& v : shift) v = u01(gen);
  SampleSet s;
  s.region = region;
  for (int i = 0; i < count; ++i) {
    HeisPoint p(region.n);
    for (int a = 0; a < d; ++a) {
      double u = std::ldexp(static_cast<double>(qrng()), -64) + shift[a];
      u -= std::floor(u);
      p.coord(a) = region.half_widths[a] * (2.0 * u - 1.0);
    }
    s.points.push_back(p);
  }
  s.measure.assign(s.points.size(), 1.0);
  return s;
}

SampleSet clustered_cloud(const BoxRegion& region, const CloudSpec& spec, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const BoxRegion unit = BoxRegion::cube(region.n, 1.0, 1.0);
  SampleSet s;
  s.region = region;
  auto child = [&](const HeisPoint& p, double scale) {
    for (;;) {
      HeisPoint c = group_mul(p, dilate(scale, random_point(unit, gen)));
      if (region.contains(c)) return c;
    }
  };
  for (int i = 0; i < spec.seeds; ++i) {
    HeisPoint a = random_point(region, gen);
    s.points.push_back(a);
    for (int j = 0; j < spec.sub; ++j) {
      HeisPoint b = child(a, spec.s1);
      s.points.push_back(b);
      for (int l = 0; l < spec.leaf; ++l) s.points.push_back(child(b, spec.s2));
    }
  }
  s.measure.assign(s.points.size(), 1.0);
  return s;
}

std::size_t PointIndex::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = 0x9E3779B97F4A7C15ull;
  for (auto v : k) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9E3779B97F4A7C15ull +
         (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

PointIndex::Key PointIndex::key_of(const HeisPoint& p) const {
  Key k{};
  for (int i = 0; i < 2 * n_; ++i) k[i] = static_cast<std::int32_t>(std::floor(p.z[i] / rho_));
  return k;
}

void PointIndex::insert(int id) {
  const HeisPoint& p = point(id);
  auto& b = buckets_[key_of(p)];
  Entry e{p.t, id};
  auto it = std::upper_bound(b.begin(), b.end(), e,
                             [](const Entry& x, const Entry& y) { return x.t < y.t; });
  b.insert(it, e);
  ++count_;
}

int PointIndex::insert_owned(const HeisPoint& p) {
  own_.push_back(p);
  int id = static_cast<int>(own_.size()) - 1;
  insert(id);
  return id;
}

template <class F>
void PointIndex::scan(const HeisPoint& x, double R, F&& f) const {
  const int d = 2 * n_;
  const auto span = static_cast<std::int64_t>(std::ceil(R / rho_));
  const Key kx = key_of(x);
  const double zn = std::sqrt(x.z_norm2());
  const double tlo = x.t - R * R - 0.5 * R * zn, thi = x.t + R * R + 0.5 * R * zn;

  auto visit = [&](const std::vector<Entry>& b) {
    auto it = std::lower_bound(b.begin(), b.end(), tlo,
                               [](const Entry& e, double t) { return e.t < t; });
    for (; it != b.end() && it->t <= thi; ++it) {
      double dd = dist_left(point(it->id), x);
      if (dd < R && !f(it->id, dd)) return false;
    }
    return true;
  };

  double cells = 1.0;
  for (int i = 0; i < d; ++i) cells *= 2.0 * span + 1.0;
  if (cells > static_cast<double>(buckets_.size())) {
    for (const auto& [k, b] : buckets_) {
      bool near = true;
      for (int i = 0; i < d; ++i)
        if (std::abs(static_cast<std::int64_t>(k[i]) - kx[i]) > span) near = false;
      if (near && !visit(b)) return;
    }
    return;
  }
  Key k = kx;
  std::vector<std::int64_t> off(d, -span);
  for (;;) {
    for (int i = 0; i < d; ++i) k[i] = static_cast<std::int32_t>(kx[i] + off[i]);
    auto it = buckets_.find(k);
    if (it != buckets_.end() && !visit(it->second)) return;
    int i = 0;
    while (i < d && off[i] == span) off[i++] = -span;
    if (i == d) break;
    ++off[i];
  }
}

bool PointIndex::any_within(const HeisPoint& x, double R) const {
  bool found = false;
  scan(x, R, [&](int, double) {
    found = true;
    return false;
  });
  return found;
}

std::vector<int> PointIndex::within(const HeisPoint& x, double R) const {
  std::vector<int> out;
  scan(x, R, [&](int id, double) {
    out.push_back(id);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

int PointIndex::nearest(const HeisPoint& x, double start_R, double max_R) const {
  for (double R = start_R; R <= 2.0 * max_R; R *= 2.0) {
    int best = -1;
    double bd = 0.0;
    scan(x, R, [&](int id, double d) {
      if (best < 0 || d < bd || (d == bd && id < best)) {
        best = id;
        bd = d;
      }
      return true;
    });
    if (best >= 0) return best;
  }
  return -1;
}

double DyadicSystem::side(int k) const { return std::pow(delta, k); }

int DyadicSystem::finest(const HeisPoint& x) const {
  return finest_index_.nearest(x, side(k_max), 1e6);
}

int DyadicSystem::ancestor(int finest_idx, int k) const {
  int idx = finest_idx;
  for (int L = levels() - 1; L > k - k_min; --L) idx = parent_[L][idx];
  return idx;
}

int DyadicSystem::locate(const HeisPoint& x, int k) const {
  if (!region.contains(x)) return -1;
  return ancestor(finest(x), k);
}

DyadicSystem DyadicSystem::build(const SampleSet& cands, double delta, int k_min, int k_max,
                                 std::uint64_t seed, int alpha) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("dyadic: delta must be in (0,1)");
  if (k_max < k_min) throw std::invalid_argument("dyadic: k_max < k_min");
  if (cands.size() == 0) throw std::invalid_argument("dyadic: no candidate points");
  DyadicSystem sys;
  sys.alpha = alpha;
  sys.delta = delta;
  sys.k_min = k_min;
  sys.k_max = k_max;
  sys.region = cands.region;
  const int L = sys.levels();
  const int n = cands.n();
  sys.centers_.resize(L);
  sys.parent_.resize(L);
  sys.kids_.resize(L);

  std::vector<int> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 gen(seed);
  std::shuffle(order.begin(), order.end(), gen);

  std::vector<PointIndex> idx;
  idx.reserve(L);
  for (int l = 0; l < L; ++l) {
    const double s = sys.side(k_min + l);
    if (l > 0) sys.centers_[l] = sys.centers_[l - 1];
    idx.emplace_back(n, s, &sys.centers_[l]);
    for (int j = 0; j < static_cast<int>(sys.centers_[l].size()); ++j) idx[l].insert(j);
    for (int i : order) {
      const HeisPoint& x = cands.points[i];
      if (!idx[l].any_within(x, s)) {
        sys.centers_[l].push_back(x);
        idx[l].insert(static_cast<int>(sys.centers_[l].size()) - 1);
      }
    }
    sys.parent_[l].assign(sys.centers_[l].size(), -1);
    sys.kids_[l].assign(sys.centers_[l].size(), {});
    if (l > 0) {
      const double sp = sys.side(k_min + l - 1);
      for (std::size_t j = 0; j < sys.centers_[l].size(); ++j) {
        int p = idx[l - 1].nearest(sys.centers_[l][j], sp, 1e6);
        sys.parent_[l][j] = p;
        sys.kids_[l - 1][p].push_back(static_cast<int>(j));
      }
    }
  }
  sys.finest_index_ = PointIndex(n, sys.side(k_max), nullptr);
  for (const auto& c : sys.centers_.back()) sys.finest_index_.insert_owned(c);
  return sys;
}

DyadicGrid::DyadicGrid(SampleSet s, std::vector<DyadicSystem> sys)
    : samples(std::move(s)), systems(std::move(sys)) {
  if (systems.empty()) throw std::invalid_argument("DyadicGrid: no systems");
  const std::size_t N = samples.size();
  const int A = static_cast<int>(systems.size());
  cube_of_.resize(A);
  members_.resize(A);
  measure_.resize(A);
  for (int a = 0; a < A; ++a) {
    const DyadicSystem& D = systems[a];
    const int L = D.levels();
    cube_of_[a].assign(L, std::vector<int>(N, -1));
    members_[a].resize(L);
    measure_[a].resize(L);
    for (int l = 0; l < L; ++l) {
      members_[a][l].assign(D.centers(D.k_min + l).size(), {});
      measure_[a][l].assign(D.centers(D.k_min + l).size(), 0.0);
    }
    for (std::size_t i = 0; i < N; ++i) {
      int idx = D.finest(samples.points[i]);
      for (int l = L - 1; l >= 0; --l) {
        if (l < L - 1) idx = D.parent(D.k_min + l + 1, idx);
        cube_of_[a][l][i] = idx;
        members_[a][l][idx].push_back(static_cast<int>(i));
        measure_[a][l][idx] += samples.measure[i];
      }
    }
  }
}

const std::vector<int>& DyadicGrid::members(const CubeRef& q) const {
  return members_[q.alpha][q.k - k_min()][q.idx];
}

HeisPoint DyadicGrid::center(const CubeRef& q) const {
  return systems[q.alpha].centers(q.k)[q.idx];
}

std::vector<CubeRef> DyadicGrid::children(const CubeRef& q) const {
  std::vector<CubeRef> out;
  if (q.k >= k_max()) return out;
  for (int c : systems[q.alpha].children(q.k, q.idx)) {
    CubeRef r{q.alpha, q.k + 1, c};
    if (nonempty(r)) out.push_back(r);
  }
  return out;
}

CubeRef DyadicGrid::parent(const CubeRef& q) const {
  if (q.k <= k_min()) throw std::out_of_range("DyadicGrid: root cube has no parent");
  return {q.alpha, q.k - 1, systems[q.alpha].parent(q.k, q.idx)};
}

std::vector<CubeRef> DyadicGrid::cubes_at(int alpha, int k) const {
  std::vector<CubeRef> out;
  const int m = static_cast<int>(systems[alpha].centers(k).size());
  for (int i = 0; i < m; ++i) {
    CubeRef q{alpha, k, i};
    if (nonempty(q)) out.push_back(q);
  }
  return out;
}

std::vector<CubeRef> DyadicGrid::cubes(int alpha) const {
  std::vector<CubeRef> out;
  for (int a = 0; a < static_cast<int>(systems.size()); ++a) {
    if (alpha >= 0 && a != alpha) continue;
    for (int k = k_min(); k <= k_max(); ++k) {
      auto c = cubes_at(a, k);
      out.insert(out.end(), c.begin(), c.end());
    }
  }
  return out;
}

std::vector<CubeRef> DyadicGrid::descendants(const CubeRef& q) const {
  std::vector<CubeRef> out, front{q};
  while (!front.empty()) {
    std::vector<CubeRef> next;
    for (const auto& c : front)
      for (const auto& ch : children(c)) next.push_back(ch);
    out.insert(out.end(), next.begin(), next.end());
    front = std::move(next);
  }
  return out;
}

CubeRef DyadicGrid::locate(const HeisPoint& x, int k, int alpha) const {
  return {alpha, k, systems[alpha].locate(x, k)};
}

double cell_koranyi_step(const GridSpec& g) {
  double r2 = 0.0;
  for (int a = 0; a < 2 * g.n(); ++a) r2 += g.spacing(a) * g.spacing(a);
  double dt = g.spacing(2 * g.n());
  return std::sqrt(std::sqrt(r2 * r2 + dt * dt));
}

namespace {

void check_options(const BuildOptions& opt) {
  if (!opt.relaxed && opt.delta > 1.0 / 96.0)
    throw std::invalid_argument("dyadic: delta must be <= 1/96 unless relaxed");
  if (opt.systems < 1) throw std::invalid_argument("dyadic: need at least one system");
}

std::uint64_t system_seed(std::uint64_t seed, int alpha) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(alpha + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<DyadicSystem> build_systems(const SampleSet& candidates, const BuildOptions& opt,
                                        std::uint64_t seed) {
  check_options(opt);
  std::vector<DyadicSystem> out;
  for (int a = 0; a < opt.systems; ++a)
    out.push_back(DyadicSystem::build(candidates, opt.delta, opt.k_min, opt.k_max,
                                      system_seed(seed, a), a));
  return out;
}

DyadicGrid build_grid_systems(const GridSpec& g, const BuildOptions& opt, std::uint64_t seed,
                              int candidates) {
  check_options(opt);
  double step = cell_koranyi_step(g);
  double need = std::pow(opt.delta, opt.k_max);
  if (step > need) {
    std::ostringstream os;
    os << "grid too coarse: cell Koranyi step " << step << " exceeds delta^k_max = " << need
       << "; refine each z axis and the t axis until the step is below it";
    throw GridTooCoarse(os.str());
  }
  SampleSet cands = sobol_samples(g.region, candidates, seed);
  return DyadicGrid(grid_samples(g), build_systems(cands, opt, seed));
}

namespace {

bool ball_inside(const BoxRegion& box, const HeisPoint& z, double R) {
  // the ball lies in {|z_i - c_i| < R, |t - c_t| < R^2 + R|c_z|/2}
  const int n = box.n;
  for (int i = 0; i < 2 * n; ++i)
    if (std::abs(z.z[i]) + R > box.half_widths[i]) return false;
  double zn = std::sqrt(z.z_norm2());
  return std::abs(z.t) + R * R + 0.5 * R * (zn + R) <= box.half_widths[2 * n];
}

}  // namespace

InvariantReport check_invariants(const DyadicGrid& g, double inner, double outer,
                                 bool mask_boundary) {
  InvariantReport rep;
  const auto& pts = g.samples.points;
  const std::size_t N = pts.size();
  for (int a = 0; a < static_cast<int>(g.systems.size()); ++a) {
    for (int k = g.k_min(); k <= g.k_max(); ++k) {
      const double side = std::pow(g.delta(), k);
      std::vector<int> seen(N, 0);
      auto cubes = g.cubes_at(a, k);
      for (const auto& q : cubes)
        for (int m : g.members(q)) ++seen[m];
      for (std::size_t i = 0; i < N; ++i)
        if (seen[i] != 1) {
          if (rep.partition) rep.first_failure = "partition at alpha " + std::to_string(a);
          rep.partition = false;
        }
      if (k > g.k_min()) {
        for (std::size_t i = 0; i < N; ++i) {
          int c = g.cube_of(a, k, static_cast<int>(i));
          if (g.systems[a].parent(k, c) != g.cube_of(a, k - 1, static_cast<int>(i))) {
            if (rep.nesting) rep.first_failure = "nesting at alpha " + std::to_string(a);
            rep.nesting = false;
          }
        }
      }
      PointIndex idx(g.samples.n(), side, &pts);
      for (std::size_t i = 0; i < N; ++i) idx.insert(static_cast<int>(i));
      for (const auto& q : cubes) {
        ++rep.cubes_checked;
        HeisPoint z = g.center(q);
        for (int m : g.members(q)) {
          double d = dist_left(z, pts[m]) / side;
          rep.worst_outer_ratio = std::max(rep.worst_outer_ratio, d);
          if (d >= outer) ++rep.outer_violations;
        }
        if (mask_boundary && !ball_inside(g.samples.region, z, inner * side)) continue;
        for (int id : idx.within(z, side)) {
          if (g.cube_of(a, k, id) == q.idx) continue;
          double d = dist_left(z, pts[id]) / side;
          rep.worst_inner_ratio = std::min(rep.worst_inner_ratio, d);
          if (d < inner) ++rep.inner_violations;
        }
      }
    }
  }
  if (rep.inner_violations + rep.outer_violations > 0) {
    rep.sandwich = false;
    if (rep.first_failure.empty()) rep.first_failure = "sandwich";
  }
  return rep;
}

std::vector<BallReport> check_balls(const DyadicGrid& g, const std::vector<Ball>& balls) {
  const double ld = std::log(g.delta());
  std::map<int, PointIndex> idx;
  std::vector<BallReport> out;
  for (const auto& b : balls) {
    BallReport rep;
    rep.k = static_cast<int>(std::floor(std::log(b.r) / ld + 1e-12));
    if (rep.k - 1 < g.k_min() || rep.k > g.k_max())
      throw std::out_of_range("check_balls: ball radius outside the built levels");
    auto it = idx.find(rep.k);
    if (it == idx.end()) {
      PointIndex pi(g.samples.n(), std::pow(g.delta(), rep.k), &g.samples.points);
      for (std::size_t i = 0; i < g.samples.size(); ++i) pi.insert(static_cast<int>(i));
      it = idx.emplace(rep.k, std::move(pi)).first;
    }
    auto inside = it->second.within(b.center, b.r);
    rep.points_in_ball = inside.size();
    for (int a = 0; a < static_cast<int>(g.systems.size()) && !rep.found; ++a) {
      CubeRef q = g.locate(b.center, rep.k - 1, a);
      if (q.idx < 0) continue;
      bool ok = std::all_of(inside.begin(), inside.end(),
                            [&](int id) { return g.contains(q, id); });
      if (ok) {
        rep.found = true;
        rep.cube = q;
      }
    }
    out.push_back(rep);
  }
  return out;
}

std::vector<Ball> random_balls(const SampleSet& s, double delta, const std::vector<int>& ks,
                               int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<Ball> out;
  for (int i = 0; i < count; ++i) {
    int k = ks[i % ks.size()];
    double u = 1.0 - u01(gen);  // (0, 1]
    out.push_back({s.points[pick(gen)], std::pow(delta, k + 1.0 - u)});
  }
  return out;
}

AdaptiveResult build_until_property2(const SampleSet& samples, const BuildOptions& opt,
                                     const std::vector<int>& ks, int balls, int max_systems,
                                     std::uint64_t seed) {
  check_options(opt);
  auto ball_set = random_balls(samples, opt.delta, ks, balls, seed ^ 0xBA11ull);
  std::vector<DyadicSystem> sys;
  AdaptiveResult res;
  for (int a = 0; a < max_systems; ++a) {
    sys.push_back(
        DyadicSystem::build(samples, opt.delta, opt.k_min, opt.k_max, system_seed(seed, a), a));
    res.grid = DyadicGrid(samples, sys);
    auto reps = check_balls(res.grid, ball_set);
    res.balls_failed = std::count_if(reps.begin(), reps.end(),
                                     [](const BallReport& r) { return !r.found; });
    res.systems_needed = a + 1;
    if (res.balls_failed == 0) break;
  }
  return res;
}

double cube_average(const DyadicGrid& g, const std::vector<double>& f, const CubeRef& q,
                    double p) {
  if (p < 1.0) throw std::domain_error("cube_average: p must be >= 1");
  const auto& m = g.members(q);
  if (m.empty()) throw std::invalid_argument("cube_average: empty cube");
  if (std::isinf(p)) {
    double s = 0.0;
    for (int i : m) s = std::max(s, std::abs(f[i]));
    return s;
  }
  double s = 0.0;
  for (int i : m) s += std::pow(std::abs(f[i]), p) * g.samples.measure[i];
  return std::pow(s / g.measure(q), 1.0 / p);
}

double doubling_constant(const DyadicGrid& g, const std::vector<Ball>& balls) {
  double worst = 0.0;
  for (const auto& b : balls) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < g.samples.size(); ++i) {
      double d = dist_left(b.center, g.samples.points[i]);
      if (d < 2.0 * b.r) m2 += g.samples.measure[i];
      if (d < b.r) m1 += g.samples.measure[i];
    }
    if (m1 > 0.0) worst = std::max(worst, m2 / m1);
  }
  return worst;
}

std::string dump_json(const DyadicGrid& g) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& q : g.cubes()) {
    HeisPoint c = g.center(q);
    std::vector<double> coords;
    for (int a = 0; a < c.real_dim(); ++a) coords.push_back(c.coord(a));
    arr.push_back({{"alpha", q.alpha},
                   {"k", q.k},
                   {"center", coords},
                   {"cell_count", g.members(q).size()},
                   {"parent_id", q.k > g.k_min() ? g.parent(q).idx : -1}});
  }
  return arr.dump();
}

}  // namespace heislab
