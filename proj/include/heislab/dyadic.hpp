#pragma once

#include <cstdint>
#include <array>
#include <stdexcept>
#include <unordered_map>
#include <string>
#include <vector>

#include "heislab/field.hpp"
#include "heislab/heis_core.hpp"

namespace heislab {

// Points carrying measure: grid cell centres (cell volume each) or a cloud (unit mass).
struct SampleSet {
  BoxRegion region;
  std::vector<HeisPoint> points;
  std::vector<double> measure;
  int n() const { return region.n; }
  std::size_t size() const { return points.size(); }
};

SampleSet grid_samples(const GridSpec& g);
// Sobol points with a seeded Cranley-Patterson shift.
SampleSet sobol_samples(const BoxRegion& region, int count, std::uint64_t seed);

// Multiscale cloud: seeds uniform in the box, then `sub` children per seed at
// Koranyi scale s1 and `leaf` grandchildren at scale s2, placed as p * delta_s(u).
struct CloudSpec {
  int seeds = 40;
  int sub = 30;
  int leaf = 20;
  double s1 = 0.03;
  double s2 = 3e-4;
};
SampleSet clustered_cloud(const BoxRegion& region, const CloudSpec& spec, std::uint64_t seed);

// Buckets ids of an external point array by z on a lattice of side rho;
// each bucket is sorted by t.
class PointIndex {
 public:
  PointIndex() = default;
  // pts == nullptr makes the index own its points (insert_owned)
  PointIndex(int n, double rho, const std::vector<HeisPoint>* pts) : n_(n), rho_(rho), pts_(pts) {}
  void insert(int id);
  int insert_owned(const HeisPoint& p);
  const HeisPoint& point(int id) const { return pts_ ? (*pts_)[id] : own_[id]; }
  bool any_within(const HeisPoint& x, double R) const;
  // ids with d_L(p, x) < R
  std::vector<int> within(const HeisPoint& x, double R) const;
  // nearest id (ties to the smaller id), -1 if none within max_R
  int nearest(const HeisPoint& x, double start_R, double max_R) const;
  std::size_t size() const { return count_; }

 private:
  struct Entry {
    double t;
    int id;
  };
  using Key = std::array<std::int32_t, 2 * kMaxN>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  Key key_of(const HeisPoint& p) const;
  // calls f(id, d) for ids with d = d_L(p, x) < R; f returns false to stop
  template <class F>
  void scan(const HeisPoint& x, double R, F&& f) const;

  int n_ = 1;
  double rho_ = 1.0;
  const std::vector<HeisPoint>* pts_ = nullptr;
  std::vector<HeisPoint> own_;
  std::size_t count_ = 0;
  std::unordered_map<Key, std::vector<Entry>, KeyHash> buckets_;
};

// One adjacent dyadic system: nested maximal delta^k-separated nets for
// k = k_min..k_max; cubes are the sets of points whose finest nearest centre
// descends from the cube centre through nearest-parent links.
class DyadicSystem {
 public:
  int alpha = 0;
  double delta = 0.5;
  int k_min = 0, k_max = 0;
  BoxRegion region;

  int levels() const { return k_max - k_min + 1; }
  double side(int k) const;
  const std::vector<HeisPoint>& centers(int k) const { return centers_[k - k_min]; }
  int parent(int k, int idx) const { return parent_[k - k_min][idx]; }
  const std::vector<int>& children(int k, int idx) const { return kids_[k - k_min][idx]; }
  int finest(const HeisPoint& x) const;
  int ancestor(int finest_idx, int k) const;
  // level-k cube containing x, -1 outside the region
  int locate(const HeisPoint& x, int k) const;

  static DyadicSystem build(const SampleSet& candidates, double delta, int k_min, int k_max,
                            std::uint64_t seed, int alpha);

 private:
  std::vector<std::vector<HeisPoint>> centers_;
  std::vector<std::vector<int>> parent_;
  std::vector<std::vector<std::vector<int>>> kids_;
  PointIndex finest_index_;
};

struct CubeRef {
  int alpha = 0, k = 0, idx = 0;
  auto operator<=>(const CubeRef&) const = default;
};

// Systems together with the assignment of a sample set to their cubes.
class DyadicGrid {
 public:
  SampleSet samples;
  std::vector<DyadicSystem> systems;

  DyadicGrid() = default;
  DyadicGrid(SampleSet s, std::vector<DyadicSystem> sys);

  int k_min() const { return systems.front().k_min; }
  int k_max() const { return systems.front().k_max; }
  double delta() const { return systems.front().delta; }
  const std::vector<int>& members(const CubeRef& q) const;
  double measure(const CubeRef& q) const { return measure_[q.alpha][q.k - k_min()][q.idx]; }
  HeisPoint center(const CubeRef& q) const;
  int cube_of(int alpha, int k, int sample) const { return cube_of_[alpha][k - k_min()][sample]; }
  std::vector<CubeRef> children(const CubeRef& q) const;
  CubeRef parent(const CubeRef& q) const;
  bool nonempty(const CubeRef& q) const { return !members(q).empty(); }
  // nonempty cubes of one system, or of all systems (alpha < 0), ordered by (k, idx)
  std::vector<CubeRef> cubes(int alpha = -1) const;
  std::vector<CubeRef> cubes_at(int alpha, int k) const;
  // strict dyadic subcubes of q (nonempty), coarse to fine
  std::vector<CubeRef> descendants(const CubeRef& q) const;
  CubeRef locate(const HeisPoint& x, int k, int alpha) const;
  bool contains(const CubeRef& q, int sample) const { return cube_of(q.alpha, q.k, sample) == q.idx; }

 private:
  std::vector<std::vector<std::vector<int>>> cube_of_;                // [alpha][level][sample]
  std::vector<std::vector<std::vector<std::vector<int>>>> members_;  // [alpha][level][cube]
  std::vector<std::vector<std::vector<double>>> measure_;
};

// Koranyi size of one grid cell; build_systems refuses grids coarser than delta^{k_max}.
double cell_koranyi_step(const GridSpec& g);

struct BuildOptions {
  double delta = 1.0 / 100.0;
  int k_min = 0, k_max = 2;
  int systems = 1;
  bool relaxed = false;  // allows delta > 1/96
};

struct GridTooCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<DyadicSystem> build_systems(const SampleSet& candidates, const BuildOptions& opt,
                                        std::uint64_t seed);
// Grid-backed build: nets from seeded Sobol candidates, cubes as cell sets.
DyadicGrid build_grid_systems(const GridSpec& g, const BuildOptions& opt, std::uint64_t seed,
                              int candidates = 20000);

struct InvariantReport {
  bool partition = true;
  bool nesting = true;
  bool sandwich = true;
  std::size_t cubes_checked = 0;
  std::size_t inner_violations = 0;
  std::size_t outer_violations = 0;
  double worst_outer_ratio = 0.0;  // max d(z, x) / delta^k over members
  double worst_inner_ratio = 1e300;  // min d(z, x) / delta^k over non-members
  std::string first_failure;
};

// Exhaustive scan over the sample set. Cubes whose outer ball leaves the
// region are skipped for the inner inclusion when mask_boundary is set.
InvariantReport check_invariants(const DyadicGrid& g, double inner = 1.0 / 12.0,
                                 double outer = 4.0, bool mask_boundary = true);

struct Ball {
  HeisPoint center;
  double r = 0.0;
};

struct BallReport {
  int k = 0;
  bool found = false;
  CubeRef cube;
  std::size_t points_in_ball = 0;
};

// Property (2): a cube of side delta^{k-1} containing every sample of the ball.
std::vector<BallReport> check_balls(const DyadicGrid& g, const std::vector<Ball>& balls);

// Random balls centred at sample points with radius in (delta^{k+1}, delta^k].
std::vector<Ball> random_balls(const SampleSet& s, double delta, const std::vector<int>& ks,
                               int count, std::uint64_t seed);

// Adds systems with fresh seeds until every ball passes or max_systems is hit.
struct AdaptiveResult {
  DyadicGrid grid;
  int systems_needed = 0;
  std::size_t balls_failed = 0;
};
AdaptiveResult build_until_property2(const SampleSet& samples, const BuildOptions& opt,
                                     const std::vector<int>& ks, int balls, int max_systems,
                                     std::uint64_t seed);

// <f>_{Q,p} over sample values (indexed like g.samples)
double cube_average(const DyadicGrid& g, const std::vector<double>& f, const CubeRef& q,
                    double p);

// max over sampled balls of |B(x,2r)| / |B(x,r)|
double doubling_constant(const DyadicGrid& g, const std::vector<Ball>& balls);

std::string dump_json(const DyadicGrid& g);

}  // namespace heislab
