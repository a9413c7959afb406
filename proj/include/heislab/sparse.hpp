#pragma once

#include <string>
#include <vector>

#include "heislab/dyadic.hpp"
#include "heislab/field.hpp"

namespace heislab {

// Sorted sample indices.
using CellSet = std::vector<int>;

double set_measure(const DyadicGrid& g, const CellSet& s);
// <f 1_s>_{Q,p} with the average taken over the cube q
double set_average(const DyadicGrid& g, const std::vector<double>& f, const CellSet& s,
                   const CubeRef& q, double p);

// Localized mean A_Q f = A_t(f 1_{V_Q}) for Q of side delta^k:
//   V_Q = union of system-0 cubes P at level k + level_offset with
//         B(z_P, delta^{k + ball_power}) inside Q (checked on samples),
//   t   = delta^{k + mean_power}.
// The construction uses {3, 1, 2}; coarse desk grids need smaller offsets.
struct LocalizationSpec {
  int level_offset = 3;
  double ball_power = 1.0;
  double mean_power = 2.0;
};

// Samples of V_Q. Empty when level k + level_offset is not built.
CellSet localization_set(const DyadicGrid& g, const GridSpec& grid, const CubeRef& q,
                         const LocalizationSpec& loc);
// Grid cells whose centres lie in B(a, R).
CellSet cells_in_ball(const GridSpec& grid, const HeisPoint& a, double R);

// The grid whose flat indices are the sample indices of g (grid_samples order).
struct LinearizeInput {
  const DyadicGrid* dyadic = nullptr;
  const GridSpec* grid = nullptr;
  const std::vector<double>* f = nullptr;
  const SphereRule* rule = nullptr;
  LocalizationSpec loc;
  int r_nodes = 1;  // > 1: sup over a geometric t-grid in [t delta, t)
};

// A_Q f (or the local sup) at the members of q, aligned with g.members(q).
std::vector<double> localized_mean(const LinearizeInput& in, const CubeRef& q);

struct LinearizationSets {
  int alpha = 0;
  std::vector<CubeRef> cubes;  // every nonempty cube of the system, (k, idx) order
  std::vector<CellSet> E, B;
  std::vector<double> sup;  // sup_Q A_Q f per sample
  std::vector<std::vector<double>> AQ;  // aligned with members
};

// E_Q = {x in Q : A_Q f(x) >= sup_P A_P f(x) / 2}; B_Q = E_Q minus the E of strict ancestors.
LinearizationSets linearize(const LinearizeInput& in, int alpha);
// Local full variant: inner sup over r_nodes radii in [delta t, t).
LinearizationSets linearize_full(LinearizeInput in, int alpha, int r_nodes);

struct LinearizationReport {
  bool b_disjoint = true;
  bool union_equal = true;
  bool covering = true;   // sup > 0 implies membership in some E_Q
  bool half_bound = true; // <sup A_Q f, g> <= 2 sum <A_Q f, g 1_{B_Q}>
  double lhs = 0.0, rhs = 0.0;
};
LinearizationReport check_linearization(const DyadicGrid& g, const LinearizationSets& L,
                                        const std::vector<double>& gv);

// Maximal strict subcubes P of q0 with <f>_{P,p} > mult <f>_{q0,p}.
std::vector<CubeRef> cz_stopping(const DyadicGrid& g, const std::vector<double>& f,
                                 const CubeRef& q0, double p, double mult);
// The same list by enumerating every subcube.
std::vector<CubeRef> cz_stopping_brute(const DyadicGrid& g, const std::vector<double>& f,
                                       const CubeRef& q0, double p, double mult);

struct StoppingResult {
  std::vector<CubeRef> cubes;
  double multiplier = 2.0;
  double covered = 0.0;  // |union P| / |q0|
};

// Two-sided stopping: <f>_{P,p} > m <f>_{q0,p} or <g>_{P,q} > m <g>_{q0,q}.
std::vector<CubeRef> stopping_children(const DyadicGrid& g, const std::vector<double>& f,
                                       const std::vector<double>& gv, const CubeRef& q0, double p,
                                       double q, double mult);
// Raises m through 2, 4, 8, ... until the union covers less than half of q0.
StoppingResult stopping_children_escalating(const DyadicGrid& g, const std::vector<double>& f,
                                            const std::vector<double>& gv, const CubeRef& q0,
                                            double p, double q, double max_mult = 1099511627776.0);

struct SparseFamily {
  std::vector<CubeRef> cubes;
  std::vector<CellSet> E;  // F_S = S minus its stopping children
  std::vector<double> multiplier;
  std::vector<int> depth;
  double eta = 0.5;
  bool flagged = false;  // max_depth reached
  int max_depth = 0;
};

SparseFamily build_sparse_family(const DyadicGrid& g, const std::vector<double>& f,
                                 const std::vector<double>& gv, const CubeRef& q0, double p,
                                 double q, int max_depth = 64);

// sum_S |S| <f>_{S,p} <g>_{S,q}
double sparse_form(const DyadicGrid& g, const SparseFamily& s, const std::vector<double>& f,
                   const std::vector<double>& gv, double p, double q);

struct SparsityReport {
  bool disjoint = true;
  bool inside = true;    // E_S subset of S
  bool major = true;     // |E_S| > eta |S|
  double worst_fraction = 1.0;
};
SparsityReport check_sparsity(const DyadicGrid& g, const SparseFamily& s);

struct DominationReport {
  int n = 1;
  double p = 2.0, q = 2.0;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  std::size_t family_size = 0;
  int max_depth = 0;
  double max_multiplier = 2.0;
};

// lhs = sum_x g(x) max_j |A_{delta^j} f(x)| |cell| over j in [j_lo, j_hi], evaluated on the
// closed form f; rhs = sum over systems and level-k_min roots of the sparse forms.
DominationReport verify_domination(const DyadicGrid& g, const FieldFn& f, const FieldFn& gfn,
                                   double p, double q, int j_lo, int j_hi,
                                   const SphereRule& rule);
// The two halves of verify_domination, for reuse of lhs across (p, q).
double lacunary_pairing(const DyadicGrid& g, const FieldFn& f, const std::vector<double>& gv,
                        int j_lo, int j_hi, const SphereRule& rule);
DominationReport sparse_bound(const DyadicGrid& g, const std::vector<double>& fv,
                              const std::vector<double>& gv, double p, double q);

// Lorentz L^{r,1} norm on a probability space given by normalized weights.
double lorentz_norm(const std::vector<double>& f, const std::vector<double>& mu, double r);
// int_0^1 t^{1/r - 1} f*(t) dt, which is r times lorentz_norm
double lorentz_norm_rearranged(const std::vector<double>& f, const std::vector<double>& mu,
                               double r);

struct LevelSetSides {
  double lhs = 0.0;  // sum_m 2^m mu(E_m)^{1/r}
  double rhs = 0.0;  // 2 ||f||_{L^{r,1}}
};
LevelSetSides check_level_set_lemma(const std::vector<double>& f, const std::vector<double>& mu,
                                    double r);

// (int_0^1 t^{-p'/r'} dt)^{1/p'} for p > r > 1
double proba_constant(double r, double p);
double proba_constant_quadrature(double r, double p);

struct CarlesonSides {
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};
// sum_{Q in S} <phi>_{Q,s} |Q| against <phi>_{q0,t} |q0|
CarlesonSides carleson_check(const DyadicGrid& g, const SparseFamily& s,
                             const std::vector<double>& phi, const CubeRef& q0, double s_exp,
                             double t_exp);

std::vector<double> sample_values(const DyadicGrid& g, const FieldFn& f);

}  // namespace heislab
