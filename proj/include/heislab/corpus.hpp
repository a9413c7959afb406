#pragma once

#include <string>
#include <vector>

#include "heislab/field.hpp"
#include "heislab/spectral.hpp"

namespace heislab {

// Gaussians in H^n with varied widths, amplitudes and centres (five or more).
std::vector<HeisGaussian> gaussian_corpus(int n);

// Deterministic evaluation points spread over [-0.5, 0.5]^{2n} x [-0.5, 0.5].
std::vector<HeisPoint> corpus_points(int n, int count, std::uint64_t seed);

// 1 on the left Koranyi ball B(a, r)
FieldFn ball_indicator(const HeisPoint& a, double r, double height = 1.0);
// smooth bump (1 - (d/r)^2)^2 on B(a, r)
FieldFn ball_bump(const HeisPoint& a, double r, double height = 1.0);
FieldFn sum_fn(std::vector<FieldFn> parts);
FieldFn constant_fn(double c, const BoxRegion& support);

struct FunctionPair {
  std::string id;
  FieldFn f, g;
};

// Nonnegative (f, g) pairs for the sparse suites: indicators, two-bump functions,
// Gaussians, a narrow tall bump and a three-level dyadic-valued f. Sizes are relative
// to a root cube of side `scale`.
std::vector<FunctionPair> sparse_pairs(int n, double scale = 1.0);

// Smooth pairs used for the refinement-stability runs.
std::vector<FunctionPair> domination_pairs(int n, double scale = 1.0);

}  // namespace heislab
