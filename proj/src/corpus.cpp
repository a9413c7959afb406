#include "heislab/corpus.hpp"

#include <cmath>
#include <random>

namespace heislab {

namespace {

HeisPoint pt(int n, std::initializer_list<double> zs, double t) {
  HeisPoint p(n);
  int i = 0;
  for (double v : zs) {
    if (i >= 2 * n) break;
    p.z[i++] = v;
  }
  p.t = t;
  return p;
}

}  // namespace

std::vector<HeisGaussian> gaussian_corpus(int n) {
  return {
      {1.0, 1.0, 1.0, pt(n, {0.0, 0.0, 0.0, 0.0}, 0.0)},
      {1.0, 0.7, 2.0, pt(n, {0.3, -0.2, 0.1, 0.0}, 0.1)},
      {2.0, 1.5, 0.5, pt(n, {-0.4, 0.5, 0.0, -0.2}, -0.3)},
      {0.5, 2.0, 1.0, pt(n, {0.1, 0.1, -0.3, 0.2}, 0.25)},
      {1.5, 0.5, 3.0, pt(n, {-0.2, -0.3, 0.2, 0.1}, -0.1)},
      {1.0, 1.2, 0.8, pt(n, {0.5, 0.0, 0.0, 0.4}, 0.4)},
  };
}

std::vector<HeisPoint> corpus_points(int n, int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const BoxRegion box = BoxRegion::cube(n, 0.5, 0.5);
  std::vector<HeisPoint> v;
  for (int i = 0; i < count; ++i) v.push_back(random_point(box, gen));
  return v;
}

FieldFn ball_indicator(const HeisPoint& a, double r, double height) {
  return [a, r, height](const HeisPoint& x) { return dist_left(a, x) < r ? height : 0.0; };
}

FieldFn ball_bump(const HeisPoint& a, double r, double height) {
  return [a, r, height](const HeisPoint& x) {
    double u = dist_left(a, x) / r;
    if (u >= 1.0) return 0.0;
    double v = 1.0 - u * u;
    return height * v * v;
  };
}

FieldFn sum_fn(std::vector<FieldFn> parts) {
  return [parts = std::move(parts)](const HeisPoint& x) {
    double s = 0.0;
    for (const auto& p : parts) s += p(x);
    return s;
  };
}

FieldFn constant_fn(double c, const BoxRegion& support) {
  return [c, support](const HeisPoint& x) { return support.contains(x) ? c : 0.0; };
}

std::vector<FunctionPair> sparse_pairs(int n, double s) {
  const HeisPoint o(n);
  const HeisPoint a = pt(n, {0.3 * s, 0.1 * s, -0.1 * s, 0.2 * s}, 0.05 * s * s);
  const HeisPoint b = pt(n, {-0.25 * s, -0.2 * s, 0.15 * s, -0.1 * s}, -0.1 * s * s);
  const HeisPoint c = pt(n, {0.05 * s, -0.35 * s, 0.0, 0.1 * s}, 0.2 * s * s);
  const BoxRegion box = BoxRegion::cube(n, 0.8 * s, 0.8 * s * s);
  const BoxRegion quarter = BoxRegion::cube(n, 0.4 * s, 0.4 * s * s);
  auto gauss = [&](const HeisPoint& ctr, double a_, double b_) {
    HeisGaussian g(1.0, a_ / (s * s), b_ / (s * s * s * s), ctr);
    return FieldFn(g);
  };
  auto dyadic3 = [=](const HeisPoint& x) {
    double d = dist_left(o, x) / s;
    if (d < 0.15) return 4.0;
    if (d < 0.35) return 2.0;
    if (d < 0.6) return 1.0;
    return 0.0;
  };
  return {
      {"ball-ball", ball_indicator(a, 0.4 * s), ball_indicator(b, 0.5 * s)},
      {"ball-self", ball_indicator(o, 0.5 * s), ball_indicator(o, 0.5 * s)},
      {"two-bump-ball", sum_fn({ball_indicator(a, 0.15 * s), ball_indicator(b, 0.15 * s)}),
       ball_indicator(o, 0.7 * s)},
      {"two-bump-two-bump", sum_fn({ball_bump(a, 0.2 * s), ball_bump(b, 0.2 * s)}),
       sum_fn({ball_bump(c, 0.25 * s), ball_bump(o, 0.25 * s)})},
      {"tall-narrow", ball_indicator(a, 0.08 * s, 20.0), gauss(o, 2.0, 4.0)},
      {"gauss-gauss", gauss(a, 3.0, 6.0), gauss(b, 2.0, 3.0)},
      {"box-box", constant_fn(1.0, box), constant_fn(1.0, box)},
      {"quarter-const", constant_fn(1.0, quarter), constant_fn(1.0, box)},
      {"const-quarter", constant_fn(1.0, box), constant_fn(3.0, quarter)},
      {"dyadic3-ball", FieldFn(dyadic3), ball_indicator(c, 0.45 * s)},
      {"bump-indicator", ball_bump(o, 0.6 * s, 2.0), ball_indicator(c, 0.3 * s)},
  };
}

std::vector<FunctionPair> domination_pairs(int n, double s) {
  const HeisPoint o(n);
  const HeisPoint a = pt(n, {0.2 * s, 0.1 * s, -0.1 * s, 0.1 * s}, 0.05 * s * s);
  const HeisPoint b = pt(n, {-0.2 * s, -0.1 * s, 0.1 * s, -0.1 * s}, -0.05 * s * s);
  return {
      {"bump-bump", ball_bump(o, 0.7 * s), ball_bump(a, 0.6 * s)},
      {"two-bump-bump", sum_fn({ball_bump(a, 0.35 * s), ball_bump(b, 0.35 * s)}),
       ball_bump(o, 0.8 * s)},
      {"gauss-bump", FieldFn(HeisGaussian(1.0, 4.0 / (s * s), 8.0 / (s * s * s * s), b)),
       ball_bump(a, 0.7 * s)},
  };
}

}  // namespace heislab
