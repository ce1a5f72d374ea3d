#pragma once

#include <vector>

#include "ifstk/common.hpp"
#include "ifstk/ifs.hpp"

namespace ifstk {

struct FtConfig {
  double eps = 1e-10;   // target absolute error of the infinite product
  int max_terms = 200;  // cap on product length
};

struct FtValue {
  cplx value{1.0, 0.0};
  int terms_used = 0;
  double tail_bound = 0.0;
};

// Mask m_B(x) = (1/N) sum_b e^{2 pi i b.x}. |m_B| <= 1 and m_B(0) = 1.
cplx mask(const IfsSpec& spec, const Vec& x);

// prod_{k=1..n} m_B((R*)^{-k} x); the exact Fourier transform of the level-n
// atomic measure. n = 0 gives 1.
cplx ft_truncated(const IfsSpec& spec, const Vec& x, int n);

// Infinite-product transform with certified truncation: stops at the smallest
// n with tail bound exp(c rho^{-n} |x| rho/(rho-1)) - 1 <= eps, where
// c = 2 pi max_b|b|, accepted only once c rho^{-n} |x| <= 1/2. Requires a
// similarity (the tail estimate uses the geometric decay |(R*)^{-k}x| =
// rho^{-k}|x|).
FtValue ft(const ValidatedIfs& ifs, const Vec& x, const FtConfig& cfg = {});

// | ft(x) - m_B((R*)^{-1}x) ft((R*)^{-1}x) |; <= 3 eps by construction.
double refinement_residual(const ValidatedIfs& ifs, const Vec& x, const FtConfig& cfg = {});

// Zero set of the transform for the 1-D two-digit family B = {0, b}: the mask
// factor at level n vanishes exactly at rho^n (2k+1) / (2b), n >= 1, k in Z.
// Returns all zeros in [-radius, radius], sorted ascending.
std::vector<double> predict_zeros_1d(const IfsSpec& spec, double radius);

// 1-D conveniences.
inline Vec vec1(double x) {
  Vec v(1);
  v[0] = x;
  return v;
}
inline cplx ft_truncated(const IfsSpec& spec, double x, int n) { return ft_truncated(spec, vec1(x), n); }
inline FtValue ft(const ValidatedIfs& ifs, double x, const FtConfig& cfg = {}) { return ft(ifs, vec1(x), cfg); }

} // namespace ifstk
