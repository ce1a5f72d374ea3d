#pragma once

#include <cstdint>
#include <string>

#include "ifstk/common.hpp"
#include "ifstk/ifs.hpp"

namespace ifstk {

// Candidate spectrum generator: either the digit-expansion family
// c * { sum_{k=0..n-1} S^k l_k : l_k in L } or an explicit point list.
struct SpectrumSpec {
  enum class Kind { digit_lambda, explicit_points };
  Kind kind = Kind::digit_lambda;

  Mat base;      // S, d x d, typically R*
  Mat digits;    // L, d x #L
  double scale = 1.0;

  Mat points;    // explicit_points only
};

// Finite truncation of a candidate spectrum, one point per column.
struct PointSet {
  Mat points;                 // d x n
  int level = -1;             // generation level, -1 when not word-generated
  std::string source;         // how the truncation was produced
  bool sorted = false;        // ascending order, 1-D only
  double max_displacement = 0.0;

  int dim() const { return static_cast<int>(points.rows()); }
  int size() const { return static_cast<int>(points.cols()); }
};

PointSet enumerate_truncation(const SpectrumSpec& spec, int level,
                              std::int64_t budget = default_atom_budget);

PointSet make_explicit_set(const Mat& points, const std::string& source = "explicit");

PointSet transform_scale(const PointSet& set, double c);
PointSet transform_matrix(const PointSet& set, const Mat& M);
PointSet transform_translate(const PointSet& set, const Vec& t);

// Displaces each point by an independent uniform draw from the sup-norm ball
// of radius bound; draw i is a pure function of (seed, i), so the output is
// reproducible and order-independent.
PointSet jitter(const PointSet& set, double bound, std::uint64_t seed);

// || H* H - I ||_max for H_{b,l} = N^{-1/2} e^{2 pi i (R^{-1} b) . l}.
// 0 means (R, B, L) is a Hadamard triple, the standard witness that the
// digit-expansion exponentials are mutually orthonormal.
double hadamard_defect(const Mat& R, const Mat& B, const Mat& L);

struct LatticeCompatResult {
  double sup_dist = 0.0; // finite-sample sup of dist((R*)^{-p} lambda, set)
  int tested = 0;
  int excluded = 0;      // images dropped by the edge-exclusion rule
};

// Finite-sample probe of sup_lambda dist((R*)^{-p} lambda, Lambda). Images
// falling on the boundary of the contracted truncation hull are excluded:
// their true nearest neighbour may lie outside the truncation.
LatticeCompatResult lattice_compat(const PointSet& set, const Mat& R, int p);

} // namespace ifstk
