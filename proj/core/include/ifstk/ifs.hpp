#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ifstk/common.hpp"
#include "ifstk/error.hpp"

namespace ifstk {

// Affine IFS tau_b(x) = R^{-1}(x + b) given by an expanding d x d matrix R
// and a finite digit set B of N points in R^d.
struct IfsSpec {
  int dim = 1;
  Mat R;              // d x d, all eigenvalue moduli > 1
  Mat digits;         // d x N, one digit per column
  bool contains_zero = false;

  int digit_count() const { return static_cast<int>(digits.cols()); }

  Mat adjoint() const { return R.transpose(); }            // R*
  Mat inverse() const;                                     // R^{-1}
  Mat adjoint_inverse() const;                             // (R*)^{-1}
  double max_digit_norm() const;
};

// R = rho * O with O orthogonal; then the attractor's Hausdorff dimension is
// ln N / ln rho (similarity formula; open set condition assumed, not checked).
struct SimilarityInfo {
  bool is_similarity = false;
  double rho = 0.0;
  double hausdorff_dim = 0.0;
};

struct ValidatedIfs {
  IfsSpec spec;
  SimilarityInfo similarity;
  std::vector<std::string> warnings;
};

// Exact level-n discretization of the invariant measure: one atom per n-letter
// digit word, sum_{k=1..n} R^{-k} b_k, in lexicographic word order with the
// first (outermost) digit as block index.
struct AtomicMeasure {
  int level = 0;
  Mat atoms;                        // d x (atom count)
  Vec weights;
  std::vector<std::int32_t> first_digit;
  bool collision_detected = false;

  int count() const { return static_cast<int>(atoms.cols()); }
};

inline constexpr std::int64_t default_atom_budget = std::int64_t(1) << 20;

// Validates expansion (eigenvalue moduli > 1, tolerance 1e-10), digit
// distinctness, and detects the similarity structure (R^T R = rho^2 I within
// 1e-12 relative). 0 missing from B is a warning, not an error.
ValidatedIfs validate_ifs(const Mat& R, const Mat& digits);

Vec apply_map(const IfsSpec& spec, int b_index, const Vec& x);

// All N^n level-n word sums with uniform weights N^{-n}. Atoms closer than
// 1e-12 * (cloud diameter) are merged with summed weights and the collision
// flag set; collisions are the computational symptom of overlap.
AtomicMeasure attractor_level(const IfsSpec& spec, int n,
                              std::int64_t atom_budget = default_atom_budget);

// Smallest level <= max_level at which two distinct digit words produce the
// same sum, or nullopt. Heuristic overlap witness.
std::optional<int> first_collision_level(const IfsSpec& spec, int max_level,
                                         std::int64_t atom_budget = default_atom_budget);

// Sub-measure of atoms whose generating word starts with b_index. Weights are
// kept, not renormalized; total weight is 1/N when there is no collision.
AtomicMeasure cell_restrict(const AtomicMeasure& mu, int b_index);

// Radius bound for the attractor: max_b |b| * sum_{k>=1} ||R^{-k}||.
double support_radius(const IfsSpec& spec);

// Quadrature against the atomic measure, fixed pairwise reduction order.
template <typename F>
auto integrate(const AtomicMeasure& mu, F&& f) -> decltype(f(Vec{})) {
  using R = decltype(f(Vec{}));
  std::vector<R> terms;
  terms.reserve(static_cast<std::size_t>(mu.count()));
  for (int j = 0; j < mu.count(); ++j)
    terms.push_back(static_cast<R>(mu.weights[j] * f(Vec(mu.atoms.col(j)))));
  return pairwise_sum(terms);
}

} // namespace ifstk
