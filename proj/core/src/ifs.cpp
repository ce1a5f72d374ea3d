#include "ifstk/ifs.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ifstk {

namespace {

constexpr double expansion_tol = 1e-10;
constexpr double similarity_rel_tol = 1e-12;
constexpr double merge_rel_tol = 1e-12;

double cloud_diameter(const Mat& pts) {
  if (pts.cols() == 0) return 0.0;
  const Vec lo = pts.rowwise().minCoeff();
  const Vec hi = pts.rowwise().maxCoeff();
  return (hi - lo).norm();
}

} // namespace

Mat IfsSpec::inverse() const {
  return R.inverse();
}

Mat IfsSpec::adjoint_inverse() const {
  return R.transpose().inverse();
}

double IfsSpec::max_digit_norm() const {
  double m = 0.0;
  for (int j = 0; j < digits.cols(); ++j) m = std::max(m, digits.col(j).norm());
  return m;
}

ValidatedIfs validate_ifs(const Mat& R, const Mat& digits) {
  if (R.rows() != R.cols() || R.rows() < 1)
    raise(errc::invalid_argument, "R must be a nonempty square matrix");
  if (digits.cols() < 1)
    raise(errc::invalid_argument, "digit list must be nonempty");
  if (digits.rows() != R.rows())
    raise(errc::size_mismatch, "digit dimension does not match R");

  const int d = static_cast<int>(R.rows());
  const int n_digits = static_cast<int>(digits.cols());

  Eigen::EigenSolver<Mat> eig(R, /*computeEigenvectors=*/false);
  for (int i = 0; i < d; ++i) {
    const double mod = std::abs(eig.eigenvalues()[i]);
    if (mod <= 1.0 + expansion_tol)
      raise(errc::not_expanding,
            "eigenvalue modulus " + std::to_string(mod) + " is not > 1");
  }

  const double scale = std::max(1.0, digits.cwiseAbs().maxCoeff());
  for (int i = 0; i < n_digits; ++i)
    for (int j = i + 1; j < n_digits; ++j)
      if ((digits.col(i) - digits.col(j)).norm() <= 1e-12 * scale)
        raise(errc::duplicate_digit,
              "digits " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

  ValidatedIfs out;
  out.spec.dim = d;
  out.spec.R = R;
  out.spec.digits = digits;
  for (int j = 0; j < n_digits; ++j)
    if (digits.col(j).norm() == 0.0) out.spec.contains_zero = true;
  if (!out.spec.contains_zero)
    out.warnings.push_back("ZeroNotInDigits: 0 is not a digit; translate B if the zero convention matters");

  // R^T R = rho^2 I test, relative to the mean diagonal.
  const Mat gram = R.transpose() * R;
  const double rho2 = gram.trace() / d;
  const Mat resid = gram - rho2 * Mat::Identity(d, d);
  if (rho2 > 0.0 && resid.cwiseAbs().maxCoeff() <= similarity_rel_tol * std::max(1.0, rho2)) {
    out.similarity.is_similarity = true;
    out.similarity.rho = std::sqrt(rho2);
    out.similarity.hausdorff_dim = std::log(double(n_digits)) / std::log(out.similarity.rho);
  }
  return out;
}

Vec apply_map(const IfsSpec& spec, int b_index, const Vec& x) {
  if (b_index < 0 || b_index >= spec.digit_count())
    raise(errc::invalid_argument, "digit index out of range");
  return spec.inverse() * (x + spec.digits.col(b_index));
}

namespace {

// Level-n atoms in lexicographic word order: block b1 of the level-n list is
// tau_{b1}(level-(n-1) list), preserving the sub-order.
Mat enumerate_atoms(const IfsSpec& spec, int n) {
  const int d = spec.dim;
  const int N = spec.digit_count();
  Mat level(d, 1);
  level.col(0).setZero();
  const Mat Rinv = spec.inverse();
  for (int k = 0; k < n; ++k) {
    const auto prev_count = level.cols();
    Mat next(d, prev_count * N);
    for (int b = 0; b < N; ++b) {
      const Vec shift = Rinv * spec.digits.col(b);
      next.block(0, b * prev_count, d, prev_count) =
          (Rinv * level).colwise() + shift;
    }
    level = std::move(next);
  }
  return level;
}

} // namespace

AtomicMeasure attractor_level(const IfsSpec& spec, int n, std::int64_t atom_budget) {
  if (n < 0) raise(errc::invalid_argument, "level must be >= 0");
  const int N = spec.digit_count();
  std::int64_t count = 1;
  for (int k = 0; k < n; ++k) {
    count *= N;
    if (count > atom_budget)
      raise(errc::budget_exceeded, "N^n exceeds atom budget of " + std::to_string(atom_budget));
  }

  AtomicMeasure mu;
  mu.level = n;
  mu.atoms = enumerate_atoms(spec, n);
  const int m = mu.count();
  mu.weights = Vec::Constant(m, std::pow(double(N), -n));
  mu.first_digit.resize(static_cast<std::size_t>(m));
  const std::int64_t block = (n >= 1) ? count / N : count;
  for (int j = 0; j < m; ++j)
    mu.first_digit[static_cast<std::size_t>(j)] =
        (n >= 1) ? static_cast<std::int32_t>(j / block) : 0;

  // Merge near-duplicate atoms (collision scan). Sort an index permutation
  // lexicographically by coordinates, then coalesce adjacent atoms within
  // tolerance.
  const double tol = merge_rel_tol * cloud_diameter(mu.atoms);
  if (m > 1 && tol >= 0.0) {
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    const Mat& a = mu.atoms;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
      for (int c = 0; c < spec.dim; ++c) {
        if (a(c, i) < a(c, j)) return true;
        if (a(c, i) > a(c, j)) return false;
      }
      return i < j;
    });

    std::vector<int> keep;
    keep.reserve(order.size());
    std::vector<double> merged_weight(static_cast<std::size_t>(m), 0.0);
    int current = -1;
    for (int idx : order) {
      const bool duplicate =
          current >= 0 && (a.col(idx) - a.col(current)).norm() <= tol;
      if (duplicate) {
        merged_weight[static_cast<std::size_t>(current)] += mu.weights[idx];
        mu.collision_detected = true;
      } else {
        current = idx;
        keep.push_back(idx);
        merged_weight[static_cast<std::size_t>(current)] = mu.weights[idx];
      }
    }
    if (mu.collision_detected) {
      // Keep first-word metadata of the representative; restore word order.
      std::sort(keep.begin(), keep.end());
      Mat atoms(spec.dim, static_cast<int>(keep.size()));
      Vec weights(static_cast<int>(keep.size()));
      std::vector<std::int32_t> fd(keep.size());
      for (std::size_t i = 0; i < keep.size(); ++i) {
        atoms.col(static_cast<int>(i)) = a.col(keep[i]);
        weights[static_cast<int>(i)] = merged_weight[static_cast<std::size_t>(keep[i])];
        fd[i] = mu.first_digit[static_cast<std::size_t>(keep[i])];
      }
      mu.atoms = std::move(atoms);
      mu.weights = std::move(weights);
      mu.first_digit = std::move(fd);
    }
  }
  return mu;
}

std::optional<int> first_collision_level(const IfsSpec& spec, int max_level,
                                         std::int64_t atom_budget) {
  for (int n = 1; n <= max_level; ++n) {
    std::int64_t count = 1;
    bool over = false;
    for (int k = 0; k < n; ++k) {
      count *= spec.digit_count();
      if (count > atom_budget) { over = true; break; }
    }
    if (over) break;
    if (attractor_level(spec, n, atom_budget).collision_detected) return n;
  }
  return std::nullopt;
}

AtomicMeasure cell_restrict(const AtomicMeasure& mu, int b_index) {
  if (mu.level < 1) raise(errc::level_zero, "cell_restrict requires level >= 1");
  std::vector<int> sel;
  for (int j = 0; j < mu.count(); ++j)
    if (mu.first_digit[static_cast<std::size_t>(j)] == b_index) sel.push_back(j);

  AtomicMeasure out;
  out.level = mu.level;
  out.collision_detected = mu.collision_detected;
  out.atoms.resize(mu.atoms.rows(), static_cast<int>(sel.size()));
  out.weights.resize(static_cast<int>(sel.size()));
  out.first_digit.resize(sel.size());
  for (std::size_t i = 0; i < sel.size(); ++i) {
    out.atoms.col(static_cast<int>(i)) = mu.atoms.col(sel[i]);
    out.weights[static_cast<int>(i)] = mu.weights[sel[i]];
    out.first_digit[i] = mu.first_digit[static_cast<std::size_t>(sel[i])];
  }
  return out;
}

double support_radius(const IfsSpec& spec) {
  const double sigma = spec.inverse().jacobiSvd().singularValues()[0];
  if (sigma >= 1.0)
    raise(errc::invalid_argument,
          "support bound requires ||R^{-1}|| < 1 (holds for every similarity)");
  return spec.max_digit_norm() * sigma / (1.0 - sigma);
}

} // namespace ifstk
