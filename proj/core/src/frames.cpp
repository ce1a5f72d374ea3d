#include "ifstk/frames.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "ifstk/error.hpp"

namespace ifstk {

double bessel_sum(const ValidatedIfs& ifs, const PointSet& spectrum, const Vec& x,
                  const FtConfig& cfg) {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(spectrum.size()));
  for (int i = 0; i < spectrum.size(); ++i) {
    const Vec arg = x - spectrum.points.col(i);
    terms.push_back(std::norm(ft(ifs, arg, cfg).value));
  }
  return pairwise_sum(terms);
}

double bessel_grid_max(const ValidatedIfs& ifs, const PointSet& spectrum,
                       const std::vector<Vec>& xs, const FtConfig& cfg) {
  double best = 0.0;
  for (const Vec& x : xs) best = std::max(best, bessel_sum(ifs, spectrum, x, cfg));
  return best;
}

std::vector<double> oversample_check(const ValidatedIfs& ifs, const PointSet& spectrum,
                                     int n_power, const std::vector<Vec>& x_grid,
                                     const FtConfig& cfg) {
  if (n_power < 0) raise(errc::invalid_argument, "oversampling power must be >= 0");
  if (!ifs.similarity.is_similarity)
    raise(errc::not_similarity, "oversample_check needs a similarity");

  const Mat adj_inv = ifs.spec.adjoint_inverse();
  Mat contraction = Mat::Identity(ifs.spec.dim, ifs.spec.dim);
  for (int k = 0; k < n_power; ++k) contraction = adj_inv * contraction;
  const Mat mapped = contraction * spectrum.points;
  const double norm = std::pow(double(ifs.spec.digit_count()), -n_power);

  std::vector<double> values;
  values.reserve(x_grid.size());
  for (const Vec& x : x_grid) {
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(mapped.cols()));
    for (int i = 0; i < mapped.cols(); ++i) {
      const Vec arg = x - mapped.col(i);
      terms.push_back(std::norm(ft(ifs, arg, cfg).value));
    }
    values.push_back(norm * pairwise_sum(terms));
  }
  return values;
}

namespace {

constexpr double hermitian_drift_tol = 1e-8;

// Gram accumulation G += E_chunk^H E_chunk with E_{lambda,j} =
// e^{-2 pi i lambda . x_j}; chunking bounds memory, the matrix product keeps
// G exactly Hermitian.
Eigen::MatrixXcd gram_matrix(const AtomicMeasure& mu, const PointSet& spectrum) {
  const int atoms = mu.count();
  const int n_lambda = spectrum.size();
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(atoms, atoms);
  const int chunk = std::max(1, int((std::int64_t(1) << 22) / std::max(1, atoms)));
  for (int start = 0; start < n_lambda; start += chunk) {
    const int rows = std::min(chunk, n_lambda - start);
    Eigen::MatrixXcd E(rows, atoms);
    for (int r = 0; r < rows; ++r) {
      const Vec lambda = spectrum.points.col(start + r);
      for (int j = 0; j < atoms; ++j)
        E(r, j) = unit_phase(-lambda.dot(mu.atoms.col(j)));
    }
    gram.noalias() += E.adjoint() * E;
  }
  return gram;
}

// y = T v for T = W^{1/2} G W^{1/2}, without forming G: per lambda,
// c = a_lambda^H v with (a_lambda)_j = sqrt(w_j) e^{2 pi i lambda . x_j},
// then y += c a_lambda.
Eigen::VectorXcd apply_frame_operator(const AtomicMeasure& mu, const PointSet& spectrum,
                                      const Vec& sqrt_w, const Eigen::VectorXcd& v) {
  const int atoms = mu.count();
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(atoms);
  Eigen::VectorXcd a(atoms);
  for (int i = 0; i < spectrum.size(); ++i) {
    const Vec lambda = spectrum.points.col(i);
    for (int j = 0; j < atoms; ++j)
      a[j] = sqrt_w[j] * unit_phase(lambda.dot(mu.atoms.col(j)));
    const cplx c = a.dot(v); // conjugates a
    y.noalias() += c * a;
  }
  return y;
}

// Dominant eigenvalue of shift*I + sign*T by power iteration with a fixed
// deterministic start vector.
double power_iterate(const AtomicMeasure& mu, const PointSet& spectrum, const Vec& sqrt_w,
                     double shift, double sign, const FrameOptions& opts) {
  const int atoms = mu.count();
  Eigen::VectorXcd v(atoms);
  for (int j = 0; j < atoms; ++j)
    v[j] = cplx(uniform01_at(0x9d5c0fb2u, std::uint64_t(j)) - 0.5,
                uniform01_at(0x9d5c0fb2u, std::uint64_t(j) + 0x10000000ULL) - 0.5);
  v.normalize();

  double rayleigh = 0.0;
  for (int it = 0; it < opts.max_iters; ++it) {
    Eigen::VectorXcd y = shift * v + sign * apply_frame_operator(mu, spectrum, sqrt_w, v);
    const double next = std::real(v.dot(y));
    y.normalize();
    v = std::move(y);
    if (it > 0 && std::abs(next - rayleigh) <= opts.iter_tol * std::max(1.0, std::abs(next))) {
      rayleigh = next;
      break;
    }
    rayleigh = next;
  }
  return rayleigh;
}

} // namespace

FrameReport frame_bounds_measure(const AtomicMeasure& mu, const PointSet& spectrum,
                                 const FrameOptions& opts) {
  const int atoms = mu.count();
  if (atoms == 0) raise(errc::empty_set, "measure has no atoms");
  if (spectrum.size() == 0) raise(errc::empty_set, "spectrum is empty");

  FrameReport report;
  report.level = mu.level;
  report.spectrum_size = spectrum.size();
  report.method = FrameReport::Method::eigen;

  const Vec sqrt_w = mu.weights.cwiseSqrt();

  if (atoms <= opts.dense_cap) {
    Eigen::MatrixXcd gram = gram_matrix(mu, spectrum);
    report.hermitian_drift = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
    if (report.hermitian_drift > hermitian_drift_tol)
      raise(errc::non_hermitian_drift,
            "Gram symmetrization residual " + std::to_string(report.hermitian_drift));
    gram = 0.5 * (gram + gram.adjoint().eval());
    Eigen::MatrixXcd op = std::move(gram);
    for (int j = 0; j < atoms; ++j) op.row(j) *= sqrt_w[j];
    for (int j = 0; j < atoms; ++j) op.col(j) *= sqrt_w[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(op, Eigen::EigenvaluesOnly);
    report.lower = std::max(0.0, eig.eigenvalues().minCoeff());
    report.upper = eig.eigenvalues().maxCoeff();
    return report;
  }

  // Extremes only: largest eigenvalue by plain power iteration (T is PSD so
  // the dominant eigenvalue is the largest), then the smallest through the
  // shifted operator s I - T with s > lambda_max.
  report.upper = power_iterate(mu, spectrum, sqrt_w, 0.0, +1.0, opts);
  const double shift = report.upper * (1.0 + 1e-3) + 1e-12;
  const double shifted_max = power_iterate(mu, spectrum, sqrt_w, shift, -1.0, opts);
  report.lower = std::max(0.0, shift - shifted_max);
  return report;
}

FrameReport frame_bounds_finite(const IfsSpec& spec, int level, const PointSet& spectrum,
                                const FrameOptions& opts) {
  return frame_bounds_measure(attractor_level(spec, level, opts.atom_budget), spectrum, opts);
}

double perturbation_bound(double bessel_in, double displacement, double support_radius) {
  if (bessel_in < 0.0 || displacement < 0.0 || support_radius < 0.0)
    raise(errc::invalid_argument, "all perturbation inputs must be >= 0");
  const double cross = bessel_in * std::expm1(displacement * displacement) *
                       std::expm1(support_radius * support_radius);
  const double root = std::sqrt(bessel_in) + std::sqrt(cross);
  return root * root;
}

double stability_delta(double lower, double upper, double support_radius) {
  if (lower <= 0.0 || upper < lower)
    raise(errc::invalid_bounds, "need 0 < lower <= upper");
  const double denom = upper * std::expm1(support_radius * support_radius);
  return std::sqrt(std::log1p(lower / denom));
}

PerturbationReport perturbation_report(double bessel_in, double displacement,
                                       double support_radius, std::optional<double> lower) {
  PerturbationReport out;
  out.bessel_in = bessel_in;
  out.support_radius = support_radius;
  out.displacement = displacement;
  out.bessel_out_bound = perturbation_bound(bessel_in, displacement, support_radius);
  if (lower.has_value()) {
    out.delta = stability_delta(*lower, bessel_in, support_radius);
    out.has_delta = true;
  }
  return out;
}

ProbeResult bessel_divergence_probe(const ValidatedIfs& ifs, std::int64_t a, int count,
                                    const FtConfig& cfg) {
  if (a == 0) raise(errc::invalid_argument, "a must be a nonzero integer");
  if (count < 1) raise(errc::invalid_argument, "need at least one term");
  if (ifs.spec.dim != 1)
    raise(errc::wrong_family, "divergence probe covers the 1-D family");

  const double r = ifs.spec.R(0, 0);
  ProbeResult out;
  out.terms.reserve(static_cast<std::size_t>(count));
  out.partial_sums.reserve(static_cast<std::size_t>(count));
  double x = double(a);
  double running = 0.0;
  for (int n = 0; n < count; ++n) {
    const double term = std::norm(ft(ifs, vec1(x), cfg).value);
    out.terms.push_back(term);
    running += term;
    out.partial_sums.push_back(running);
    x *= r;
  }
  return out;
}

} // namespace ifstk
