#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ifstk/common.hpp"
#include "ifstk/fourier.hpp"
#include "ifstk/ifs.hpp"
#include "ifstk/spectra.hpp"

namespace ifstk {

// Frame bounds of {e_lambda} on the finite-level measure, or a grid-based
// Bessel estimate.
struct FrameReport {
  double lower = 0.0;       // m-hat
  double upper = 0.0;       // M-hat
  int level = 0;
  int spectrum_size = 0;
  enum class Method { eigen, bessel_grid } method = Method::eigen;
  double hermitian_drift = 0.0;
};

struct FrameOptions {
  int dense_cap = 4096;       // above this atom count, extremes-only iteration
  double iter_tol = 1e-10;
  int max_iters = 10000;
  std::int64_t atom_budget = default_atom_budget;
};

// sum_lambda |mu-hat(x - lambda)|^2 over the truncation; fixed-order pairwise
// summation so results do not depend on evaluation chunking.
double bessel_sum(const ValidatedIfs& ifs, const PointSet& spectrum, const Vec& x,
                  const FtConfig& cfg = {});

double bessel_grid_max(const ValidatedIfs& ifs, const PointSet& spectrum,
                       const std::vector<Vec>& xs, const FtConfig& cfg = {});

// Normalized oversampled Bessel sums N^{-n} sum_lambda
// |mu-hat(x - (R*)^{-n} lambda)|^2, one value per grid point. For a spectrum
// with frame bounds [m, M] the values land in [m, M] up to truncation
// deficit.
std::vector<double> oversample_check(const ValidatedIfs& ifs, const PointSet& spectrum,
                                     int n_power, const std::vector<Vec>& x_grid,
                                     const FtConfig& cfg = {});

// Exact frame bounds of {e_lambda} in L^2(mu_n): extreme eigenvalues of the
// Hermitian operator W^{1/2} G W^{1/2} with G_{jk} = sum_lambda
// e^{2 pi i lambda.(x_j - x_k)} and W = diag(weights). Dense solve up to
// dense_cap atoms, shifted power iteration above.
FrameReport frame_bounds_finite(const IfsSpec& spec, int level, const PointSet& spectrum,
                                const FrameOptions& opts = {});

// Same computation on an explicit atomic measure (weights need not sum to 1).
FrameReport frame_bounds_measure(const AtomicMeasure& mu, const PointSet& spectrum,
                                 const FrameOptions& opts = {});

// Bessel bound after displacing every point of a B-Bessel spectrum by at most
// L, for a measure supported in the ball of radius M_supp:
// (sqrt(B) + sqrt(B (e^{L^2}-1)(e^{M_supp^2}-1)))^2.
double perturbation_bound(double bessel_in, double displacement, double support_radius);

// Largest displacement keeping the lower frame bound positive:
// sqrt(ln(1 + A / (B (e^{M_supp^2} - 1)))).
double stability_delta(double lower, double upper, double support_radius);

struct PerturbationReport {
  double bessel_in = 0.0;
  double support_radius = 0.0;
  double displacement = 0.0;
  double bessel_out_bound = 0.0;
  double delta = 0.0; // stability radius, present when a lower bound is given
  bool has_delta = false;
};

PerturbationReport perturbation_report(double bessel_in, double displacement,
                                       double support_radius,
                                       std::optional<double> lower = std::nullopt);

// Partial sums sum_{n<K} |mu-hat(R^n a)|^2 for integer a != 0 in the 1-D
// integer-digit family, where all terms coincide with |mu-hat(a)|^2; linear
// growth of the partial sums certifies that no infinite subset of {R^n a}
// is a Bessel spectrum.
struct ProbeResult {
  std::vector<double> terms;
  std::vector<double> partial_sums;
};

ProbeResult bessel_divergence_probe(const ValidatedIfs& ifs, std::int64_t a, int count,
                                    const FtConfig& cfg = {});

} // namespace ifstk
