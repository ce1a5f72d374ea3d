#include "ifstk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ifstk/beurling.hpp"
#include "ifstk/fourier.hpp"
#include "ifstk/frames.hpp"
#include "ifstk/ifs.hpp"
#include "ifstk/report.hpp"
#include "ifstk/spectra.hpp"

namespace ifstk {

namespace {

// Regression band for the r = 1/2 density peak of the level-16 digit
// spectrum. Frozen from the first run (measured 2.42740, counting oracle
// cross-checked at level 12); the computation is deterministic, the margin
// covers libm grid differences only.
constexpr double kHalfDensityPeakLo = 2.38;
constexpr double kHalfDensityPeakHi = 2.47;

Mat mat1(double v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

Mat digits1(std::initializer_list<double> vals) {
  Mat m(1, static_cast<int>(vals.size()));
  int j = 0;
  for (double v : vals) m(0, j++) = v;
  return m;
}

ValidatedIfs jp_ifs() { return validate_ifs(mat1(4.0), digits1({0.0, 2.0})); }
ValidatedIfs cantor3_ifs() { return validate_ifs(mat1(3.0), digits1({0.0, 2.0})); }

SpectrumSpec jp_spectrum(double scale = 1.0) {
  SpectrumSpec s;
  s.base = mat1(4.0);
  s.digits = digits1({0.0, 1.0});
  s.scale = scale;
  return s;
}

std::string g(double v) { return format_g17(v); }

CriterionResult c1_hadamard_onb() {
  CriterionResult r{1, "Hadamard/ONB witness (exact)", false, ""};
  const double defect = hadamard_defect(mat1(4.0), digits1({0.0, 2.0}), digits1({0.0, 1.0}));
  const ValidatedIfs jp = jp_ifs();
  const PointSet lambda8 = enumerate_truncation(jp_spectrum(), 8);
  const FrameReport fr = frame_bounds_finite(jp.spec, 8, lambda8);
  const double lower_err = std::abs(fr.lower - 1.0);
  const double upper_err = std::abs(fr.upper - 1.0);
  r.pass = defect <= 1e-14 && lower_err <= 1e-9 && upper_err <= 1e-9;
  r.detail = "defect=" + g(defect) + " (<=1e-14), |m-1|=" + g(lower_err) + ", |M-1|=" +
             g(upper_err) + " (<=1e-9)";
  return r;
}

CriterionResult c2_parseval() {
  CriterionResult r{2, "Finite-level Parseval (exact)", false, ""};
  const ValidatedIfs jp = jp_ifs();
  double worst = 0.0;
  for (int n : {4, 6, 8}) {
    const PointSet lambda = enumerate_truncation(jp_spectrum(), n);
    for (int i = 0; i < 20; ++i) {
      const double x = uniform01_at(2026, std::uint64_t(n) * 100 + std::uint64_t(i));
      std::vector<double> terms;
      terms.reserve(static_cast<std::size_t>(lambda.size()));
      for (int k = 0; k < lambda.size(); ++k)
        terms.push_back(std::norm(ft_truncated(jp.spec, x - lambda.points(0, k), n)));
      worst = std::max(worst, std::abs(pairwise_sum(terms) - 1.0));
    }
  }
  r.pass = worst <= 1e-10;
  r.detail = "max |sum - 1| = " + g(worst) + " over levels {4,6,8} x 20 x (<=1e-10)";
  return r;
}

CriterionResult c3_oversampling() {
  CriterionResult r{3, "Oversampling identity", false, ""};
  const ValidatedIfs jp = jp_ifs();
  const std::vector<Vec> grid = {vec1(0.0), vec1(0.3), vec1(0.7)};
  const PointSet l14 = enumerate_truncation(jp_spectrum(), 14);
  const PointSet l16 = enumerate_truncation(jp_spectrum(), 16);
  bool ok = true;
  double vmin = 2.0, vmax = 0.0;
  for (int n : {1, 2}) {
    const std::vector<double> v14 = oversample_check(jp, l14, n, grid);
    const std::vector<double> v16 = oversample_check(jp, l16, n, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      vmin = std::min({vmin, v14[i], v16[i]});
      vmax = std::max({vmax, v14[i], v16[i]});
      if (!(v14[i] >= 0.9 && v14[i] <= 1.0 + 1e-6)) ok = false;
      if (!(v16[i] >= 0.9 && v16[i] <= 1.0 + 1e-6)) ok = false;
      if (!(std::abs(1.0 - v16[i]) < std::abs(1.0 - v14[i]) + 1e-12)) ok = false;
    }
  }
  r.pass = ok;
  r.detail = "normalized sums in [" + g(vmin) + ", " + g(vmax) +
             "] (band [0.9, 1+1e-6]); level 16 closer to 1 than level 14";
  return r;
}

CriterionResult c4_dimension_coincidence() {
  CriterionResult r{4, "Beurling dimension = Hausdorff dimension", false, ""};
  const PointSet l16 = enumerate_truncation(jp_spectrum(), 16);
  const DimensionFit fit = estimate_dimension(l16);
  const LatticeCompatResult lat = lattice_compat(l16, mat1(4.0), 1);
  r.pass = std::abs(fit.dim - 0.5) <= 0.05 && lat.sup_dist <= 0.25;
  r.detail = "fitted_dim=" + g(fit.dim) + " (0.5 +- 0.05, stderr=" + g(fit.stderr) +
             "), lattice sup=" + g(lat.sup_dist) + " (<=0.25)";
  return r;
}

CriterionResult c5_critical_density_finite() {
  CriterionResult r{5, "Critical r=1/2 density finite", false, ""};
  const PointSet l16 = enumerate_truncation(jp_spectrum(), 16);
  const DensityReport profile = density_profile(l16, 0.5);
  double peak = 0.0;
  for (const DensityRow& row : profile.rows) peak = std::max(peak, row.d_r);
  r.pass = peak >= kHalfDensityPeakLo && peak <= kHalfDensityPeakHi;
  r.detail = "max over h of count/sqrt(h) = " + g(peak) + " (frozen band [" +
             g(kHalfDensityPeakLo) + ", " + g(kHalfDensityPeakHi) + "])";
  return r;
}

CriterionResult c6_scaled_density_decay() {
  CriterionResult r{6, "Scaled spectra density decay", false, ""};
  double d[3] = {0.0, 0.0, 0.0};
  for (int k = 0; k <= 2; ++k) {
    const PointSet set = enumerate_truncation(jp_spectrum(std::pow(5.0, k)), 12);
    const DensityReport profile = density_profile(set, 0.5);
    double peak = 0.0;
    for (int i = profile.fit_first; i >= 0 && i <= profile.fit_last; ++i)
      peak = std::max(peak, profile.rows[static_cast<std::size_t>(i)].d_r);
    d[k] = peak;
  }
  const double target = 1.0 / std::sqrt(5.0);
  const double r10 = d[1] / d[0];
  const double r21 = d[2] / d[1];
  r.pass = d[1] < d[0] && d[2] < d[1] && std::abs(r10 - target) <= 0.2 * target &&
           std::abs(r21 - target) <= 0.2 * target;
  r.detail = "D(k)=" + g(d[0]) + "," + g(d[1]) + "," + g(d[2]) + "; ratios " + g(r10) + "," +
             g(r21) + " vs 5^{-1/2}=" + g(target) + " (+-20%)";
  return r;
}

CriterionResult c7_cantor_non_bessel() {
  CriterionResult r{7, "Middle-third Cantor non-Bessel probe", false, ""};
  const ValidatedIfs c3 = cantor3_ifs();
  const ProbeResult probe = bessel_divergence_probe(c3, 1, 16);
  double term_spread = 0.0;
  for (double t : probe.terms) term_spread = std::max(term_spread, std::abs(t - probe.terms[0]));
  // Linear fit of S_k against k; constant terms make the residual vanish.
  const int K = static_cast<int>(probe.partial_sums.size());
  double mx = 0.0, my = 0.0;
  for (int k = 0; k < K; ++k) {
    mx += k;
    my += probe.partial_sums[static_cast<std::size_t>(k)];
  }
  mx /= K;
  my /= K;
  double sxx = 0.0, sxy = 0.0;
  for (int k = 0; k < K; ++k) {
    sxx += (k - mx) * (k - mx);
    sxy += (k - mx) * (probe.partial_sums[static_cast<std::size_t>(k)] - my);
  }
  const double slope = sxy / sxx;
  double resid = 0.0;
  for (int k = 0; k < K; ++k)
    resid = std::max(resid, std::abs(probe.partial_sums[static_cast<std::size_t>(k)] - my -
                                     slope * (k - mx)));

  Mat powers(1, 33);
  double p = 1.0;
  for (int n = 0; n <= 32; ++n) {
    powers(0, n) = p;
    p *= 3.0;
  }
  const DimensionFit fit = estimate_dimension(make_explicit_set(powers, "3^n"));

  r.pass = term_spread <= 3e-10 && resid < 1e-6 && fit.dim <= 0.1;
  r.detail = "term spread=" + g(term_spread) + " (<=3e-10), S_K linear residual=" + g(resid) +
             " (<1e-6), dim({3^n})=" + g(fit.dim) + " (<=0.1)";
  return r;
}

CriterionResult c8_zero_set() {
  CriterionResult r{8, "Zero set of the transform", false, ""};
  const ValidatedIfs c3 = cantor3_ifs();
  const std::vector<double> zeros = predict_zeros_1d(c3.spec, 30.0);
  double worst = 0.0;
  for (double z : zeros) worst = std::max(worst, std::abs(ft(c3, z).value));
  const double control = std::abs(ft(c3, 0.25).value);
  r.pass = !zeros.empty() && worst <= 1e-10 && control > 1e-3;
  r.detail = std::to_string(zeros.size()) + " zeros in [-30,30], max |ft| = " + g(worst) +
             " (<=1e-10); |ft(1/4)| = " + g(control) + " (>1e-3)";
  return r;
}

CriterionResult c9_perturbation_stability() {
  CriterionResult r{9, "Perturbation stability", false, ""};
  const ValidatedIfs jp = jp_ifs();
  const PointSet l10 = enumerate_truncation(jp_spectrum(), 10);
  std::vector<Vec> grid;
  for (int i = 0; i < 50; ++i) grid.push_back(vec1(double(i) / 49.0));
  const double b_emp = bessel_grid_max(jp, l10, grid);
  const PointSet jittered = jitter(l10, 0.1, 0);
  const double jit_max = bessel_grid_max(jp, jittered, grid);
  const double m_supp = support_radius(jp.spec);
  const double bound = perturbation_bound(b_emp, 0.1, m_supp);
  const double delta = stability_delta(1.0, 1.0, m_supp);
  r.pass = jit_max <= bound && delta > 0.0;
  r.detail = "jittered grid max " + g(jit_max) + " <= bound " + g(bound) + " (B_emp=" +
             g(b_emp) + ", M_supp=" + g(m_supp) + "); delta=" + g(delta) + " (>0)";
  return r;
}

CriterionResult c10_cross_oracle() {
  CriterionResult r{10, "Product vs quadrature transform (exact)", false, ""};
  double worst = 0.0;
  std::uint64_t ctr = 0;
  for (const ValidatedIfs& ifs : {jp_ifs(), cantor3_ifs()}) {
    for (int n : {1, 3, 6, 9, 12}) {
      const AtomicMeasure mu = attractor_level(ifs.spec, n);
      for (int i = 0; i < 5; ++i) {
        const double x = -8.0 + 16.0 * uniform01_at(10, ctr++);
        const cplx prod = ft_truncated(ifs.spec, x, n);
        const cplx quad = integrate(mu, [x](const Vec& t) { return unit_phase(x * t[0]); });
        worst = std::max(worst, std::abs(prod - quad));
      }
    }
  }
  r.pass = worst <= 1e-13;
  r.detail = "max |product - quadrature| = " + g(worst) + " over 50 points (<=1e-13)";
  return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance() {
  return {
      c1_hadamard_onb(),  c2_parseval(),          c3_oversampling(),
      c4_dimension_coincidence(), c5_critical_density_finite(),
      c6_scaled_density_decay(),  c7_cantor_non_bessel(),
      c8_zero_set(),      c9_perturbation_stability(), c10_cross_oracle(),
  };
}

} // namespace ifstk
