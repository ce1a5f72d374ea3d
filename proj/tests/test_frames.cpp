#include <doctest.h>

#include <cmath>
#include <vector>

#include "ifstk/error.hpp"
#include "ifstk/frames.hpp"
#include "test_util.hpp"

using namespace ifstk;
using namespace testutil;

namespace {

// Frozen from the first run; direct formula arithmetic.
constexpr double kPertBound_1_01_23 = 1.1556151047750707;  // B=1, L=0.1, M=2/3
constexpr double kDelta_1_1_23 = 1.0123909775930651;       // A=B=1, M=2/3
constexpr double kCantorTerm = 0.13796570995879473;        // |mu-hat_3(1)|^2

} // namespace

TEST_SUITE_BEGIN("frames");

TEST_CASE("bessel_sum on trivial spectra") {
  const ValidatedIfs q = jp();
  CHECK(bessel_sum(q, make_explicit_set(Mat(1, 0)), v1(0.0)) == 0.0);
  CHECK(bessel_sum(q, make_explicit_set(dig({0.0})), v1(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bessel partial sums over the digit spectrum grow to one") {
  const ValidatedIfs q = jp();
  double prev = 0.0;
  for (int n : {2, 4, 6, 8}) {
    const double s = bessel_sum(q, enumerate_truncation(jp_spectrum(), n), v1(0.0));
    CHECK(s > 0.0);
    CHECK(s <= 1.0 + 1e-8);
    CHECK(s >= prev - 1e-12);
    prev = s;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("bessel_sum is additive over disjoint spectra") {
  const ValidatedIfs q = jp();
  const PointSet whole = enumerate_truncation(jp_spectrum(), 6);
  const int half = whole.size() / 2;
  const PointSet left = make_explicit_set(whole.points.leftCols(half));
  const PointSet right = make_explicit_set(whole.points.rightCols(whole.size() - half));
  const double x = 0.37;
  CHECK(std::abs(bessel_sum(q, whole, v1(x)) -
                 (bessel_sum(q, left, v1(x)) + bessel_sum(q, right, v1(x)))) <= 1e-12);
}

TEST_CASE("oversample_check basics and finite-truncation consistency") {
  const ValidatedIfs q = jp();
  const std::vector<Vec> origin = {v1(0.0)};
  CHECK(oversample_check(q, make_explicit_set(dig({0.0})), 0, origin)[0] ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Prop (i) <-> (ii) at finite truncation: the oversampled-set check at
  // n-1 equals N times the original-set check at n, both reducing to the
  // same sum over lambda.
  const PointSet lambda = enumerate_truncation(jp_spectrum(), 8);
  const PointSet mapped = transform_matrix(lambda, mat1(0.25)); // (R*)^{-1} Lambda
  const std::vector<Vec> grid = {v1(0.0), v1(0.3), v1(0.7)};
  for (int n : {1, 2}) {
    const std::vector<double> a = oversample_check(q, lambda, n, grid);
    const std::vector<double> b = oversample_check(q, mapped, n - 1, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      CHECK(std::abs(a[i] - b[i] / 2.0) <= 1e-10);
  }
}

TEST_CASE("frame bounds of the full digit system are one") {
  const ValidatedIfs q = jp();
  for (int n : {2, 4}) {
    const FrameReport r =
        frame_bounds_finite(q.spec, n, enumerate_truncation(jp_spectrum(), n));
    CHECK(std::abs(r.lower - 1.0) <= 1e-10);
    CHECK(std::abs(r.upper - 1.0) <= 1e-10);
    CHECK(r.hermitian_drift <= 1e-12);
    CHECK(r.spectrum_size == (1 << n));
  }
}

TEST_CASE("removing a vector makes the lower bound vanish") {
  const ValidatedIfs q = jp();
  for (int n : {2, 4}) {
    const PointSet full = enumerate_truncation(jp_spectrum(), n);
    const PointSet short_one = make_explicit_set(full.points.leftCols(full.size() - 1));
    const FrameReport r = frame_bounds_finite(q.spec, n, short_one);
    CHECK(r.lower <= 1e-10);                       // 2^n - 1 vectors in 2^n dims
    CHECK(r.upper == doctest::Approx(1.0).epsilon(1e-10)); // still a sub-ONB
  }
}

TEST_CASE("duplicating the spectrum doubles both bounds") {
  const ValidatedIfs q = jp();
  const PointSet lambda = enumerate_truncation(jp_spectrum(), 3);
  PointSet doubled = lambda;
  doubled.points.resize(1, 2 * lambda.size());
  doubled.points << lambda.points, lambda.points;
  const FrameReport once = frame_bounds_finite(q.spec, 3, lambda);
  const FrameReport twice = frame_bounds_finite(q.spec, 3, doubled);
  CHECK(twice.lower == doctest::Approx(2.0 * once.lower).epsilon(1e-12));
  CHECK(twice.upper == doctest::Approx(2.0 * once.upper).epsilon(1e-12));
}

TEST_CASE("scaling the weights scales both bounds") {
  const ValidatedIfs q = jp();
  AtomicMeasure mu = attractor_level(q.spec, 3);
  const PointSet lambda = enumerate_truncation(jp_spectrum(), 3);
  const FrameReport base = frame_bounds_measure(mu, lambda);
  mu.weights *= 3.0;
  const FrameReport scaled = frame_bounds_measure(mu, lambda);
  CHECK(scaled.lower == doctest::Approx(3.0 * base.lower).epsilon(1e-12));
  CHECK(scaled.upper == doctest::Approx(3.0 * base.upper).epsilon(1e-12));
}

TEST_CASE("power iteration path matches the dense solver") {
  const ValidatedIfs q = jp();
  // a spectrum with genuinely spread bounds: drop a quarter of the points
  const PointSet full = enumerate_truncation(jp_spectrum(), 4);
  const PointSet partial = make_explicit_set(full.points.leftCols(12));
  FrameOptions dense;
  FrameOptions iterative;
  iterative.dense_cap = 4; // forces the matvec path on 16 atoms
  const FrameReport d = frame_bounds_finite(q.spec, 4, partial, dense);
  const FrameReport it = frame_bounds_finite(q.spec, 4, partial, iterative);
  CHECK(std::abs(d.upper - it.upper) <= 1e-7 * std::max(1.0, d.upper));
  CHECK(std::abs(d.lower - it.lower) <= 1e-7 * std::max(1.0, d.upper));
}

TEST_CASE("finite-level Parseval for the digit basis") {
  const ValidatedIfs q = jp();
  for (int n : {4, 6}) {
    const PointSet lambda = enumerate_truncation(jp_spectrum(), n);
    for (int i = 0; i < 5; ++i) {
      const double x = urand(53, std::uint64_t(n) * 10 + std::uint64_t(i), 0, 1);
      std::vector<double> terms;
      for (int k = 0; k < lambda.size(); ++k)
        terms.push_back(std::norm(ft_truncated(q.spec, x - lambda.points(0, k), n)));
      CHECK(std::abs(pairwise_sum(terms) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("perturbation bound formula") {
  CHECK(perturbation_bound(1.0, 0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(perturbation_bound(1.0, 0.1, 2.0 / 3.0) ==
        doctest::Approx(kPertBound_1_01_23).epsilon(1e-12));
  // monotone in each argument
  double prev = 0.0;
  for (double b : {0.5, 1.0, 2.0}) {
    const double v = perturbation_bound(b, 0.1, 0.5);
    CHECK(v > prev);
    prev = v;
  }
  prev = 0.0;
  for (double l : {0.0, 0.1, 0.5}) {
    const double v = perturbation_bound(1.0, l, 0.5);
    CHECK(v >= prev);
    prev = v;
  }
  prev = 0.0;
  for (double m : {0.1, 0.5, 1.5}) {
    const double v = perturbation_bound(1.0, 0.1, m);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("stability delta formula") {
  CHECK(stability_delta(1.0, 1.0, 2.0 / 3.0) == doctest::Approx(kDelta_1_1_23).epsilon(1e-12));
  // delta grows without bound as the support shrinks
  CHECK(stability_delta(1.0, 1.0, 1e-2) > stability_delta(1.0, 1.0, 1e-1));
  CHECK(stability_delta(1.0, 1.0, 1e-4) > stability_delta(1.0, 1.0, 1e-2));
  CHECK_THROWS_AS(stability_delta(0.0, 1.0, 0.5), error);
  CHECK_THROWS_AS(stability_delta(2.0, 1.0, 0.5), error);

  // consistency: just below delta the lower-bound expression stays positive
  const double m = 2.0 / 3.0;
  const double delta = stability_delta(1.0, 1.0, m);
  const double l = 0.99 * delta;
  const double expr = 1.0 - std::sqrt(std::expm1(l * l) * std::expm1(m * m));
  CHECK(expr > 0.0);

  const PerturbationReport rep = perturbation_report(1.0, 0.1, m, 1.0);
  CHECK(rep.has_delta);
  CHECK(rep.delta == doctest::Approx(kDelta_1_1_23).epsilon(1e-12));
  CHECK(rep.bessel_out_bound == doctest::Approx(kPertBound_1_01_23).epsilon(1e-12));
}

TEST_CASE("divergence probe produces constant terms") {
  const ValidatedIfs c3 = cantor3();
  const ProbeResult probe = bessel_divergence_probe(c3, 1, 8);
  REQUIRE(probe.terms.size() == 8);
  CHECK(probe.terms[0] == doctest::Approx(kCantorTerm).epsilon(1e-9));
  CHECK(probe.terms[0] > 1e-4);
  for (double t : probe.terms) CHECK(std::abs(t - probe.terms[0]) <= 3e-10);
  CHECK(probe.partial_sums[7] / probe.partial_sums[3] == doctest::Approx(2.0).epsilon(1e-6));

  const ProbeResult probe2 = bessel_divergence_probe(c3, 2, 6);
  for (double t : probe2.terms) CHECK(std::abs(t - probe2.terms[0]) <= 3e-10);

  CHECK_THROWS_AS(bessel_divergence_probe(c3, 0, 4), error);
}

TEST_CASE("jittered spectra stay under the perturbation bound") {
  const ValidatedIfs q = jp();
  const PointSet lambda = enumerate_truncation(jp_spectrum(), 6);
  std::vector<Vec> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(v1(i / 9.0));
  const double b_emp = bessel_grid_max(q, lambda, grid);
  const double m_supp = support_radius(q.spec);
  const double bound = perturbation_bound(b_emp, 0.1, m_supp);
  const double jittered = bessel_grid_max(q, jitter(lambda, 0.1, 0), grid);
  CHECK(jittered <= bound);
}

TEST_SUITE_END();
