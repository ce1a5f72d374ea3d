#include "ifstk/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "ifstk/error.hpp"

namespace ifstk {

cplx mask(const IfsSpec& spec, const Vec& x) {
  const int N = spec.digit_count();
  cplx acc{0.0, 0.0};
  for (int b = 0; b < N; ++b) acc += unit_phase(spec.digits.col(b).dot(x));
  return acc / double(N);
}

cplx ft_truncated(const IfsSpec& spec, const Vec& x, int n) {
  if (n < 0) raise(errc::invalid_argument, "term count must be >= 0");
  const Mat adj_inv = spec.adjoint_inverse();
  cplx prod{1.0, 0.0};
  Vec y = x;
  for (int k = 0; k < n; ++k) {
    y = adj_inv * y;
    prod *= mask(spec, y);
  }
  return prod;
}

FtValue ft(const ValidatedIfs& ifs, const Vec& x, const FtConfig& cfg) {
  if (!ifs.similarity.is_similarity)
    raise(errc::not_similarity, "certified tail bound needs R = rho * orthogonal");
  if (cfg.eps <= 0.0 || cfg.max_terms < 1)
    raise(errc::invalid_argument, "eps must be > 0 and max_terms >= 1");

  const IfsSpec& spec = ifs.spec;
  const double rho = ifs.similarity.rho;
  const double c = two_pi * spec.max_digit_norm();
  const double tail_factor = rho / (rho - 1.0);
  const Mat adj_inv = spec.adjoint_inverse();
  const double norm_x = x.norm();

  FtValue out;
  Vec y = x;
  double decay = 1.0; // rho^{-n}
  for (int n = 0; n <= cfg.max_terms; ++n) {
    const double head = c * decay * norm_x;
    if (head <= 0.5) {
      const double tail = std::expm1(head * tail_factor);
      if (tail <= cfg.eps) {
        out.terms_used = n;
        out.tail_bound = tail;
        return out;
      }
    }
    if (n == cfg.max_terms) break;
    y = adj_inv * y;
    out.value *= mask(spec, y);
    decay /= rho;
  }
  raise(errc::max_terms_exceeded,
        "tolerance " + std::to_string(cfg.eps) + " not reached within " +
            std::to_string(cfg.max_terms) + " factors");
}

double refinement_residual(const ValidatedIfs& ifs, const Vec& x, const FtConfig& cfg) {
  const Vec y = ifs.spec.adjoint_inverse() * x;
  const cplx lhs = ft(ifs, x, cfg).value;
  const cplx rhs = mask(ifs.spec, y) * ft(ifs, y, cfg).value;
  return std::abs(lhs - rhs);
}

std::vector<double> predict_zeros_1d(const IfsSpec& spec, double radius) {
  if (spec.dim != 1 || spec.digit_count() != 2)
    raise(errc::wrong_family, "zero prediction covers the 1-D two-digit family B = {0, b}");
  double b = 0.0;
  bool has_zero = false;
  for (int j = 0; j < 2; ++j) {
    const double v = spec.digits(0, j);
    if (v == 0.0)
      has_zero = true;
    else
      b = v;
  }
  if (!has_zero || b == 0.0)
    raise(errc::wrong_family, "digit set must be {0, b} with b != 0");
  const double rho = std::abs(spec.R(0, 0));

  std::vector<double> zeros;
  for (double scale = rho; scale / (2.0 * std::abs(b)) <= radius; scale *= rho) {
    // |scale * (2k+1) / (2b)| <= radius
    const double max_odd = radius * 2.0 * std::abs(b) / scale;
    for (double odd = 1.0; odd <= max_odd; odd += 2.0) {
      zeros.push_back(scale * odd / (2.0 * b));
      zeros.push_back(-scale * odd / (2.0 * b));
    }
  }
  std::sort(zeros.begin(), zeros.end());
  const double tol = 1e-12 * std::max(1.0, radius);
  zeros.erase(std::unique(zeros.begin(), zeros.end(),
                          [tol](double a, double c) { return std::abs(a - c) <= tol; }),
              zeros.end());
  return zeros;
}

} // namespace ifstk
