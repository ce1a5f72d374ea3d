#include "ifstk/beurling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "ifstk/error.hpp"

namespace ifstk {

namespace {

// Ball-mode radius multiplier: closed ball of radius r0 has Lebesgue measure
// 2^d, matching the cube window's volume at h = 1.
double ball_radius_multiplier(int d) {
  const double unit_ball_vol =
      std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
  return std::pow(std::pow(2.0, d) / unit_ball_vol, 1.0 / d);
}

std::vector<double> sorted_line(const PointSet& set) {
  std::vector<double> xs(static_cast<std::size_t>(set.size()));
  for (int i = 0; i < set.size(); ++i) xs[static_cast<std::size_t>(i)] = set.points(0, i);
  if (!set.sorted) std::sort(xs.begin(), xs.end());
  return xs;
}

Vec vec_of(double x) {
  Vec v(1);
  v[0] = x;
  return v;
}

CountResult count_max_1d(const PointSet& set, double h) {
  const std::vector<double> xs = sorted_line(set);
  const std::size_t n = xs.size();
  // Any optimal closed window can be slid left until its left edge touches a
  // set point, so scanning windows [x_i, x_i + 2h] attains the true sup.
  CountResult best;
  best.max_count = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < i) j = i;
    while (j + 1 < n && xs[j + 1] - xs[i] <= 2.0 * h) ++j;
    const int count = static_cast<int>(j - i + 1);
    if (count > best.max_count) {
      best.max_count = count;
      best.center = vec_of(xs[i] + h);
    }
  }
  return best;
}

int count_in_window(const Mat& pts, const Vec& c, double h, Window window, double ball_mult) {
  int count = 0;
  if (window == Window::cube) {
    for (int i = 0; i < pts.cols(); ++i)
      if ((pts.col(i) - c).cwiseAbs().maxCoeff() <= h) ++count;
  } else {
    const double r = h * ball_mult;
    for (int i = 0; i < pts.cols(); ++i)
      if ((pts.col(i) - c).norm() <= r) ++count;
  }
  return count;
}

CountResult count_max_nd(const PointSet& set, double h, Window window,
                         std::int64_t center_budget) {
  const Mat& pts = set.points;
  const int n = set.size();
  const double ball_mult = ball_radius_multiplier(set.dim());

  CountResult best;
  best.max_count = 0;
  auto consider = [&](const Vec& c) {
    const int count = count_in_window(pts, c, h, window, ball_mult);
    if (count > best.max_count) {
      best.max_count = count;
      best.center = c;
    }
  };

  for (int i = 0; i < n; ++i) consider(pts.col(i));
  std::int64_t used = n;
  for (int i = 0; i < n && used < center_budget; ++i)
    for (int j = i + 1; j < n && used < center_budget; ++j) {
      consider(0.5 * (pts.col(i) + pts.col(j)));
      ++used;
    }
  return best;
}

} // namespace

CountResult count_max(const PointSet& set, double h, Window window,
                      std::int64_t center_budget) {
  if (set.size() == 0) raise(errc::empty_set, "count_max needs a nonempty set");
  if (!(h > 0.0)) raise(errc::invalid_argument, "window radius must be > 0");
  if (set.dim() == 1) return count_max_1d(set, h);
  return count_max_nd(set, h, window, center_budget);
}

namespace {

double supnorm_extent(const PointSet& set) {
  if (set.size() == 0) return 0.0;
  const Vec lo = set.points.rowwise().minCoeff();
  const Vec hi = set.points.rowwise().maxCoeff();
  return (hi - lo).maxCoeff();
}

double min_positive_gap(const PointSet& set) {
  if (set.dim() == 1) {
    const std::vector<double> xs = sorted_line(set);
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (xs[i] - xs[i - 1] > 0.0) gap = std::min(gap, xs[i] - xs[i - 1]);
    return std::isfinite(gap) ? gap : 0.0;
  }
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < set.size(); ++i)
    for (int j = i + 1; j < set.size(); ++j) {
      const double d = (set.points.col(i) - set.points.col(j)).norm();
      if (d > 0.0) gap = std::min(gap, d);
    }
  return std::isfinite(gap) ? gap : 0.0;
}

std::vector<double> h_grid(const PointSet& set, const DensityConfig& cfg) {
  if (cfg.h_count < 1) raise(errc::invalid_argument, "h_count must be >= 1");
  const double extent = supnorm_extent(set);
  double h_max = cfg.h_max;
  if (extent > 0.0) {
    const double cap = extent / 4.0;
    h_max = (h_max > 0.0) ? std::min(h_max, cap) : cap;
  } else if (h_max <= 0.0) {
    raise(errc::invalid_argument, "set has zero extent; pass an explicit h grid");
  }
  double h_min = cfg.h_min;
  if (h_min <= 0.0) {
    h_min = min_positive_gap(set);
    if (h_min <= 0.0) h_min = h_max / 256.0;
  }
  if (h_min > h_max) h_min = h_max;

  std::vector<double> hs;
  hs.reserve(static_cast<std::size_t>(cfg.h_count));
  if (cfg.h_count == 1 || h_min == h_max) {
    hs.push_back(h_max);
    return hs;
  }
  const double log_ratio = std::log(h_max / h_min);
  for (int i = 0; i < cfg.h_count; ++i)
    hs.push_back(h_min * std::exp(log_ratio * double(i) / double(cfg.h_count - 1)));
  return hs;
}

struct FitInput {
  std::vector<double> log_h;
  std::vector<double> log_count;
  std::vector<std::size_t> row_index;
};

FitInput fit_rows(const std::vector<DensityRow>& rows, double fit_fraction) {
  FitInput in;
  if (rows.empty()) return in;
  const double lo = std::log(rows.front().h);
  const double hi = std::log(rows.back().h);
  const double margin = (hi - lo) * (1.0 - fit_fraction) / 2.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double lh = std::log(rows[i].h);
    if (lh >= lo + margin && lh <= hi - margin) {
      in.log_h.push_back(lh);
      in.log_count.push_back(std::log(double(rows[i].max_count)));
      in.row_index.push_back(i);
    }
  }
  return in;
}

bool ols_slope(const FitInput& in, double& slope, double& stderr_out) {
  const std::size_t n = in.log_h.size();
  if (n < 5) return false;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += in.log_h[i];
    my += in.log_count[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (in.log_h[i] - mx) * (in.log_h[i] - mx);
    sxy += (in.log_h[i] - mx) * (in.log_count[i] - my);
  }
  if (sxx <= 0.0) return false;
  slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = in.log_count[i] - my - slope * (in.log_h[i] - mx);
    rss += resid * resid;
  }
  stderr_out = (n > 2) ? std::sqrt(rss / double(n - 2) / sxx) : 0.0;
  return true;
}

} // namespace

DensityReport density_profile(const PointSet& set, double r, const DensityConfig& cfg) {
  if (set.size() == 0) raise(errc::empty_set, "density_profile needs a nonempty set");
  if (!(cfg.fit_fraction > 0.0 && cfg.fit_fraction <= 1.0))
    raise(errc::invalid_argument, "fit_fraction must be in (0, 1]");

  DensityReport report;
  report.r = r;
  for (double h : h_grid(set, cfg)) {
    DensityRow row;
    row.h = h;
    const CountResult c = count_max(set, h, cfg.window, cfg.center_budget);
    row.max_count = c.max_count;
    row.center = c.center;
    row.d_r = double(c.max_count) / std::pow(h, r);
    report.rows.push_back(std::move(row));
  }

  const FitInput in = fit_rows(report.rows, cfg.fit_fraction);
  if (!in.row_index.empty()) {
    report.fit_first = static_cast<int>(in.row_index.front());
    report.fit_last = static_cast<int>(in.row_index.back());
  }
  double slope = 0.0, se = 0.0;
  if (ols_slope(in, slope, se)) {
    report.fit_valid = true;
    report.fitted_dim = std::max(0.0, slope);
    report.fit_stderr = se;
    report.fit_rows = static_cast<int>(in.row_index.size());
    double dmax = 0.0;
    for (std::size_t i : in.row_index) {
      const DensityRow& row = report.rows[i];
      dmax = std::max(dmax, double(row.max_count) / std::pow(row.h, report.fitted_dim));
    }
    report.r_density_at_dim = dmax;
  }
  return report;
}

DimensionFit estimate_dimension(const PointSet& set, const DensityConfig& cfg) {
  const DensityReport report = density_profile(set, 1.0, cfg);
  if (!report.fit_valid)
    raise(errc::degenerate_fit,
          "need >= 5 fit rows and a spread log-h range (got " +
              std::to_string(report.fit_rows) + " rows)");
  return {report.fitted_dim, report.fit_stderr};
}

} // namespace ifstk
