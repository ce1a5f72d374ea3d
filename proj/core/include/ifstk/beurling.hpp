#pragma once

#include <cstdint>
#include <vector>

#include "ifstk/common.hpp"
#include "ifstk/spectra.hpp"

namespace ifstk {

enum class Window { cube, ball };

// Geometric h-grid and fit controls for the density profile. h_min / h_max
// of 0 request automatic choices: smallest positive nearest-neighbour gap and
// (sup-norm extent)/4. The extent/4 cap is always enforced when the set has
// positive extent, so windows never swallow the whole truncation.
struct DensityConfig {
  Window window = Window::cube;
  double h_min = 0.0;
  double h_max = 0.0;
  int h_count = 48;
  double fit_fraction = 0.6;               // middle portion of the log-h range
  std::int64_t center_budget = std::int64_t(1) << 22; // d >= 2 candidate centers
};

struct CountResult {
  int max_count = 0;
  Vec center;
};

struct DensityRow {
  double h = 0.0;
  int max_count = 0;
  Vec center;
  double d_r = 0.0; // max_count / h^r
};

// Per-window-radius sup counts and the log-log dimension fit.
// Normalization is h^r (window x + h[-1,1]^d has side 2h), so the r = 1
// density of the integer lattice is 2, not 1.
struct DensityReport {
  double r = 1.0;
  std::vector<DensityRow> rows;
  bool fit_valid = false;
  double fitted_dim = 0.0;
  double fit_stderr = 0.0;
  double r_density_at_dim = 0.0; // max over fit rows of count / h^fitted_dim
  int fit_rows = 0;
  int fit_first = -1; // inclusive row range the fit used
  int fit_last = -1;
};

struct DimensionFit {
  double dim = 0.0;
  double stderr = 0.0;
};

// Max over all centers x of #(set in x + h*window), with a witness center.
// Exact in d = 1 (sorted sweep over closed windows, ties resolved to the
// smallest center). In d >= 2 the sup is searched over all set points and
// pairwise midpoints within center_budget, which is a lower bound on the
// true sup.
CountResult count_max(const PointSet& set, double h, Window window = Window::cube,
                      std::int64_t center_budget = std::int64_t(1) << 22);

DensityReport density_profile(const PointSet& set, double r, const DensityConfig& cfg = {});

// Least-squares slope of log max_count against log h over the middle of the
// grid, clamped to >= 0. Throws DegenerateFit with fewer than 5 fit rows or a
// collapsed log-h range.
DimensionFit estimate_dimension(const PointSet& set, const DensityConfig& cfg = {});

} // namespace ifstk
