#include "ifstk/spectra.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "ifstk/error.hpp"

namespace ifstk {

namespace {

double cloud_scale(const Mat& pts) {
  return pts.size() == 0 ? 1.0 : std::max(1.0, pts.cwiseAbs().maxCoeff());
}

void sort_and_dedup(PointSet& set) {
  const int d = set.dim();
  const int n = set.size();
  if (n == 0) return;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const Mat& p = set.points;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    for (int c = 0; c < d; ++c) {
      if (p(c, i) < p(c, j)) return true;
      if (p(c, i) > p(c, j)) return false;
    }
    return false;
  });
  const double tol = 1e-12 * cloud_scale(p);
  std::vector<int> keep;
  keep.reserve(order.size());
  for (int idx : order)
    if (keep.empty() || (p.col(idx) - p.col(keep.back())).norm() > tol)
      keep.push_back(idx);
  Mat out(d, static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    out.col(static_cast<int>(i)) = p.col(keep[i]);
  set.points = std::move(out);
  set.sorted = (d == 1);
}

} // namespace

PointSet enumerate_truncation(const SpectrumSpec& spec, int level, std::int64_t budget) {
  if (spec.kind == SpectrumSpec::Kind::explicit_points)
    return make_explicit_set(spec.points);
  if (level < 0) raise(errc::invalid_argument, "level must be >= 0");
  const int d = static_cast<int>(spec.base.rows());
  if (spec.base.cols() != d || spec.digits.rows() != d)
    raise(errc::size_mismatch, "base and digit dimensions disagree");
  const int nL = static_cast<int>(spec.digits.cols());

  std::int64_t count = 1;
  for (int k = 0; k < level; ++k) {
    count *= nL;
    if (count > budget)
      raise(errc::budget_exceeded, "(#L)^level exceeds budget of " + std::to_string(budget));
  }

  Mat pts(d, 1);
  pts.col(0).setZero();
  Mat power = Mat::Identity(d, d); // S^k
  for (int k = 0; k < level; ++k) {
    const auto prev = pts.cols();
    Mat next(d, prev * nL);
    for (int l = 0; l < nL; ++l) {
      const Vec shift = power * spec.digits.col(l);
      next.block(0, l * prev, d, prev) = pts.colwise() + shift;
    }
    pts = std::move(next);
    power = spec.base * power;
  }
  if (spec.scale != 1.0) pts *= spec.scale;

  PointSet out;
  out.points = std::move(pts);
  out.level = level;
  out.source = "digit_lambda(level=" + std::to_string(level) + ")";
  sort_and_dedup(out);
  return out;
}

PointSet make_explicit_set(const Mat& points, const std::string& source) {
  PointSet out;
  out.points = points;
  out.source = source;
  sort_and_dedup(out);
  return out;
}

PointSet transform_scale(const PointSet& set, double c) {
  PointSet out = set;
  out.points *= c;
  out.source += "|scale(" + std::to_string(c) + ")";
  if (out.dim() == 1 && set.sorted && c < 0.0)
    out.points.rowwise().reverseInPlace();
  return out;
}

PointSet transform_matrix(const PointSet& set, const Mat& M) {
  Eigen::FullPivLU<Mat> lu(M);
  if (!lu.isInvertible()) raise(errc::singular_matrix, "transform matrix is singular");
  PointSet out = set;
  out.points = M * set.points;
  out.source += "|matrix";
  if (out.dim() == 1 && set.sorted && M(0, 0) < 0.0)
    out.points.rowwise().reverseInPlace();
  return out;
}

PointSet transform_translate(const PointSet& set, const Vec& t) {
  PointSet out = set;
  out.points.colwise() += t;
  out.source += "|translate";
  return out;
}

PointSet jitter(const PointSet& set, double bound, std::uint64_t seed) {
  if (bound < 0.0) raise(errc::invalid_argument, "jitter bound must be >= 0");
  PointSet out = set;
  const int d = set.dim();
  double max_disp = 0.0;
  for (int i = 0; i < set.size(); ++i) {
    double disp_inf = 0.0;
    for (int c = 0; c < d; ++c) {
      const std::uint64_t counter = std::uint64_t(i) * std::uint64_t(d) + std::uint64_t(c);
      const double u = uniform01_at(seed, counter);
      const double disp = bound * (2.0 * u - 1.0);
      out.points(c, i) += disp;
      disp_inf = std::max(disp_inf, std::abs(disp));
    }
    max_disp = std::max(max_disp, disp_inf);
  }
  out.max_displacement = max_disp;
  out.source += "|jitter(L=" + std::to_string(bound) + ",seed=" + std::to_string(seed) + ")";
  if (bound > 0.0 && d == 1) {
    out.sorted = std::is_sorted(out.points.data(), out.points.data() + out.size());
  }
  return out;
}

double hadamard_defect(const Mat& R, const Mat& B, const Mat& L) {
  if (B.cols() != L.cols()) raise(errc::size_mismatch, "#B must equal #L");
  if (B.rows() != R.rows() || L.rows() != R.rows())
    raise(errc::size_mismatch, "digit dimensions must match R");
  const int N = static_cast<int>(B.cols());
  const Mat RinvB = R.inverse() * B;
  Eigen::MatrixXcd H(N, N);
  const double norm = 1.0 / std::sqrt(double(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      H(i, j) = norm * unit_phase(RinvB.col(i).dot(L.col(j)));
  const Eigen::MatrixXcd resid = H.adjoint() * H - Eigen::MatrixXcd::Identity(N, N);
  return resid.cwiseAbs().maxCoeff();
}

namespace {

// Nearest-neighbour distance queries: exact binary search on the sorted line
// in 1-D, uniform-grid bucketing above. Cells are addressed by exact integer
// indices, so boundary rounding never skips an occupied cell.
class NearestNeighbor {
 public:
  explicit NearestNeighbor(const Mat& pts) : pts_(pts), d_(static_cast<int>(pts.rows())) {
    const int n = static_cast<int>(pts.cols());
    if (d_ == 1) {
      line_.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) line_[static_cast<std::size_t>(i)] = pts(0, i);
      std::sort(line_.begin(), line_.end());
      return;
    }
    lo_ = pts.rowwise().minCoeff();
    const Vec hi = pts.rowwise().maxCoeff();
    const double extent = (hi - lo_).maxCoeff();
    k_ = std::max(1, static_cast<int>(std::floor(std::pow(double(n), 1.0 / d_))));
    cell_ = (extent > 0.0) ? extent / k_ : 1.0;
    for (int i = 0; i < n; ++i) buckets_[encode(cell_index(pts.col(i)))].push_back(i);
  }

  double distance(const Vec& q) const {
    if (d_ == 1) {
      const double x = q[0];
      auto it = std::lower_bound(line_.begin(), line_.end(), x);
      double best = std::numeric_limits<double>::infinity();
      if (it != line_.end()) best = std::min(best, std::abs(*it - x));
      if (it != line_.begin()) best = std::min(best, std::abs(*std::prev(it) - x));
      return best;
    }

    const std::vector<std::int64_t> origin = cell_index(q);
    std::int64_t deviation = 0;
    for (int c = 0; c < d_; ++c) {
      deviation = std::max(deviation, -origin[static_cast<std::size_t>(c)]);
      deviation = std::max(deviation, origin[static_cast<std::size_t>(c)] - k_);
    }
    // Rings beyond this cover the whole occupied box from any origin.
    const std::int64_t max_ring = std::int64_t(k_) + deviation + 1;

    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
      // A point in a cell at Chebyshev index distance >= ring is at least
      // (ring - 1) * cell away.
      if (ring > 0 && best <= double(ring - 1) * cell_) break;
      scan_ring(q, origin, ring, best);
    }
    return best;
  }

 private:
  std::vector<std::int64_t> cell_index(const Vec& p) const {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d_));
    for (int c = 0; c < d_; ++c)
      idx[static_cast<std::size_t>(c)] =
          static_cast<std::int64_t>(std::floor((p[c] - lo_[c]) / cell_));
    return idx;
  }

  // Exact (collision-free) key: interior cell indices lie in [0, k_].
  std::int64_t encode(const std::vector<std::int64_t>& idx) const {
    const std::int64_t base = std::int64_t(k_) + 3;
    std::int64_t code = 0;
    for (int c = 0; c < d_; ++c) code = code * base + (idx[static_cast<std::size_t>(c)] + 1);
    return code;
  }

  void scan_ring(const Vec& q, const std::vector<std::int64_t>& origin, std::int64_t ring,
                 double& best) const {
    std::vector<std::int64_t> off(static_cast<std::size_t>(d_), -ring);
    while (true) {
      bool on_ring = (ring == 0);
      for (int c = 0; c < d_ && !on_ring; ++c)
        if (std::abs(off[static_cast<std::size_t>(c)]) == ring) on_ring = true;
      if (on_ring) {
        bool inside = true;
        std::vector<std::int64_t> idx(static_cast<std::size_t>(d_));
        for (int c = 0; c < d_; ++c) {
          const std::int64_t v = origin[static_cast<std::size_t>(c)] + off[static_cast<std::size_t>(c)];
          if (v < 0 || v > k_) { inside = false; break; }
          idx[static_cast<std::size_t>(c)] = v;
        }
        if (inside) {
          auto it = buckets_.find(encode(idx));
          if (it != buckets_.end())
            for (int i : it->second) best = std::min(best, (pts_.col(i) - q).norm());
        }
      }
      int c = 0;
      for (; c < d_; ++c) {
        if (++off[static_cast<std::size_t>(c)] <= ring) break;
        off[static_cast<std::size_t>(c)] = -ring;
      }
      if (c == d_) break;
    }
  }

  const Mat& pts_;
  int d_;
  std::vector<double> line_;
  Vec lo_;
  double cell_ = 1.0;
  int k_ = 1;
  std::unordered_map<std::int64_t, std::vector<int>> buckets_;
};

} // namespace

LatticeCompatResult lattice_compat(const PointSet& set, const Mat& R, int p) {
  if (p < 1) raise(errc::invalid_argument, "p must be >= 1");
  if (set.size() == 0) raise(errc::empty_set, "lattice_compat needs a nonempty set");
  const int d = set.dim();
  if (R.rows() != d || R.cols() != d) raise(errc::size_mismatch, "R dimension mismatch");

  Mat adj_inv_p = R.transpose().inverse();
  Mat acc = adj_inv_p;
  for (int k = 1; k < p; ++k) acc = adj_inv_p * acc;
  const Mat images = acc * set.points;

  // Edge exclusion: keep only images strictly inside the bounding box of the
  // image cloud; a degenerate axis (zero span) excludes nothing.
  const Vec lo = images.rowwise().minCoeff();
  const Vec hi = images.rowwise().maxCoeff();
  const double span_tol = 1e-12 * cloud_scale(images);

  NearestNeighbor nn(set.points);
  LatticeCompatResult out;
  double sup = 0.0;
  for (int i = 0; i < images.cols(); ++i) {
    bool interior = true;
    for (int c = 0; c < d && interior; ++c) {
      if (hi[c] - lo[c] <= span_tol) continue;
      if (!(images(c, i) > lo[c] && images(c, i) < hi[c])) interior = false;
    }
    if (!interior) {
      ++out.excluded;
      continue;
    }
    ++out.tested;
    sup = std::max(sup, nn.distance(images.col(i)));
  }
  if (out.tested == 0)
    raise(errc::empty_after_exclusion, "no image points survive the edge exclusion");
  out.sup_dist = sup;
  return out;
}

} // namespace ifstk
