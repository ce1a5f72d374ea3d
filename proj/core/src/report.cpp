#include "ifstk/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ifstk/error.hpp"

namespace ifstk {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string run_banner(const std::string& command, const std::string& config_desc,
                       std::uint64_t seed) {
  std::ostringstream out;
  out << "# ifstk 0.1.0 | " << command << " | " << config_desc << " | seed=" << seed;
  return out.str();
}

void write_atoms_csv(std::ostream& out, const AtomicMeasure& mu) {
  const int d = static_cast<int>(mu.atoms.rows());
  out << "index";
  for (int c = 0; c < d; ++c) out << ",x" << c;
  out << ",weight,first_digit\n";
  for (int j = 0; j < mu.count(); ++j) {
    out << j;
    for (int c = 0; c < d; ++c) out << ',' << format_g17(mu.atoms(c, j));
    out << ',' << format_g17(mu.weights[j]) << ','
        << mu.first_digit[static_cast<std::size_t>(j)] << '\n';
  }
}

void write_points_csv(std::ostream& out, const PointSet& set) {
  const int d = set.dim();
  for (int c = 0; c < d; ++c) out << (c ? "," : "") << 'x' << c;
  out << '\n';
  for (int j = 0; j < set.size(); ++j) {
    for (int c = 0; c < d; ++c) out << (c ? "," : "") << format_g17(set.points(c, j));
    out << '\n';
  }
}

void write_ft_csv(std::ostream& out, const std::vector<FtRow>& rows) {
  const int d = rows.empty() ? 1 : static_cast<int>(rows.front().x.size());
  for (int c = 0; c < d; ++c) out << 'x' << c << ',';
  out << "re,im,abs,terms_used,tail_bound\n";
  for (const FtRow& row : rows) {
    for (int c = 0; c < d; ++c) out << format_g17(row.x[c]) << ',';
    out << format_g17(row.value.value.real()) << ',' << format_g17(row.value.value.imag())
        << ',' << format_g17(std::abs(row.value.value)) << ',' << row.value.terms_used << ','
        << format_g17(row.value.tail_bound) << '\n';
  }
}

namespace {

std::string center_field(const Vec& center) {
  if (center.size() == 0) return "";
  std::string s = format_g17(center[0]);
  for (int c = 1; c < center.size(); ++c) s += ';' + format_g17(center[c]);
  return s;
}

} // namespace

void write_density_csv(std::ostream& out, const DensityReport& report) {
  out << "h,max_count,center,D_r\n";
  for (const DensityRow& row : report.rows)
    out << format_g17(row.h) << ',' << row.max_count << ',' << center_field(row.center)
        << ',' << format_g17(row.d_r) << '\n';
}

void write_frame_csv(std::ostream& out, const FrameReport& report) {
  out << "lower,upper,level,spectrum_size,method,hermitian_drift\n";
  out << format_g17(report.lower) << ',' << format_g17(report.upper) << ',' << report.level
      << ',' << report.spectrum_size << ','
      << (report.method == FrameReport::Method::eigen ? "eigen" : "bessel_grid") << ','
      << format_g17(report.hermitian_drift) << '\n';
}

void write_oversample_csv(std::ostream& out, const std::vector<Vec>& xs,
                          const std::vector<double>& values) {
  const int d = xs.empty() ? 1 : static_cast<int>(xs.front().size());
  for (int c = 0; c < d; ++c) out << 'x' << c << ',';
  out << "value\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int c = 0; c < d; ++c) out << format_g17(xs[i][c]) << ',';
    out << format_g17(values[i]) << '\n';
  }
}

void write_probe_csv(std::ostream& out, const ProbeResult& probe) {
  out << "n,term,partial_sum\n";
  for (std::size_t n = 0; n < probe.terms.size(); ++n)
    out << n << ',' << format_g17(probe.terms[n]) << ',' << format_g17(probe.partial_sums[n])
        << '\n';
}

Mat read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open points file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  bool header_allowed = true; // one non-numeric line before the data
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    bool numeric = true;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      raise(errc::parse_error, "line " + std::to_string(line_no) + ": non-numeric field");
    }
    header_allowed = false;
    if (!rows.empty() && row.size() != rows.front().size())
      raise(errc::parse_error, "line " + std::to_string(line_no) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) raise(errc::empty_set, "no points in '" + path + "'");
  Mat pts(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t c = 0; c < rows[j].size(); ++c)
      pts(static_cast<int>(c), static_cast<int>(j)) = rows[j][c];
  return pts;
}

} // namespace ifstk
