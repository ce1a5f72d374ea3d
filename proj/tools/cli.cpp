#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "ifstk/beurling.hpp"
#include "ifstk/config.hpp"
#include "ifstk/error.hpp"
#include "ifstk/fourier.hpp"
#include "ifstk/frames.hpp"
#include "ifstk/ifs.hpp"
#include "ifstk/report.hpp"
#include "ifstk/spectra.hpp"
#include "ifstk/verify.hpp"

namespace ifstk::cli {

namespace {

Vec parse_point(const std::string& text, int expect_dim) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<double> vals;
  double v = 0.0;
  while (in >> v) vals.push_back(v);
  if (vals.empty() || (expect_dim > 0 && static_cast<int>(vals.size()) != expect_dim))
    raise(errc::invalid_argument, "point '" + text + "' does not have " +
                                      std::to_string(expect_dim) + " coordinates");
  Vec p(static_cast<int>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) p[static_cast<int>(i)] = vals[i];
  return p;
}

std::pair<double, double> parse_band(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    raise(errc::invalid_argument, "band must be lo:hi, got '" + text + "'");
  try {
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    raise(errc::invalid_argument, "band must be lo:hi, got '" + text + "'");
  }
}

// Writes to --out when given, standard output otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) raise(errc::io_error, "cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

struct DensityArgs {
  std::string config_path;
  std::string points_path;
  std::string out_path;
  int level = 12;
  std::optional<double> r;
  std::string window = "cube";
  double h_min = 0.0, h_max = 0.0;
  int h_count = 48;
  double fit_fraction = 0.6;
};

int run_density(const DensityArgs& a, std::ostream& out) {
  PointSet set;
  std::optional<ValidatedIfs> ifs;
  std::string source_desc;
  if (!a.points_path.empty()) {
    set = make_explicit_set(read_points_csv(a.points_path), a.points_path);
    source_desc = "points=" + a.points_path;
  } else if (!a.config_path.empty()) {
    const FileConfig cfg = load_config(a.config_path);
    ifs = ifs_from(cfg);
    set = enumerate_truncation(spectrum_from(cfg), a.level);
    source_desc = "config=" + a.config_path + " level=" + std::to_string(a.level);
  } else {
    raise(errc::invalid_argument, "density needs --points or --config");
  }

  DensityConfig dcfg;
  dcfg.window = (a.window == "ball") ? Window::ball : Window::cube;
  dcfg.h_min = a.h_min;
  dcfg.h_max = a.h_max;
  dcfg.h_count = a.h_count;
  dcfg.fit_fraction = a.fit_fraction;

  DensityReport report = density_profile(set, a.r.value_or(1.0), dcfg);
  double used_r = a.r.value_or(1.0);
  if (!a.r.has_value() && report.fit_valid) {
    used_r = report.fitted_dim;
    for (DensityRow& row : report.rows)
      row.d_r = double(row.max_count) / std::pow(row.h, used_r);
    report.r = used_r;
  }

  Sink sink(a.out_path, out);
  std::ostream& os = sink.stream();
  os << run_banner("density", source_desc, 0) << '\n';
  if (report.fit_valid) {
    os << "# fitted_dim=" << format_g17(report.fitted_dim)
       << " fit_stderr=" << format_g17(report.fit_stderr) << '\n';
    double peak = 0.0;
    for (int i = report.fit_first; i >= 0 && i <= report.fit_last; ++i)
      peak = std::max(peak, double(report.rows[std::size_t(i)].max_count) /
                                std::pow(report.rows[std::size_t(i)].h, report.fitted_dim));
    os << "# D_at_fitted_dim=" << format_g17(peak) << '\n';
  }
  os << "# r=" << format_g17(used_r) << '\n';
  if (ifs && ifs->similarity.is_similarity) {
    const double s = ifs->similarity.hausdorff_dim;
    double peak = 0.0;
    for (int i = report.fit_first; i >= 0 && i <= report.fit_last; ++i)
      peak = std::max(peak, double(report.rows[std::size_t(i)].max_count) /
                                std::pow(report.rows[std::size_t(i)].h, s));
    os << "# hausdorff_dim=" << format_g17(s) << " D_at_hausdorff_dim=" << format_g17(peak)
       << '\n';
  }
  write_density_csv(os, report);
  return 0;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"affine IFS measures: Fourier transforms, spectra, densities, frame bounds"};
  app.name("ifstk");
  app.require_subcommand(1);

  // ifs
  CLI::App* ifs_cmd = app.add_subcommand("ifs", "inspect an IFS config");
  ifs_cmd->require_subcommand(1);
  std::string ifs_config;
  CLI::App* ifs_info = ifs_cmd->add_subcommand("info", "validate and summarize");
  ifs_info->add_option("--config", ifs_config, "IFS config file")->required();
  CLI::App* ifs_atoms = ifs_cmd->add_subcommand("atoms", "export the level-n atomic measure");
  int atoms_level = 4;
  std::string atoms_out;
  ifs_atoms->add_option("--config", ifs_config, "IFS config file")->required();
  ifs_atoms->add_option("--level", atoms_level, "approximation level n")
      ->capture_default_str();
  ifs_atoms->add_option("--out", atoms_out, "output CSV (default: stdout)");

  // ft
  CLI::App* ft_cmd = app.add_subcommand("ft", "Fourier transform of the invariant measure");
  CLI::App* ft_eval = ft_cmd->add_subcommand("eval", "evaluate at points");
  ft_cmd->require_subcommand(1);
  std::string ft_config, ft_out, ft_grid;
  std::vector<std::string> ft_points;
  double ft_eps = 1e-10;
  int ft_max_terms = 200;
  ft_eval->add_option("--config", ft_config, "IFS config file")->required();
  ft_eval->add_option("--x", ft_points, "evaluation point (repeatable; comma-separated coords)");
  ft_eval->add_option("--grid", ft_grid, "1-D grid a:b:n");
  ft_eval->add_option("--eps", ft_eps, "certified absolute error")->capture_default_str();
  ft_eval->add_option("--max-terms", ft_max_terms, "product length cap")->capture_default_str();
  ft_eval->add_option("--out", ft_out, "output CSV (default: stdout)");

  // spectrum
  CLI::App* spec_cmd = app.add_subcommand("spectrum", "candidate spectrum generation");
  spec_cmd->require_subcommand(1);
  CLI::App* spec_gen = spec_cmd->add_subcommand("gen", "enumerate a digit-expansion truncation");
  std::string spec_config, spec_out;
  int spec_level = 8;
  std::optional<double> spec_scale;
  double spec_jitter = 0.0;
  std::uint64_t spec_seed = 0;
  spec_gen->add_option("--config", spec_config, "config with spectrum_digits")->required();
  spec_gen->add_option("--level", spec_level, "word length")->capture_default_str();
  spec_gen->add_option("--scale", spec_scale, "override spectrum_scale");
  spec_gen->add_option("--jitter", spec_jitter, "uniform sup-norm displacement bound")
      ->capture_default_str();
  spec_gen->add_option("--seed", spec_seed, "jitter seed")->capture_default_str();
  spec_gen->add_option("--out", spec_out, "output CSV (default: stdout)");

  // density
  CLI::App* density_cmd = app.add_subcommand("density", "Beurling density profile and dimension");
  DensityArgs da;
  density_cmd->add_option("--config", da.config_path, "config with spectrum_digits");
  density_cmd->add_option("--points", da.points_path, "explicit point CSV");
  density_cmd->add_option("--level", da.level, "truncation level for --config")
      ->capture_default_str();
  double da_r = 0.0;
  CLI::Option* r_opt = density_cmd->add_option("--r", da_r, "density exponent (default: fitted dim)");
  density_cmd->add_option("--window", da.window, "cube|ball")->capture_default_str();
  density_cmd->add_option("--h-min", da.h_min, "smallest window radius (0 = auto)");
  density_cmd->add_option("--h-max", da.h_max, "largest window radius (0 = auto extent/4)");
  density_cmd->add_option("--h-count", da.h_count, "grid size")->capture_default_str();
  density_cmd->add_option("--fit-fraction", da.fit_fraction, "central log-range used for the fit")
      ->capture_default_str();
  density_cmd->add_option("--out", da.out_path, "profile CSV (default: stdout)");

  // frames
  CLI::App* frames_cmd = app.add_subcommand("frames", "Bessel/frame diagnostics");
  frames_cmd->require_subcommand(1);
  std::string fr_config, fr_out, fr_band;
  int fr_level = 6, fr_spectrum_level = 6, fr_power = 1, fr_count = 16;
  std::int64_t fr_a = 1;
  std::vector<std::string> fr_xs;
  CLI::App* fr_bounds = frames_cmd->add_subcommand("bounds", "frame bounds on the level-n measure");
  fr_bounds->add_option("--config", fr_config, "config with spectrum_digits")->required();
  fr_bounds->add_option("--level", fr_level, "measure level")->capture_default_str();
  fr_bounds->add_option("--spectrum-level", fr_spectrum_level, "spectrum truncation level")
      ->capture_default_str();
  fr_bounds->add_option("--out", fr_out, "output CSV (default: stdout)");
  CLI::App* fr_over = frames_cmd->add_subcommand("oversample", "normalized oversampled sums");
  fr_over->add_option("--config", fr_config, "config with spectrum_digits")->required();
  fr_over->add_option("--spectrum-level", fr_spectrum_level, "spectrum truncation level")
      ->capture_default_str();
  fr_over->add_option("--power", fr_power, "oversampling power n")->capture_default_str();
  fr_over->add_option("--x", fr_xs, "grid point (repeatable)")->required();
  fr_over->add_option("--band", fr_band, "declared contract band lo:hi (exit 2 on violation)");
  fr_over->add_option("--out", fr_out, "output CSV (default: stdout)");
  CLI::App* fr_probe = frames_cmd->add_subcommand("probe", "Bessel divergence probe on {R^n a}");
  fr_probe->add_option("--config", fr_config, "1-D integer-family IFS config")->required();
  fr_probe->add_option("--a", fr_a, "nonzero integer a")->capture_default_str();
  fr_probe->add_option("--count", fr_count, "number of terms K")->capture_default_str();
  fr_probe->add_option("--out", fr_out, "output CSV (default: stdout)");

  // verify
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the acceptance experiments");
  CLI::App* verify_all = verify_cmd->add_subcommand("all", "every criterion");
  verify_cmd->require_subcommand(1);
  std::string budget = "desk";
  verify_all->add_option("--budget", budget, "experiment budget (desk)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ifs_info->parsed()) {
      const FileConfig cfg = load_config(ifs_config);
      const ValidatedIfs v = ifs_from(cfg);
      out << run_banner("ifs info", "config=" + ifs_config, 0) << '\n';
      out << "dim=" << v.spec.dim << '\n';
      out << "N=" << v.spec.digit_count() << '\n';
      out << "contains_zero=" << (v.spec.contains_zero ? "yes" : "no") << '\n';
      out << "expanding=yes\n";
      if (v.similarity.is_similarity) {
        out << "similarity=yes\n";
        out << "rho=" << format_g17(v.similarity.rho) << '\n';
        out << "hausdorff_dim=" << format_g17(v.similarity.hausdorff_dim)
            << " (log_rho N; formula value, open set condition assumed)\n";
      } else {
        out << "similarity=no\n";
      }
      out << "support_radius=" << format_g17(support_radius(v.spec)) << '\n';
      for (const std::string& w : v.warnings) out << "warning: " << w << '\n';
      return 0;
    }

    if (ifs_atoms->parsed()) {
      const FileConfig cfg = load_config(ifs_config);
      const ValidatedIfs v = ifs_from(cfg);
      const AtomicMeasure mu = attractor_level(v.spec, atoms_level);
      Sink sink(atoms_out, out);
      sink.stream() << run_banner("ifs atoms",
                                  "config=" + ifs_config + " level=" + std::to_string(atoms_level), 0)
                    << '\n';
      if (mu.collision_detected) sink.stream() << "# collision_detected=yes\n";
      write_atoms_csv(sink.stream(), mu);
      return 0;
    }

    if (ft_eval->parsed()) {
      const FileConfig cfg = load_config(ft_config);
      const ValidatedIfs v = ifs_from(cfg);
      FtConfig fcfg{ft_eps, ft_max_terms};
      std::vector<Vec> xs;
      for (const std::string& s : ft_points) xs.push_back(parse_point(s, v.spec.dim));
      if (!ft_grid.empty()) {
        if (v.spec.dim != 1) raise(errc::invalid_argument, "--grid is 1-D only");
        std::string g = ft_grid;
        std::replace(g.begin(), g.end(), ':', ' ');
        std::istringstream in(g);
        double a = 0.0, b = 0.0;
        int n = 0;
        if (!(in >> a >> b >> n) || n < 1)
          raise(errc::invalid_argument, "--grid must be a:b:n with n >= 1");
        for (int i = 0; i < n; ++i)
          xs.push_back(vec1(n == 1 ? a : a + (b - a) * double(i) / double(n - 1)));
      }
      if (xs.empty()) raise(errc::invalid_argument, "ft eval needs --x or --grid");
      std::vector<FtRow> rows;
      rows.reserve(xs.size());
      for (const Vec& x : xs) rows.push_back({x, ft(v, x, fcfg)});
      Sink sink(ft_out, out);
      sink.stream() << run_banner("ft eval",
                                  "config=" + ft_config + " eps=" + format_g17(ft_eps), 0)
                    << '\n';
      write_ft_csv(sink.stream(), rows);
      return 0;
    }

    if (spec_gen->parsed()) {
      const FileConfig cfg = load_config(spec_config);
      SpectrumSpec ss = spectrum_from(cfg);
      if (spec_scale.has_value()) ss.scale = *spec_scale;
      PointSet set = enumerate_truncation(ss, spec_level);
      if (spec_jitter > 0.0) set = jitter(set, spec_jitter, spec_seed);
      Sink sink(spec_out, out);
      sink.stream() << run_banner("spectrum gen",
                                  "config=" + spec_config + " level=" + std::to_string(spec_level) +
                                      " scale=" + format_g17(ss.scale) + " jitter=" +
                                      format_g17(spec_jitter),
                                  spec_seed)
                    << '\n';
      sink.stream() << "# points=" << set.size() << '\n';
      if (spec_jitter > 0.0)
        sink.stream() << "# max_displacement=" << format_g17(set.max_displacement) << '\n';
      write_points_csv(sink.stream(), set);
      return 0;
    }

    if (density_cmd->parsed()) {
      if (r_opt->count() > 0) da.r = da_r;
      return run_density(da, out);
    }

    if (fr_bounds->parsed()) {
      const FileConfig cfg = load_config(fr_config);
      const ValidatedIfs v = ifs_from(cfg);
      const PointSet spectrum = enumerate_truncation(spectrum_from(cfg), fr_spectrum_level);
      const FrameReport report = frame_bounds_finite(v.spec, fr_level, spectrum);
      Sink sink(fr_out, out);
      sink.stream() << run_banner("frames bounds",
                                  "config=" + fr_config + " level=" + std::to_string(fr_level) +
                                      " spectrum_level=" + std::to_string(fr_spectrum_level),
                                  0)
                    << '\n';
      sink.stream() << "# lower=" << format_g17(report.lower)
                    << " upper=" << format_g17(report.upper) << '\n';
      write_frame_csv(sink.stream(), report);
      return 0;
    }

    if (fr_over->parsed()) {
      const FileConfig cfg = load_config(fr_config);
      const ValidatedIfs v = ifs_from(cfg);
      const PointSet spectrum = enumerate_truncation(spectrum_from(cfg), fr_spectrum_level);
      std::vector<Vec> xs;
      for (const std::string& s : fr_xs) xs.push_back(parse_point(s, v.spec.dim));
      const std::vector<double> values = oversample_check(v, spectrum, fr_power, xs);
      Sink sink(fr_out, out);
      std::ostream& os = sink.stream();
      os << run_banner("frames oversample",
                       "config=" + fr_config + " spectrum_level=" +
                           std::to_string(fr_spectrum_level) + " power=" + std::to_string(fr_power),
                       0)
         << '\n';
      bool violated = false;
      if (!fr_band.empty()) {
        const auto [lo, hi] = parse_band(fr_band);
        for (double value : values)
          if (!(value >= lo && value <= hi)) violated = true;
        os << "# band=[" << format_g17(lo) << ", " << format_g17(hi) << "] violated="
           << (violated ? "yes" : "no") << '\n';
      }
      write_oversample_csv(os, xs, values);
      return violated ? 2 : 0;
    }

    if (fr_probe->parsed()) {
      const FileConfig cfg = load_config(fr_config);
      const ValidatedIfs v = ifs_from(cfg);
      const ProbeResult probe = bessel_divergence_probe(v, fr_a, fr_count);
      double spread = 0.0;
      for (double t : probe.terms) spread = std::max(spread, std::abs(t - probe.terms[0]));
      Sink sink(fr_out, out);
      std::ostream& os = sink.stream();
      os << run_banner("frames probe",
                       "config=" + fr_config + " a=" + std::to_string(fr_a) + " K=" +
                           std::to_string(fr_count),
                       0)
         << '\n';
      os << "# term0=" << format_g17(probe.terms[0]) << " spread=" << format_g17(spread)
         << " contract=3e-10\n";
      write_probe_csv(os, probe);
      return spread <= 3e-10 ? 0 : 2;
    }

    if (verify_all->parsed()) {
      if (budget != "desk")
        raise(errc::invalid_argument, "unknown budget '" + budget + "' (supported: desk)");
      out << run_banner("verify all", "budget=" + budget, 0) << '\n';
      const std::vector<CriterionResult> results = run_acceptance();
      int passed = 0;
      for (const CriterionResult& r : results) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << 'C' << r.id << ' ' << r.name << ": "
            << r.detail << '\n';
        if (r.pass) ++passed;
      }
      out << "# " << passed << '/' << results.size() << " criteria passed\n";
      return passed == static_cast<int>(results.size()) ? 0 : 2;
    }
  } catch (const error& e) {
    err << e.what() << '\n';
    return e.code() == errc::non_hermitian_drift ? 2 : 1;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 1;
  }
  err << "no subcommand executed\n";
  return 1;
}

} // namespace ifstk::cli
