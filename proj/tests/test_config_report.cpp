#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ifstk/config.hpp"
#include "ifstk/error.hpp"
#include "ifstk/report.hpp"
#include "test_util.hpp"

using namespace ifstk;

TEST_SUITE_BEGIN("config_report");

TEST_CASE("minimal config parses") {
  const FileConfig cfg = parse_config("matrix = 4\ndigits = 0, 2\n");
  CHECK(cfg.dim == 1);
  CHECK(cfg.matrix(0, 0) == 4.0);
  REQUIRE(cfg.digits.cols() == 2);
  CHECK(cfg.digits(0, 1) == 2.0);
  CHECK_FALSE(cfg.has_spectrum);
  CHECK(cfg.spectrum_base(0, 0) == 4.0); // defaults to transpose(matrix)

  const ValidatedIfs v = ifs_from(cfg);
  CHECK(v.similarity.rho == doctest::Approx(4.0));
}

TEST_CASE("rational entries are parsed exactly") {
  const FileConfig cfg = parse_config("matrix = 3\ndigits = 0, 1/3\n");
  CHECK(cfg.digits(0, 1) == 1.0 / 3.0);
  const FileConfig neg = parse_config("matrix = 3\ndigits = 0, -2/7\n");
  CHECK(neg.digits(0, 1) == -2.0 / 7.0);
}

TEST_CASE("comments, blank lines and spectrum keys") {
  const FileConfig cfg = parse_config(
      "# a comment\n"
      "\n"
      "dim = 1\n"
      "matrix = 4 # inline comment\n"
      "digits = 0, 2\n"
      "spectrum_digits = 0, 1\n"
      "spectrum_scale = 5\n");
  CHECK(cfg.has_spectrum);
  CHECK(cfg.spectrum_scale == 5.0);
  const SpectrumSpec s = spectrum_from(cfg);
  CHECK(s.scale == 5.0);
  CHECK(s.digits.cols() == 2);
}

TEST_CASE("schema violations are hard errors") {
  auto code_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const error& e) {
      return e.code();
    }
    return errc::invalid_argument;
  };
  CHECK(code_of("matrix = 4\ndigits = 0,2\nmatrix = 3\n") == errc::schema_error); // duplicate
  CHECK(code_of("matrix = 4\ndigits = 0,2\ncolor = red\n") == errc::schema_error); // unknown
  CHECK(code_of("digits = 0,2\n") == errc::schema_error);                          // missing
  CHECK(code_of("matrix = 4\ndigits = 0,2\nthis is wrong\n") == errc::parse_error);
  CHECK(code_of("matrix = 4\ndigits = 0,2\ndim = 1.5\n") == errc::schema_error);
  CHECK(code_of("matrix = 4\ndigits = 0, banana\n") == errc::parse_error);
  CHECK(code_of("matrix = 4\ndigits = 0,2\nspectrum_scale = 5\n") == errc::schema_error);

  try {
    parse_config("matrix = 4\ndigits = 0,2\nthis is wrong\n");
  } catch (const error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("2-D config with rationals") {
  const FileConfig cfg = parse_config(
      "dim = 2\n"
      "matrix = 2, 0, 0, 2\n"
      "digits = 0, 0; 1/2, 0; 0, 1/2\n");
  CHECK(cfg.matrix.rows() == 2);
  REQUIRE(cfg.digits.cols() == 3);
  CHECK(cfg.digits(0, 1) == 0.5);
  CHECK(cfg.digits(1, 2) == 0.5);

  // entry count not a multiple of dim
  CHECK_THROWS_AS(parse_config("dim = 2\nmatrix = 2,0,0,2\ndigits = 0, 0, 1\n"), error);
}

TEST_CASE("g17 formatting round-trips") {
  for (int i = 0; i < 100; ++i) {
    const double x = (testutil::urand(61, i, -1, 1)) * std::pow(10.0, int(i % 30) - 15);
    const std::string s = format_g17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
}

TEST_CASE("points CSV round-trips through write and read") {
  const PointSet set = enumerate_truncation(testutil::jp_spectrum(), 4);
  const std::string path = "ifstk_test_points.csv";
  {
    std::ofstream out(path, std::ios::binary);
    out << run_banner("spectrum gen", "test", 0) << '\n';
    out << "# points=" << set.size() << '\n';
    write_points_csv(out, set);
  }
  // banner + comment lines + header must all be tolerated on ingestion
  const Mat back = read_points_csv(path);
  REQUIRE(back.cols() == set.size());
  for (int i = 0; i < set.size(); ++i) CHECK(back(0, i) == set.points(0, i));
  std::remove(path.c_str());
}

TEST_CASE("CSV headers are stable") {
  const AtomicMeasure mu = attractor_level(testutil::jp().spec, 2);
  std::ostringstream atoms;
  write_atoms_csv(atoms, mu);
  CHECK(atoms.str().rfind("index,x0,weight,first_digit\n", 0) == 0);

  DensityReport dr;
  dr.rows.push_back({1.0, 3, testutil::v1(0.5), 3.0});
  std::ostringstream density;
  write_density_csv(density, dr);
  CHECK(density.str().rfind("h,max_count,center,D_r\n", 0) == 0);

  FrameReport fr;
  std::ostringstream frames;
  write_frame_csv(frames, fr);
  CHECK(frames.str().rfind("lower,upper,level,spectrum_size,method,hermitian_drift\n", 0) == 0);
}

TEST_CASE("run banner is deterministic and timestamp-free") {
  const std::string a = run_banner("density", "config=jp.cfg", 0);
  const std::string b = run_banner("density", "config=jp.cfg", 0);
  CHECK(a == b);
  CHECK(a.rfind("# ifstk", 0) == 0);
  CHECK(a.find("seed=0") != std::string::npos);
}

TEST_SUITE_END();
