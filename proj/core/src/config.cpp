#include "ifstk/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "ifstk/error.hpp"

namespace ifstk {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_number(const std::string& tok, int line_no) {
  const auto slash = tok.find('/');
  auto to_double = [line_no](const std::string& t) {
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      raise(errc::parse_error,
            "line " + std::to_string(line_no) + ": not a number: '" + t + "'");
    }
  };
  if (slash == std::string::npos) return to_double(tok);
  const std::string num = trim(tok.substr(0, slash));
  const std::string den = trim(tok.substr(slash + 1));
  const double d = to_double(den);
  if (d == 0.0)
    raise(errc::parse_error, "line " + std::to_string(line_no) + ": zero denominator");
  return to_double(num) / d;
}

std::vector<double> parse_numbers(const std::string& value, int line_no) {
  std::string normalized = value;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::replace(normalized.begin(), normalized.end(), ';', ' ');
  std::istringstream in(normalized);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_number(tok, line_no));
  return out;
}

Mat matrix_from(const std::vector<double>& vals, int dim, const std::string& key) {
  if (static_cast<int>(vals.size()) != dim * dim)
    raise(errc::schema_error,
          key + ": expected " + std::to_string(dim * dim) + " entries, got " +
              std::to_string(vals.size()));
  Mat m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = vals[static_cast<std::size_t>(r * dim + c)];
  return m;
}

Mat points_from(const std::vector<double>& vals, int dim, const std::string& key) {
  if (vals.empty() || static_cast<int>(vals.size()) % dim != 0)
    raise(errc::schema_error,
          key + ": entry count " + std::to_string(vals.size()) +
              " is not a positive multiple of dim " + std::to_string(dim));
  const int n = static_cast<int>(vals.size()) / dim;
  Mat m(dim, n);
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < dim; ++c) m(c, j) = vals[static_cast<std::size_t>(j * dim + c)];
  return m;
}

} // namespace

FileConfig parse_config(const std::string& text) {
  static const std::vector<std::string> known = {
      "dim", "matrix", "digits", "spectrum_base", "spectrum_digits", "spectrum_scale"};

  std::map<std::string, std::pair<std::string, int>> entries; // key -> (value, line)
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      raise(errc::parse_error, "line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end())
      raise(errc::schema_error, "unknown key '" + key + "' (line " + std::to_string(line_no) + ")");
    if (entries.count(key))
      raise(errc::schema_error, "duplicate key '" + key + "' (line " + std::to_string(line_no) + ")");
    if (value.empty())
      raise(errc::parse_error, "line " + std::to_string(line_no) + ": empty value");
    entries[key] = {value, line_no};
  }

  FileConfig cfg;
  if (auto it = entries.find("dim"); it != entries.end()) {
    const double v = parse_number(it->second.first, it->second.second);
    if (v < 1.0 || v != std::floor(v))
      raise(errc::schema_error, "dim: must be a positive integer");
    cfg.dim = static_cast<int>(v);
  }
  if (!entries.count("matrix")) raise(errc::schema_error, "missing required key 'matrix'");
  if (!entries.count("digits")) raise(errc::schema_error, "missing required key 'digits'");

  cfg.matrix = matrix_from(
      parse_numbers(entries["matrix"].first, entries["matrix"].second), cfg.dim, "matrix");
  cfg.digits = points_from(
      parse_numbers(entries["digits"].first, entries["digits"].second), cfg.dim, "digits");

  cfg.spectrum_base = cfg.matrix.transpose();
  if (auto it = entries.find("spectrum_base"); it != entries.end())
    cfg.spectrum_base =
        matrix_from(parse_numbers(it->second.first, it->second.second), cfg.dim, "spectrum_base");
  if (auto it = entries.find("spectrum_scale"); it != entries.end())
    cfg.spectrum_scale = parse_number(it->second.first, it->second.second);
  if (auto it = entries.find("spectrum_digits"); it != entries.end()) {
    cfg.spectrum_digits =
        points_from(parse_numbers(it->second.first, it->second.second), cfg.dim, "spectrum_digits");
    cfg.has_spectrum = true;
  } else if (entries.count("spectrum_base") || entries.count("spectrum_scale")) {
    raise(errc::schema_error, "spectrum_base/spectrum_scale need spectrum_digits");
  }
  return cfg;
}

FileConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_error, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ValidatedIfs ifs_from(const FileConfig& cfg) { return validate_ifs(cfg.matrix, cfg.digits); }

SpectrumSpec spectrum_from(const FileConfig& cfg) {
  if (!cfg.has_spectrum)
    raise(errc::schema_error, "config has no spectrum_digits");
  SpectrumSpec spec;
  spec.kind = SpectrumSpec::Kind::digit_lambda;
  spec.base = cfg.spectrum_base;
  spec.digits = cfg.spectrum_digits;
  spec.scale = cfg.spectrum_scale;
  return spec;
}

} // namespace ifstk
