#pragma once

#include <string>

#include "ifstk/common.hpp"
#include "ifstk/ifs.hpp"
#include "ifstk/spectra.hpp"

namespace ifstk {

// Key-value config describing an IFS and optionally a candidate spectrum.
//
//   dim             = 1            (optional, default 1)
//   matrix          = 4            (required; dim*dim row-major entries)
//   digits          = 0, 2         (required; multiple of dim entries)
//   spectrum_base   = 4            (optional; default transpose(matrix))
//   spectrum_digits = 0, 1         (enables spectrum generation)
//   spectrum_scale  = 1            (optional)
//
// '#' starts a comment. Entries are decimals or exact rationals "p/q",
// separated by commas, semicolons or whitespace. Unknown and duplicate keys
// are hard errors.
struct FileConfig {
  int dim = 1;
  Mat matrix;
  Mat digits;
  bool has_spectrum = false;
  Mat spectrum_base;
  Mat spectrum_digits;
  double spectrum_scale = 1.0;
};

FileConfig parse_config(const std::string& text);
FileConfig load_config(const std::string& path);

ValidatedIfs ifs_from(const FileConfig& cfg);
SpectrumSpec spectrum_from(const FileConfig& cfg);

} // namespace ifstk
