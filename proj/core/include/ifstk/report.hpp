#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ifstk/beurling.hpp"
#include "ifstk/common.hpp"
#include "ifstk/fourier.hpp"
#include "ifstk/frames.hpp"
#include "ifstk/ifs.hpp"
#include "ifstk/spectra.hpp"

namespace ifstk {

// All CSV output renders doubles with 17 significant digits, so files are
// byte-stable across runs and round-trip losslessly.
std::string format_g17(double v);

// One-line run metadata echoed at the top of structured-text reports.
// Deliberately free of timestamps: identical config + seed must give
// byte-identical output.
std::string run_banner(const std::string& command, const std::string& config_desc,
                       std::uint64_t seed);

struct FtRow {
  Vec x;
  FtValue value;
};

void write_atoms_csv(std::ostream& out, const AtomicMeasure& mu);
void write_points_csv(std::ostream& out, const PointSet& set);
void write_ft_csv(std::ostream& out, const std::vector<FtRow>& rows);
void write_density_csv(std::ostream& out, const DensityReport& report);
void write_frame_csv(std::ostream& out, const FrameReport& report);
void write_oversample_csv(std::ostream& out, const std::vector<Vec>& xs,
                          const std::vector<double>& values);
void write_probe_csv(std::ostream& out, const ProbeResult& probe);

// Point list ingestion: one point per row, comma separated, optional header.
Mat read_points_csv(const std::string& path);

} // namespace ifstk
