// Flat-file output: CSV (header, comma separated, 17 significant digits, LF) and a small SVG
// rendering of region scans.
#ifndef MUBW_CSV_HPP
#define MUBW_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mubw/batch.hpp"

namespace mubw::csv {

/// %.17g, which round-trips every double.
std::string format_double(double v);
std::vector<std::string> split(std::string_view line, char sep = ',');

/// Parses a comma separated list of decimals; throws std::invalid_argument on junk.
std::vector<double> parse_numbers(std::string_view text);

inline constexpr std::string_view kSampleHeader = "p1,p2,p3,p4,p5,p6,p7,p8,verdict,witness,value";

std::string sample_row(const SampleRecord& rec);
SampleRecord parse_sample_row(std::string_view line);
VerdictKind parse_verdict(std::string_view text);

inline constexpr std::string_view kRegionHeader =
    "i,j,x,y,feasible,n_samples,n_npt,n_detected,n_separable,n_undecided";

std::string region_row(const RegionCell& cell);
RegionCell parse_region_row(std::string_view line);

void write_region(std::ostream& out, const RegionScan& scan);
void write_region_svg(std::ostream& out, const RegionScan& scan);

}  // namespace mubw::csv

#endif  // MUBW_CSV_HPP
