#include "mubw/csv.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace mubw::csv {

namespace {

double to_double(std::string_view s) {
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    throw std::invalid_argument("not a number: '" + buf + "'");
  }
  return v;
}

std::uint64_t to_count(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a count: '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  for (const auto& field : split(trim(text))) out.push_back(to_double(trim(field)));
  return out;
}

VerdictKind parse_verdict(std::string_view text) {
  for (auto kind : {VerdictKind::NPT, VerdictKind::BoundDetected, VerdictKind::SeparableCertified,
                    VerdictKind::PptUndecided}) {
    if (to_string(kind) == text) return kind;
  }
  throw std::invalid_argument("unknown verdict '" + std::string(text) + "'");
}

std::string sample_row(const SampleRecord& rec) {
  std::string line;
  for (int i = 0; i < 8; ++i) line += format_double(rec.p(i)) + ",";
  line += to_string(rec.kind) + ",";
  if (rec.best) line += rec.best->id.str() + "," + format_double(rec.best->value);
  else line += ",";
  return line;
}

SampleRecord parse_sample_row(std::string_view line) {
  const auto f = split(trim(line));
  if (f.size() != 11) throw std::invalid_argument("sample row needs 11 fields");
  SampleRecord rec;
  for (int i = 0; i < 8; ++i) rec.p(i) = to_double(f[i]);
  rec.kind = parse_verdict(f[8]);
  if (!f[9].empty()) rec.best = Detection{NonlinearFamilyId::parse(f[9]), to_double(f[10])};
  return rec;
}

std::string region_row(const RegionCell& c) {
  std::string line = std::to_string(c.i) + "," + std::to_string(c.j) + "," + format_double(c.x) + "," +
                     format_double(c.y) + "," + (c.feasible ? "1" : "0");
  for (auto n : {c.n_samples, c.n_npt, c.n_detected, c.n_separable, c.n_undecided}) line += "," + std::to_string(n);
  return line;
}

RegionCell parse_region_row(std::string_view line) {
  const auto f = split(trim(line));
  if (f.size() != 10) throw std::invalid_argument("region row needs 10 fields");
  RegionCell c;
  c.i = static_cast<int>(to_count(f[0]));
  c.j = static_cast<int>(to_count(f[1]));
  c.x = to_double(f[2]);
  c.y = to_double(f[3]);
  c.feasible = to_count(f[4]) != 0;
  c.n_samples = to_count(f[5]);
  c.n_npt = to_count(f[6]);
  c.n_detected = to_count(f[7]);
  c.n_separable = to_count(f[8]);
  c.n_undecided = to_count(f[9]);
  return c;
}

void write_region(std::ostream& out, const RegionScan& scan) {
  out << kRegionHeader << '\n';
  for (const auto& cell : scan.cells) out << region_row(cell) << '\n';
}

void write_region_svg(std::ostream& out, const RegionScan& scan) {
  constexpr int size = 600;
  constexpr int margin = 40;
  const double cell = static_cast<double>(size) / scan.grid;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
      << size + 2 * margin << "\">\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (const auto& c : scan.cells) {
    const char* colour = nullptr;
    if (c.n_detected > 0) colour = "#c0392b";
    else if (c.n_separable > 0) colour = "#2471a3";
    else if (c.n_undecided > 0) colour = "#7d3c98";
    else if (c.feasible) colour = "#bbbbbb";
    if (colour == nullptr) continue;
    const double x = margin + c.i * cell;
    const double y = margin + size - (c.j + 1) * cell;
    out << "<rect x=\"" << format_double(x) << "\" y=\"" << format_double(y) << "\" width=\"" << format_double(cell)
        << "\" height=\"" << format_double(cell) << "\" fill=\"" << colour << "\"/>\n";
  }
  const std::string xlabel = scan.plane.kind == PlaneKind::Cat1Triangle ? "p1" : scan.plane.name.substr(0, 2);
  const std::string ylabel = scan.plane.kind == PlaneKind::Cat1Triangle ? "p2" : scan.plane.name.substr(2, 2);
  out << "<text x=\"" << margin + size / 2 << "\" y=\"" << size + margin + 30 << "\">" << xlabel << "</text>\n";
  out << "<text x=\"10\" y=\"" << margin + size / 2 << "\">" << ylabel << "</text>\n";
  out << "</svg>\n";
}

}  // namespace mubw::csv
