#include "mubw/ppt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mubw/linalg.hpp"

namespace mubw {

namespace {

constexpr std::array<std::array<int, 4>, 6> kGroups = {{
    {2, 3, 4, 5}, {0, 1, 6, 7},  // qubit 1
    {0, 1, 4, 5}, {2, 3, 6, 7},  // qubit 2
    {0, 1, 2, 3}, {4, 5, 6, 7},  // qubit 3
}};

using lp::Rational;
using Cons = lp::Constraint<Rational>;

// Nonnegativity is carried by the LP domain; rows here are the PPT set plus normalization.
std::vector<Cons> polytope_constraints() {
  std::vector<Cons> cons;
  for (const auto& row : ppt_inequality_rows()) {
    Cons c;
    c.coeffs.reserve(8);
    for (int v : row) c.coeffs.emplace_back(v);
    c.rel = lp::Relation::GreaterEqual;
    c.rhs = 0;
    cons.push_back(std::move(c));
  }
  cons.push_back(Cons{std::vector<Rational>(8, Rational(1)), lp::Relation::Equal, Rational(1)});
  return cons;
}

Cons fix_coordinate(int index, const Rational& value) {
  Cons c{std::vector<Rational>(8, Rational(0)), lp::Relation::Equal, value};
  c.coeffs[index] = 1;
  return c;
}

void check_plane(int a, int b) {
  if (a < 0 || a > 7 || b < 0 || b > 7 || a == b) {
    throw std::invalid_argument("projection plane needs two distinct coordinates in 0..7");
  }
}

}  // namespace

const std::array<std::array<int, 8>, 24>& ppt_inequality_rows() {
  static const auto rows = [] {
    std::array<std::array<int, 8>, 24> out{};
    for (int g = 0; g < 6; ++g) {
      for (int k = 0; k < 4; ++k) {
        auto& row = out[4 * g + k];
        for (int t = 0; t < 4; ++t) row[kGroups[g][t]] = 1;
        // k = 0 negates the last member of the quadruple, k = 3 the first.
        row[kGroups[g][3 - k]] = -1;
      }
    }
    return out;
  }();
  return rows;
}

double PptReport::min_value() const { return *std::min_element(values.begin(), values.end()); }

std::array<double, 4> PptReport::quadruple(int group) const {
  return {values[4 * group], values[4 * group + 1], values[4 * group + 2], values[4 * group + 3]};
}

PptReport ppt_inequalities(const ProbVector& p) {
  PptReport report;
  report.values = ppt_inequalities(p.values());
  report.pass = report.min_value() >= -kPptTol;
  return report;
}

std::array<double, 3> partial_transpose_min_eigs(const DensityMatrix& rho) {
  std::array<double, 3> out{};
  for (int q = 1; q <= 3; ++q) out[q - 1] = min_eigenvalue(partial_transpose(rho, q));
  return out;
}

PptReport is_ppt(const ProbVector& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("is_ppt: tolerance must be positive");
  PptReport report;
  report.values = ppt_inequalities(p.values());
  report.min_eigs = partial_transpose_min_eigs(density_from_p(p));
  const double min_value = report.min_value();
  report.pass = min_value >= -tol;
  const bool eig_pass = *std::min_element(report.min_eigs.begin(), report.min_eigs.end()) >= -tol;
  if (eig_pass != report.pass && std::abs(min_value) > 2.0 * tol) {
    throw std::logic_error("PPT inequalities and partial-transpose spectrum disagree (min value " +
                           std::to_string(min_value) + ")");
  }
  return report;
}

bool ppt_point_feasible(int a, int b, const Rational& x, const Rational& y) {
  check_plane(a, b);
  auto cons = polytope_constraints();
  cons.push_back(fix_coordinate(a, x));
  cons.push_back(fix_coordinate(b, y));
  return lp::feasible(cons, 8, lp::Domain::Nonnegative);
}

std::optional<std::pair<Rational, Rational>> ppt_fiber_range(int a, int b, const Rational& x) {
  check_plane(a, b);
  auto cons = polytope_constraints();
  cons.push_back(fix_coordinate(a, x));
  std::vector<Rational> objective(8, Rational(0));
  objective[b] = 1;
  const auto hi = lp::maximize(cons, objective, 8, lp::Domain::Nonnegative);
  if (hi.status != lp::Status::Optimal) return std::nullopt;
  const auto lo = lp::minimize(cons, objective, 8, lp::Domain::Nonnegative);
  return std::make_pair(lo.objective, hi.objective);
}

std::size_t RegionGrid::count() const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

RegionGrid project_region(int a, int b, int grid, ScanMode mode) {
  check_plane(a, b);
  if (grid < 2) throw std::invalid_argument("project_region: grid must be at least 2");
  RegionGrid region{a, b, grid, std::vector<std::uint8_t>(static_cast<std::size_t>(grid) * grid, 0)};
  for (int i = 0; i < grid; ++i) {
    const Rational x(i, grid);
    if (mode == ScanMode::PerPoint) {
      for (int j = 0; j < grid; ++j) {
        region.cells[static_cast<std::size_t>(i) * grid + j] = ppt_point_feasible(a, b, x, Rational(j, grid));
      }
      continue;
    }
    const auto range = ppt_fiber_range(a, b, x);
    if (!range) continue;
    for (int j = 0; j < grid; ++j) {
      const Rational y(j, grid);
      region.cells[static_cast<std::size_t>(i) * grid + j] = range->first <= y && y <= range->second;
    }
  }
  return region;
}

ProbVector special_family(const SpecialFamilyParams& params) {
  constexpr double eps = 1e-12;
  const double alpha = params.alpha;
  if (!(alpha >= -1.0 - eps && alpha <= 0.5 + eps)) {
    throw std::invalid_argument("special_family: alpha must lie in [-1, 1/2]");
  }
  if (!(params.p4 >= -eps) || params.p4 > 1.0 / (4.0 * (1.0 - alpha)) + eps) {
    throw std::invalid_argument("special_family: p4 must lie in [0, 1/(4(1 - alpha))]");
  }
  const double budget = std::max(0.0, params.pair_budget());
  for (double split : {params.split5, params.split7}) {
    if (!(split >= -eps && split <= budget + eps)) {
      throw std::invalid_argument("special_family: splits must lie in [0, (alpha - 1) p4 + 1/4]");
    }
  }
  const double p4 = std::max(0.0, params.p4);
  const double s5 = std::clamp(params.split5, 0.0, budget);
  const double s7 = std::clamp(params.split7, 0.0, budget);
  Vec8 p;
  p << 0.25 - alpha * p4, (1.0 - 2.0 * alpha) * p4, alpha * p4 + 0.25, p4, s5, budget - s5, s7, budget - s7;
  return ProbVector(p.cwiseMax(0.0));
}

}  // namespace mubw
