// The PPT polytope of GHZ-diagonal states.
//
// Positivity of the three single-qubit partial transposes is equivalent to 24 linear
// inequalities in p, arranged as six groups of four over the index quadruples
//   (3,4,5,6) (1,2,7,8)   qubit 1
//   (1,2,5,6) (3,4,7,8)   qubit 2
//   (1,2,3,4) (5,6,7,8)   qubit 3
// and within a group (a,b,c,d): a+b+c-d, a+b-c+d, a-b+c+d, -a+b+c+d, all >= 0.
// The spectrum of rho^{T_q} is exactly half of its eight inequality values, which is what
// the eigenvalue cross-check in is_ppt relies on.
#ifndef MUBW_PPT_HPP
#define MUBW_PPT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mubw/lp.hpp"
#include "mubw/pauli.hpp"

namespace mubw {

inline constexpr double kPptTol = 1e-9;

/// Coefficient rows (over p1..p8) of the 24 inequalities, in the order documented above.
const std::array<std::array<int, 8>, 24>& ppt_inequality_rows();

/// Left-hand sides of the 24 inequalities for any scalar type.
template <typename Derived>
std::array<typename Derived::Scalar, 24> ppt_inequalities(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  std::array<Scalar, 24> out;
  const auto& rows = ppt_inequality_rows();
  for (int k = 0; k < 24; ++k) {
    Scalar v(0);
    for (int i = 0; i < 8; ++i) {
      if (rows[k][i] > 0) v += p(i);
      else if (rows[k][i] < 0) v -= p(i);
    }
    out[k] = v;
  }
  return out;
}

struct PptReport {
  std::array<double, 24> values{};
  /// Minimum eigenvalue of rho^{T_A}, rho^{T_B}, rho^{T_C}.
  std::array<double, 3> min_eigs{};
  bool pass = false;

  double min_value() const;
  /// values[4*g .. 4*g+3] for group g in 0..5.
  std::array<double, 4> quadruple(int group) const;
};

/// The 24 values only; min_eigs are left at zero and pass reflects the values at kPptTol.
PptReport ppt_inequalities(const ProbVector& p);

/// Full report. Throws std::logic_error if the inequality verdict and the eigenvalue
/// verdict disagree outside the boundary band |min value| <= 2 tol.
PptReport is_ppt(const ProbVector& p, double tol = kPptTol);

/// Eigenvalue route on its own: min eigenvalues of the three partial transposes.
std::array<double, 3> partial_transpose_min_eigs(const DensityMatrix& rho);

// ---------------------------------------------------------------------------------------
// Projections of the polytope.

/// Exact feasibility: does some PPT state have p_a = x and p_b = y?
bool ppt_point_feasible(int a, int b, const lp::Rational& x, const lp::Rational& y);

/// Exact range [lo, hi] of p_b over PPT states with p_a = x; nullopt if the fiber is empty.
std::optional<std::pair<lp::Rational, lp::Rational>> ppt_fiber_range(int a, int b, const lp::Rational& x);

enum class ScanMode {
  /// One feasibility LP per grid point.
  PerPoint,
  /// Two LPs per column giving the exact p_b interval; relies on convexity of the projection.
  ColumnInterval,
};

/// Feasible cells of the projection onto (p_a, p_b) (0-based coordinate indices).
/// Cell (i, j) is represented by its lower-left corner (i/grid, j/grid).
struct RegionGrid {
  int a = 0;
  int b = 1;
  int grid = 0;
  std::vector<std::uint8_t> cells;  // row-major in i

  bool feasible(int i, int j) const { return cells[static_cast<std::size_t>(i) * grid + j] != 0; }
  std::size_t count() const;
};

RegionGrid project_region(int a, int b, int grid, ScanMode mode = ScanMode::ColumnInterval);

// ---------------------------------------------------------------------------------------
// Boundary family on the face p1 + p3 = 1/2.

struct SpecialFamilyParams {
  double alpha = 0.0;
  double p4 = 0.0;
  double split5 = 0.0;
  double split7 = 0.0;

  /// (alpha - 1) p4 + 1/4: the common value of p5 + p6 and p7 + p8.
  double pair_budget() const { return (alpha - 1.0) * p4 + 0.25; }
};

/// p3 = alpha p4 + 1/4, p1 = 1/4 - alpha p4, p2 = (1 - 2 alpha) p4,
/// (p5, p6) = (split5, S - split5), (p7, p8) = (split7, S - split7).
/// Throws std::invalid_argument when the parameters leave their ranges.
ProbVector special_family(const SpecialFamilyParams& params);

}  // namespace mubw

#endif  // MUBW_PPT_HPP
