// The nine commuting observable sets of a (3,0,6) three-qubit MUB, their eigenbases and the
// local unitary maps between rows.
#ifndef MUBW_MUB_HPP
#define MUBW_MUB_HPP

#include <array>
#include <optional>
#include <string>

#include "mubw/pauli.hpp"

namespace mubw {

using Basis8 = std::array<Ket8c, 8>;

struct MubRow {
  std::string label;
  std::array<PauliString, 7> observables;
};

/// Rows 1..9 stored 0-based: (xyz), (yzx), (zxy) product rows, then (xxx)_Gi, (yyy)_G,
/// (zzz)_G, (xzy)_G, (yxz)_G, (zyx)_G.
const std::array<MubRow, 9>& mub_table();

/// True when every pair of observables commutes.
bool is_commuting(const MubRow& row);

/// Simultaneous eigenvectors, found by splitting C^8 into the +1/-1 eigenspaces of each
/// observable in turn. Vectors are ordered by their sign pattern over the row (+ before -,
/// first observable most significant) and phased so the first nonzero amplitude is real
/// positive. Throws std::runtime_error if some eigenspace stays degenerate.
Basis8 common_eigenbasis(const MubRow& row);

/// Eigenvalue (+1 or -1) of each observable on each basis vector: out(v, o).
Eigen::Matrix<int, 8, 7> eigenvalue_signs(const MubRow& row, const Basis8& basis);

inline constexpr double kUnbiasedTol = 1e-10;

/// Every overlap modulus equals 1/sqrt(8) within tol.
bool unbiasedness(const Basis8& a, const Basis8& b, double tol = kUnbiasedTol);
/// Max over pairs of | |<a_i|b_j>| - 1/sqrt(8) |.
double unbiasedness_defect(const Basis8& a, const Basis8& b);

// ---------------------------------------------------------------------------------------

enum class UnitaryKind { Identity, XZ, YX, YZ };

struct LocalUnitary {
  UnitaryKind kind = UnitaryKind::Identity;
  Mat2c u = Mat2c::Identity();

  static LocalUnitary identity();
  /// (1, 1; 1, -1)/sqrt(2).
  static LocalUnitary x_z();
  /// diag(e^{i pi/4}, e^{-i pi/4}).
  static LocalUnitary y_x();
  /// (1, i; i, 1)/sqrt(2).
  static LocalUnitary y_z();
};

/// Relabelling of X, Y, Z on one qubit; I is always fixed. map[X] is the image of X, and so on.
using LabelMap = std::array<Pauli, 4>;

inline constexpr LabelMap kIdentityLabels = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
/// x -> y -> z -> x.
inline constexpr LabelMap kCyclicLabels = {Pauli::I, Pauli::Y, Pauli::Z, Pauli::X};

LabelMap swap_labels(Pauli a, Pauli b);

struct SignedPauli {
  int sign = 1;
  PauliString string;
};

/// u O u^dagger for a Pauli string O, written again as a signed Pauli string.
/// Throws std::runtime_error when the image is not a single Pauli string.
SignedPauli conjugate(const PauliString& s, const std::array<LocalUnitary, 3>& locals);

struct TransformedRow {
  MubRow row;
  std::array<int, 7> signs{};
};

/// Applies the label maps (when given) and then conjugation by the local unitaries.
TransformedRow transform_row(const MubRow& row, const std::array<LocalUnitary, 3>& locals,
                             const std::optional<std::array<LabelMap, 3>>& labels = std::nullopt);

/// Index (0-based) of the table row holding the same set of observables, ignoring order and sign.
std::optional<int> match_row(const MubRow& row);

}  // namespace mubw

#endif  // MUBW_MUB_HPP
