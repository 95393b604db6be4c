// Small dense Hermitian helpers: partial transposition and spectra.
#ifndef MUBW_LINALG_HPP
#define MUBW_LINALG_HPP

#include "mubw/types.hpp"

namespace mubw {

inline constexpr double kHermitianTol = 1e-10;

/// Max |m - m^dagger| entry.
double hermiticity_defect(const Mat8c& m);

/// Transposes the indices of one qubit (1, 2 or 3). Involutive and trace preserving.
/// Throws std::invalid_argument for any other qubit number.
Mat8c partial_transpose(const Mat8c& rho, int qubit);

/// Smallest eigenvalue of a Hermitian 8x8 matrix.
/// Throws std::invalid_argument when the input is not Hermitian within kHermitianTol.
double min_eigenvalue(const Mat8c& h);

/// All eigenvalues, ascending.
Vec8 eigenvalues(const Mat8c& h);

}  // namespace mubw

#endif  // MUBW_LINALG_HPP
