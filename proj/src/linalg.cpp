#include "mubw/linalg.hpp"

#include <string>

namespace mubw {

double hermiticity_defect(const Mat8c& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

Mat8c partial_transpose(const Mat8c& rho, int qubit) {
  if (qubit < 1 || qubit > 3) {
    throw std::invalid_argument("partial transpose: qubit must be 1, 2 or 3, got " + std::to_string(qubit));
  }
  const int bit = 1 << (3 - qubit);
  Mat8c out;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      // Swap the chosen qubit's bit between row and column index.
      const int ri = (i & ~bit) | (j & bit);
      const int cj = (j & ~bit) | (i & bit);
      out(i, j) = rho(ri, cj);
    }
  }
  return out;
}

Vec8 eigenvalues(const Mat8c& h) {
  if (hermiticity_defect(h) > kHermitianTol) {
    throw std::invalid_argument("eigenvalues: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat8c> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const Mat8c& h) { return eigenvalues(h)(0); }

}  // namespace mubw
