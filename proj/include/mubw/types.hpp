// Dense types shared by every module. Three qubits, so everything is 8x8.
#ifndef MUBW_TYPES_HPP
#define MUBW_TYPES_HPP

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace mubw {

inline constexpr int kDim = 8;

template <typename Scalar>
using Mat8 = Eigen::Matrix<std::complex<Scalar>, kDim, kDim>;
template <typename Scalar>
using Ket8 = Eigen::Matrix<std::complex<Scalar>, kDim, 1>;

using Mat8c = Mat8<double>;
using Ket8c = Ket8<double>;
using Mat2c = Eigen::Matrix2cd;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Vec7 = Eigen::Matrix<double, 7, 1>;

/// Density matrix in the computational basis; |n1 n2 n3> sits at index 4*n1 + 2*n2 + n3.
using DensityMatrix = Mat8c;

/// Mixing weights p1..p8 of the eight GHZ projectors (stored 0-based).
///
/// Construction validates 0 <= p_i <= 1 and |sum - 1| <= kSumTol.
class ProbVector {
 public:
  static constexpr double kSumTol = 1e-12;

  explicit ProbVector(const Vec8& p);
  ProbVector(std::initializer_list<double> p);

  static ProbVector uniform();

  const Vec8& values() const noexcept { return p_; }
  double operator[](int i) const { return p_(i); }
  /// p_{2k+1} + p_{2k+2} for GHZ pair k in 0..3.
  double pair_sum(int k) const { return p_(2 * k) + p_(2 * k + 1); }

 private:
  Vec8 p_;
};

/// Correlation coefficients r1..r7 of the Pauli expansion (stored 0-based).
class RVector {
 public:
  static constexpr double kRangeTol = 1e-12;

  explicit RVector(const Vec7& r);
  RVector(std::initializer_list<double> r);

  const Vec7& values() const noexcept { return r_; }
  /// One-based access, r(1) .. r(7), matching the usual labelling of the coefficients.
  double r(int i) const { return r_(i - 1); }

 private:
  Vec7 r_;
};

}  // namespace mubw

#endif  // MUBW_TYPES_HPP
