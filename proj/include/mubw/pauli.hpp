// Pauli strings on three qubits, the GHZ eigenbasis and the p <-> r coordinate map.
#ifndef MUBW_PAULI_HPP
#define MUBW_PAULI_HPP

#include <array>
#include <string>
#include <string_view>

#include "mubw/types.hpp"

namespace mubw {

enum class Pauli : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

/// Ordered triple of single-qubit labels; labels[0] acts on qubit 1 (the most significant bit).
struct PauliString {
  std::array<Pauli, 3> labels{Pauli::I, Pauli::I, Pauli::I};

  /// Parses "XYZ", "IZZ", ... Throws std::invalid_argument on anything else.
  static PauliString parse(std::string_view text);
  std::string str() const;
  bool is_identity() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// Label-wise product a*b: the string together with the overall phase in {1, -1, i, -i}.
struct PhasedPauli {
  std::complex<double> phase;
  PauliString string;
};
PhasedPauli multiply(const PauliString& a, const PauliString& b);

/// True when the two strings commute (an even number of anticommuting positions).
bool commutes(const PauliString& a, const PauliString& b);

template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, 2, 2> pauli_matrix(Pauli label) {
  using C = std::complex<Scalar>;
  Eigen::Matrix<C, 2, 2> m;
  switch (label) {
    case Pauli::I: m << C(1), C(0), C(0), C(1); break;
    case Pauli::X: m << C(0), C(1), C(1), C(0); break;
    case Pauli::Y: m << C(0), C(0, -1), C(0, 1), C(0); break;
    case Pauli::Z: m << C(1), C(0), C(0), C(-1); break;
  }
  return m;
}

/// Kronecker product of the three single-qubit matrices, qubit 1 leftmost.
template <typename Scalar = double>
Mat8<Scalar> pauli_matrix(const PauliString& s) {
  const auto a = pauli_matrix<Scalar>(s.labels[0]);
  const auto b = pauli_matrix<Scalar>(s.labels[1]);
  const auto c = pauli_matrix<Scalar>(s.labels[2]);
  Mat8<Scalar> m;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      m(i, j) = a(i >> 2, j >> 2) * b((i >> 1) & 1, (j >> 1) & 1) * c(i & 1, j & 1);
    }
  }
  return m;
}

/// The observable carrying coefficient r_i in the Pauli expansion of a GHZ-diagonal state,
/// for i in 1..7: ZZI, ZIZ, IZZ, XXX, XYY, YXY, YYX. Index 0 is III.
const PauliString& correlation_observable(int i);

/// Rows: (1,...,1) then the sign pattern of r_1..r_7 over p_1..p_8. H * H^T = 8 * Identity.
const Eigen::Matrix<int, 8, 8>& sign_table();

/// |psi_1> .. |psi_8> (0-based): (|abc> +- |~a~b~c>)/sqrt(2) with abc = 000, 001, 010, 011.
const std::array<Ket8c, 8>& ghz_basis();

/// The seven signed sums r = H_{1..7} p. Works for any scalar type (doubles, rationals).
template <typename Derived>
auto r_from_p(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, 7, 1> r = Eigen::Matrix<Scalar, 7, 1>::Zero();
  const auto& h = sign_table();
  for (int i = 0; i < 7; ++i) {
    for (int k = 0; k < 8; ++k) {
      if (h(i + 1, k) > 0) {
        r(i) += p(k);
      } else {
        r(i) -= p(k);
      }
    }
  }
  return r;
}

RVector r_from_p(const ProbVector& p);

/// p = H^T (1, r) / 8. Throws std::invalid_argument when some p_i < -1e-12;
/// components in [-1e-12, 0) are clamped to zero.
ProbVector p_from_r(const RVector& r);

DensityMatrix density_from_p(const ProbVector& p);
DensityMatrix density_from_r(const RVector& r);

}  // namespace mubw

#endif  // MUBW_PAULI_HPP
