#include "mubw/pauli.hpp"

#include <cmath>
#include <numeric>

namespace mubw {

namespace {

void check_probabilities(const Vec8& p) {
  for (int i = 0; i < 8; ++i) {
    if (!std::isfinite(p(i)) || p(i) < 0.0 || p(i) > 1.0) {
      throw std::invalid_argument("probability p" + std::to_string(i + 1) + " outside [0, 1]");
    }
  }
  if (std::abs(p.sum() - 1.0) > ProbVector::kSumTol) {
    throw std::invalid_argument("probabilities do not sum to 1");
  }
}

Vec8 from_list(std::initializer_list<double> values) {
  if (values.size() != 8) throw std::invalid_argument("expected 8 probabilities");
  Vec8 v;
  std::copy(values.begin(), values.end(), v.data());
  return v;
}

}  // namespace

ProbVector::ProbVector(const Vec8& p) : p_(p) { check_probabilities(p_); }

ProbVector::ProbVector(std::initializer_list<double> p) : ProbVector(from_list(p)) {}

ProbVector ProbVector::uniform() { return ProbVector(Vec8::Constant(0.125)); }

RVector::RVector(const Vec7& r) : r_(r) {
  for (int i = 0; i < 7; ++i) {
    if (!std::isfinite(r_(i)) || std::abs(r_(i)) > 1.0 + kRangeTol) {
      throw std::invalid_argument("coefficient r" + std::to_string(i + 1) + " outside [-1, 1]");
    }
  }
}

RVector::RVector(std::initializer_list<double> r) : RVector([&] {
  if (r.size() != 7) throw std::invalid_argument("expected 7 coefficients");
  Vec7 v;
  std::copy(r.begin(), r.end(), v.data());
  return v;
}()) {}

PauliString PauliString::parse(std::string_view text) {
  if (text.size() != 3) throw std::invalid_argument("Pauli string needs 3 labels");
  PauliString s;
  for (int q = 0; q < 3; ++q) {
    switch (text[q]) {
      case 'I': s.labels[q] = Pauli::I; break;
      case 'X': s.labels[q] = Pauli::X; break;
      case 'Y': s.labels[q] = Pauli::Y; break;
      case 'Z': s.labels[q] = Pauli::Z; break;
      default: throw std::invalid_argument("bad Pauli label in '" + std::string(text) + "'");
    }
  }
  return s;
}

std::string PauliString::str() const {
  static constexpr char names[] = {'I', 'X', 'Y', 'Z'};
  std::string out;
  for (Pauli p : labels) out.push_back(names[static_cast<int>(p)]);
  return out;
}

bool PauliString::is_identity() const {
  return labels[0] == Pauli::I && labels[1] == Pauli::I && labels[2] == Pauli::I;
}

PhasedPauli multiply(const PauliString& a, const PauliString& b) {
  // sigma_j sigma_k = delta_jk I + i eps_jkl sigma_l for j, k in {X, Y, Z}.
  PhasedPauli out{{1.0, 0.0}, {}};
  for (int q = 0; q < 3; ++q) {
    const int x = static_cast<int>(a.labels[q]);
    const int y = static_cast<int>(b.labels[q]);
    if (x == 0) {
      out.string.labels[q] = b.labels[q];
    } else if (y == 0) {
      out.string.labels[q] = a.labels[q];
    } else if (x == y) {
      out.string.labels[q] = Pauli::I;
    } else {
      const int z = 6 - x - y;
      out.string.labels[q] = static_cast<Pauli>(z);
      const bool cyclic = (y - x + 3) % 3 == 1;
      out.phase *= cyclic ? std::complex<double>(0, 1) : std::complex<double>(0, -1);
    }
  }
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  int anti = 0;
  for (int q = 0; q < 3; ++q) {
    const auto x = a.labels[q];
    const auto y = b.labels[q];
    if (x != Pauli::I && y != Pauli::I && x != y) ++anti;
  }
  return anti % 2 == 0;
}

const PauliString& correlation_observable(int i) {
  static const std::array<PauliString, 8> table = {
      PauliString::parse("III"), PauliString::parse("ZZI"), PauliString::parse("ZIZ"),
      PauliString::parse("IZZ"), PauliString::parse("XXX"), PauliString::parse("XYY"),
      PauliString::parse("YXY"), PauliString::parse("YYX")};
  if (i < 0 || i > 7) throw std::out_of_range("correlation observable index must be in 0..7");
  return table[i];
}

const Eigen::Matrix<int, 8, 8>& sign_table() {
  static const Eigen::Matrix<int, 8, 8> h = [] {
    Eigen::Matrix<int, 8, 8> m;
    m << 1, 1, 1, 1, 1, 1, 1, 1,
         1, 1, 1, 1, -1, -1, -1, -1,
         1, 1, -1, -1, 1, 1, -1, -1,
         1, 1, -1, -1, -1, -1, 1, 1,
         1, -1, 1, -1, 1, -1, 1, -1,
         -1, 1, 1, -1, 1, -1, -1, 1,
         -1, 1, 1, -1, -1, 1, 1, -1,
         -1, 1, -1, 1, 1, -1, 1, -1;
    return m;
  }();
  return h;
}

const std::array<Ket8c, 8>& ghz_basis() {
  static const std::array<Ket8c, 8> basis = [] {
    std::array<Ket8c, 8> out;
    const double s = 1.0 / std::sqrt(2.0);
    for (int pair = 0; pair < 4; ++pair) {
      for (int sign = 0; sign < 2; ++sign) {
        Ket8c v = Ket8c::Zero();
        v(pair) = s;
        v(7 - pair) = sign == 0 ? s : -s;
        out[2 * pair + sign] = v;
      }
    }
    return out;
  }();
  return basis;
}

RVector r_from_p(const ProbVector& p) {
  Vec7 r = r_from_p(p.values());
  // Rounding can push |r_i| a few ulps past 1 for pure states.
  return RVector(r.cwiseMax(-1.0).cwiseMin(1.0));
}

ProbVector p_from_r(const RVector& r) {
  Vec8 full;
  full(0) = 1.0;
  full.tail<7>() = r.values();
  Vec8 p = sign_table().cast<double>().transpose() * full / 8.0;
  for (int i = 0; i < 8; ++i) {
    if (p(i) < -1e-12) {
      throw std::invalid_argument("coefficients do not describe a state: p" + std::to_string(i + 1) +
                                  " = " + std::to_string(p(i)));
    }
    if (p(i) < 0.0) p(i) = 0.0;
  }
  return ProbVector(p);
}

DensityMatrix density_from_p(const ProbVector& p) {
  const auto& basis = ghz_basis();
  DensityMatrix rho = DensityMatrix::Zero();
  for (int i = 0; i < 8; ++i) rho += p[i] * basis[i] * basis[i].adjoint();
  return rho;
}

DensityMatrix density_from_r(const RVector& r) {
  DensityMatrix rho = Mat8c::Identity();
  for (int i = 1; i <= 7; ++i) rho += r.r(i) * pauli_matrix(correlation_observable(i));
  return rho / 8.0;
}

}  // namespace mubw
