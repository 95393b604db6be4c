#include "mubw/mub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace mubw {

namespace {

MubRow make_row(std::string label, std::array<const char*, 7> names) {
  MubRow row{std::move(label), {}};
  for (int k = 0; k < 7; ++k) row.observables[k] = PauliString::parse(names[k]);
  return row;
}

// Columns of `v` span the subspace; returns the +1 and -1 parts of `op` inside it.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> split(const Eigen::MatrixXcd& v, const Mat8c& op) {
  const Eigen::MatrixXcd reduced = v.adjoint() * op * v;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(reduced);
  const auto& vals = solver.eigenvalues();
  std::vector<int> plus, minus;
  for (int k = 0; k < vals.size(); ++k) {
    if (std::abs(vals(k) - 1.0) < 1e-8) plus.push_back(k);
    else if (std::abs(vals(k) + 1.0) < 1e-8) minus.push_back(k);
    else throw std::runtime_error("common_eigenbasis: eigenvalue is not +-1");
  }
  auto take = [&](const std::vector<int>& cols) {
    Eigen::MatrixXcd out(kDim, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) out.col(c) = v * solver.eigenvectors().col(cols[c]);
    return out;
  };
  return {take(plus), take(minus)};
}

Ket8c fix_phase(Ket8c v) {
  for (int i = 0; i < kDim; ++i) {
    if (std::abs(v(i)) > 1e-9) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      break;
    }
  }
  return v;
}

Mat8c kron3(const std::array<Mat2c, 3>& m) {
  Mat8c out;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      out(i, j) = m[0](i >> 2, j >> 2) * m[1]((i >> 1) & 1, (j >> 1) & 1) * m[2](i & 1, j & 1);
    }
  }
  return out;
}

bool same_set(const std::array<PauliString, 7>& a, const std::array<PauliString, 7>& b) {
  return std::all_of(a.begin(), a.end(), [&](const PauliString& s) {
    return std::find(b.begin(), b.end(), s) != b.end();
  });
}

}  // namespace

const std::array<MubRow, 9>& mub_table() {
  static const std::array<MubRow, 9> table = {
      make_row("(xyz)_pi", {"XII", "IYI", "IIZ", "XYZ", "XYI", "XIZ", "IYZ"}),
      make_row("(yzx)_pi", {"YII", "IZI", "IIX", "YZX", "YZI", "YIX", "IZX"}),
      make_row("(zxy)_pi", {"ZII", "IXI", "IIY", "ZXY", "ZXI", "ZIY", "IXY"}),
      make_row("(xxx)_Gi", {"YZZ", "ZYZ", "ZZY", "YYY", "XXI", "XIX", "IXX"}),
      make_row("(yyy)_G", {"ZXX", "XZX", "XXZ", "ZZZ", "YYI", "YIY", "IYY"}),
      make_row("(zzz)_G", {"XYY", "YXY", "YYX", "XXX", "ZZI", "ZIZ", "IZZ"}),
      make_row("(xzy)_G", {"ZXZ", "YXX", "YYZ", "ZYX", "XZI", "XIY", "IZY"}),
      make_row("(yxz)_G", {"XYX", "ZYY", "ZZX", "XZY", "YXI", "YIZ", "IXZ"}),
      make_row("(zyx)_G", {"YZY", "XZZ", "XXY", "YXZ", "ZYI", "ZIX", "IYX"}),
  };
  return table;
}

bool is_commuting(const MubRow& row) {
  for (int a = 0; a < 7; ++a) {
    for (int b = a + 1; b < 7; ++b) {
      if (!commutes(row.observables[a], row.observables[b])) return false;
    }
  }
  return true;
}

Basis8 common_eigenbasis(const MubRow& row) {
  std::vector<Eigen::MatrixXcd> spaces{Eigen::MatrixXcd::Identity(kDim, kDim)};
  for (const auto& obs : row.observables) {
    const Mat8c op = pauli_matrix(obs);
    std::vector<Eigen::MatrixXcd> next;
    for (const auto& v : spaces) {
      auto [plus, minus] = split(v, op);
      if (plus.cols() > 0) next.push_back(std::move(plus));
      if (minus.cols() > 0) next.push_back(std::move(minus));
    }
    spaces = std::move(next);
  }
  if (spaces.size() != kDim) throw std::runtime_error("common_eigenbasis: observables do not separate the space");
  Basis8 out;
  for (int k = 0; k < kDim; ++k) out[k] = fix_phase(spaces[k].col(0));
  return out;
}

Eigen::Matrix<int, 8, 7> eigenvalue_signs(const MubRow& row, const Basis8& basis) {
  Eigen::Matrix<int, 8, 7> out;
  for (int o = 0; o < 7; ++o) {
    const Mat8c op = pauli_matrix(row.observables[o]);
    for (int v = 0; v < kDim; ++v) {
      const double e = (basis[v].adjoint() * op * basis[v])(0).real();
      out(v, o) = e > 0.0 ? 1 : -1;
    }
  }
  return out;
}

double unbiasedness_defect(const Basis8& a, const Basis8& b) {
  const double target = 1.0 / std::sqrt(8.0);
  double worst = 0.0;
  for (const auto& u : a) {
    for (const auto& v : b) worst = std::max(worst, std::abs(std::abs(u.dot(v)) - target));
  }
  return worst;
}

bool unbiasedness(const Basis8& a, const Basis8& b, double tol) { return unbiasedness_defect(a, b) <= tol; }

LocalUnitary LocalUnitary::identity() { return {}; }

LocalUnitary LocalUnitary::x_z() {
  Mat2c u;
  u << 1.0, 1.0, 1.0, -1.0;
  return {UnitaryKind::XZ, u / std::sqrt(2.0)};
}

LocalUnitary LocalUnitary::y_x() {
  Mat2c u = Mat2c::Zero();
  u(0, 0) = std::polar(1.0, std::numbers::pi / 4.0);
  u(1, 1) = std::polar(1.0, -std::numbers::pi / 4.0);
  return {UnitaryKind::YX, u};
}

LocalUnitary LocalUnitary::y_z() {
  using C = std::complex<double>;
  Mat2c u;
  u << C(1, 0), C(0, 1), C(0, 1), C(1, 0);
  return {UnitaryKind::YZ, u / std::sqrt(2.0)};
}

LabelMap swap_labels(Pauli a, Pauli b) {
  LabelMap m = kIdentityLabels;
  std::swap(m[static_cast<int>(a)], m[static_cast<int>(b)]);
  return m;
}

SignedPauli conjugate(const PauliString& s, const std::array<LocalUnitary, 3>& locals) {
  const Mat8c u = kron3({locals[0].u, locals[1].u, locals[2].u});
  const Mat8c image = u * pauli_matrix(s) * u.adjoint();
  for (int code = 0; code < 64; ++code) {
    PauliString p;
    p.labels = {static_cast<Pauli>(code >> 4), static_cast<Pauli>((code >> 2) & 3), static_cast<Pauli>(code & 3)};
    const std::complex<double> c = (pauli_matrix(p) * image).trace() / 8.0;
    if (std::abs(std::abs(c) - 1.0) < 1e-9) {
      if (std::abs(c.imag()) > 1e-9) break;
      return {c.real() > 0.0 ? 1 : -1, p};
    }
  }
  throw std::runtime_error("conjugate: image of " + s.str() + " is not a signed Pauli string");
}

TransformedRow transform_row(const MubRow& row, const std::array<LocalUnitary, 3>& locals,
                             const std::optional<std::array<LabelMap, 3>>& labels) {
  TransformedRow out{row, {}};
  for (int k = 0; k < 7; ++k) {
    PauliString s = row.observables[k];
    if (labels) {
      for (int q = 0; q < 3; ++q) s.labels[q] = (*labels)[q][static_cast<int>(s.labels[q])];
    }
    const SignedPauli image = conjugate(s, locals);
    out.row.observables[k] = image.string;
    out.signs[k] = image.sign;
  }
  if (!is_commuting(out.row)) throw std::runtime_error("transform_row: image is not a commuting set");
  return out;
}

std::optional<int> match_row(const MubRow& row) {
  const auto& table = mub_table();
  for (int k = 0; k < 9; ++k) {
    if (same_set(row.observables, table[k].observables)) return k;
  }
  return std::nullopt;
}

}  // namespace mubw
