// Independent reference computations for the tests. Nothing here calls into the library
// beyond the plain Eigen types.
#ifndef MUBW_TESTS_ORACLES_HPP
#define MUBW_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat8 = Eigen::Matrix<C, 8, 8>;
using Ket8 = Eigen::Matrix<C, 8, 1>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Vec7 = Eigen::Matrix<double, 7, 1>;

inline Mat2 single(char label) {
  Mat2 m;
  switch (label) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

// Kronecker product written out with explicit block placement, qubit 1 leftmost.
inline Mat8 kron3(const std::string& labels) {
  const Mat2 a = single(labels[0]), b = single(labels[1]), c = single(labels[2]);
  Eigen::Matrix4cd bc;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) bc.block<2, 2>(2 * r, 2 * s) = b(r, s) * c;
  Mat8 out;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) out.block<4, 4>(4 * r, 4 * s) = a(r, s) * bc;
  return out;
}

// The operators carrying r_1 .. r_7, index 0 being the identity.
inline const std::array<std::string, 8> kObservables = {"III", "ZZI", "ZIZ", "IZZ", "XXX", "XYY", "YXY", "YYX"};

inline Vec8 random_p(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Vec8 p;
  for (int i = 0; i < 8; ++i) p(i) = e(rng);
  return p / p.sum();
}

// The seven signed sums, typed in row by row.
inline Vec7 r_of(const Vec8& p) {
  Vec7 r;
  r << p(0) + p(1) + p(2) + p(3) - p(4) - p(5) - p(6) - p(7),
      p(0) + p(1) - p(2) - p(3) + p(4) + p(5) - p(6) - p(7),
      p(0) + p(1) - p(2) - p(3) - p(4) - p(5) + p(6) + p(7),
      p(0) - p(1) + p(2) - p(3) + p(4) - p(5) + p(6) - p(7),
      -p(0) + p(1) + p(2) - p(3) + p(4) - p(5) - p(6) + p(7),
      -p(0) + p(1) + p(2) - p(3) - p(4) + p(5) + p(6) - p(7),
      -p(0) + p(1) - p(2) + p(3) + p(4) - p(5) + p(6) - p(7);
  return r;
}

// (|k> + |7-k>)/sqrt(2) and (|k> - |7-k>)/sqrt(2) for k = 0..3.
inline std::array<Ket8, 8> ghz() {
  std::array<Ket8, 8> out;
  for (int k = 0; k < 4; ++k) {
    for (int sign : {0, 1}) {
      Ket8 v = Ket8::Zero();
      v(k) = 1.0 / std::sqrt(2.0);
      v(7 - k) = (sign == 0 ? 1.0 : -1.0) / std::sqrt(2.0);
      out[2 * k + sign] = v;
    }
  }
  return out;
}

inline Mat8 rho_of(const Vec8& p) {
  const auto g = ghz();
  Mat8 rho = Mat8::Zero();
  for (int i = 0; i < 8; ++i) rho += p(i) * g[i] * g[i].adjoint();
  return rho;
}

// Swap the bit of `qubit` (1..3) between row and column index.
inline Mat8 partial_transpose(const Mat8& m, int qubit) {
  const int bit = 1 << (3 - qubit);
  Mat8 out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const int ii = (i & ~bit) | (j & bit);
      const int jj = (j & ~bit) | (i & bit);
      out(ii, jj) = m(i, j);
    }
  return out;
}

inline double min_eig(const Mat8& m) { return Eigen::ComplexEigenSolver<Mat8>(m).eigenvalues().real().minCoeff(); }

inline double min_pt_eig(const Vec8& p) {
  const Mat8 rho = rho_of(p);
  double out = 1.0;
  for (int q = 1; q <= 3; ++q) out = std::min(out, min_eig(partial_transpose(rho, q)));
  return out;
}

inline std::array<double, 24> inequalities(const Vec8& q) {
  const auto p = [&](int i) { return q(i - 1); };
  const std::array<std::array<int, 4>, 6> groups = {
      {{3, 4, 5, 6}, {1, 2, 7, 8}, {1, 2, 5, 6}, {3, 4, 7, 8}, {1, 2, 3, 4}, {5, 6, 7, 8}}};
  std::array<double, 24> out{};
  for (int g = 0; g < 6; ++g) {
    const double a = p(groups[g][0]), b = p(groups[g][1]), c = p(groups[g][2]), d = p(groups[g][3]);
    out[4 * g + 0] = a + b + c - d;
    out[4 * g + 1] = a + b - c + d;
    out[4 * g + 2] = a - b + c + d;
    out[4 * g + 3] = -a + b + c + d;
  }
  return out;
}

inline double min_inequality(const Vec8& p) {
  double m = 1.0;
  for (double v : inequalities(p)) m = std::min(m, v);
  return m;
}

// 1 + o r_i - |(r_j + s r_k, r_l + s r_m)|, everything one-based.
inline double envelope(const Vec7& r, int o, int i, int s, int j, int k, int l, int m) {
  const auto R = [&](int n) { return r(n - 1); };
  return 1.0 + o * R(i) - std::hypot(R(j) + s * R(k), R(l) + s * R(m));
}

// Most negative envelope over all 36 sign/index choices.
inline double best_envelope(const Vec7& r) {
  const int splits[3][4] = {{4, 5, 6, 7}, {4, 6, 5, 7}, {4, 7, 5, 6}};
  double best = 1e300;
  for (int o : {1, -1})
    for (int i = 1; i <= 3; ++i)
      for (int s : {1, -1})
        for (const auto& q : splits) best = std::min(best, envelope(r, o, i, s, q[0], q[1], q[2], q[3]));
  return best;
}

// Product state from Bloch angles, qubit q = cos(t/2)|0> + e^{i f} sin(t/2)|1>.
inline Ket8 product(const std::array<double, 3>& theta, const std::array<double, 3>& phi) {
  std::array<Eigen::Vector2cd, 3> q;
  for (int n = 0; n < 3; ++n) q[n] << std::cos(theta[n] / 2), std::polar(1.0, phi[n]) * std::sin(theta[n] / 2);
  Ket8 v;
  for (int i = 0; i < 8; ++i) v(i) = q[0](i >> 2) * q[1]((i >> 1) & 1) * q[2](i & 1);
  return v;
}

}  // namespace oracle

#endif  // MUBW_TESTS_ORACLES_HPP
