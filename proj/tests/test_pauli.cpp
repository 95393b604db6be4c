#include <doctest.h>

#include <random>

#include "mubw/pauli.hpp"
#include "oracles.hpp"

using namespace mubw;

using oracle::kron3;
using oracle::random_p;
using C = std::complex<double>;

TEST_CASE("pauli matrices are Kronecker products with qubit 1 leftmost") {
  const char* all = "IXYZ";
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const char labels[4] = {all[a], all[b], all[c], 0};
        CHECK((pauli_matrix(PauliString::parse(labels)) - kron3(labels)).norm() < 1e-15);
      }
  CHECK(pauli_matrix(PauliString::parse("III")).isApprox(Mat8c::Identity()));

  Vec8 zzi;
  zzi << 1, 1, -1, -1, -1, -1, 1, 1;
  CHECK((pauli_matrix(PauliString::parse("ZZI")) - Mat8c(zzi.cast<C>().asDiagonal())).norm() == 0.0);

  Mat8c anti = Mat8c::Zero();
  for (int i = 0; i < 8; ++i) anti(i, 7 - i) = 1.0;
  CHECK((pauli_matrix(PauliString::parse("XXX")) - anti).norm() == 0.0);
}

TEST_CASE("pauli strings: parsing, products and commutation") {
  CHECK(PauliString::parse("XYZ").str() == "XYZ");
  CHECK_THROWS_AS(PauliString::parse("XY"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::parse("XYQ"), std::invalid_argument);

  const char* all = "IXYZ";
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    char la[4] = {all[rng() % 4], all[rng() % 4], all[rng() % 4], 0};
    char lb[4] = {all[rng() % 4], all[rng() % 4], all[rng() % 4], 0};
    const Mat8c ma = kron3(la), mb = kron3(lb);
    const PhasedPauli prod = multiply(PauliString::parse(la), PauliString::parse(lb));
    CHECK((prod.phase * pauli_matrix(prod.string) - ma * mb).norm() < 1e-13);
    CHECK(commutes(PauliString::parse(la), PauliString::parse(lb)) == ((ma * mb - mb * ma).norm() < 1e-13));
  }
}

TEST_CASE("every Pauli string is Hermitian and unitary, traceless unless identity") {
  const char* all = "IXYZ";
  for (int k = 0; k < 64; ++k) {
    const char labels[4] = {all[k / 16], all[(k / 4) % 4], all[k % 4], 0};
    const Mat8c m = pauli_matrix(PauliString::parse(labels));
    CHECK((m - m.adjoint()).norm() < 1e-15);
    CHECK((m * m.adjoint() - Mat8c::Identity()).norm() < 1e-15);
    CHECK(std::abs(m.trace()) == doctest::Approx(k == 0 ? 8.0 : 0.0));
  }
}

TEST_CASE("correlation observables follow the Pauli expansion ordering") {
  const char* expected[8] = {"III", "ZZI", "ZIZ", "IZZ", "XXX", "XYY", "YXY", "YYX"};
  for (int i = 0; i < 8; ++i) CHECK(correlation_observable(i).str() == expected[i]);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const C tr = (kron3(expected[a]) * kron3(expected[b])).trace();
      CHECK(std::abs(tr - C(a == b ? 8.0 : 0.0)) < 1e-14);
    }
}

TEST_CASE("sign table is orthogonal in integer arithmetic") {
  const auto& h = sign_table();
  const Eigen::Matrix<int, 8, 8> g = h * h.transpose();
  CHECK(g == 8 * Eigen::Matrix<int, 8, 8>::Identity());
  for (int k = 0; k < 8; ++k) CHECK(h(0, k) == 1);
}

TEST_CASE("GHZ basis vectors") {
  const auto& g = ghz_basis();
  const auto hand = oracle::ghz();
  for (int i = 0; i < 8; ++i) CHECK((g[i] - hand[i]).norm() < 1e-16);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(g[0](0) - s) < 1e-15);
  CHECK(std::abs(g[0](7) - s) < 1e-15);
  CHECK(std::abs(g[7](3) - s) < 1e-15);
  CHECK(std::abs(g[7](4) + s) < 1e-15);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) CHECK(std::abs(g[a].dot(g[b]) - C(a == b ? 1.0 : 0.0)) < 1e-15);

  const auto& h = sign_table();
  for (int i = 0; i < 8; ++i)
    for (int o = 1; o < 8; ++o) {
      const Ket8c image = pauli_matrix(correlation_observable(o)) * g[i];
      CHECK((image - double(h(o, i)) * g[i]).norm() < 1e-14);
    }
}

TEST_CASE("p to r map") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Vec8 p = random_p(rng);
    const RVector r = r_from_p(ProbVector(p));
    CHECK((r.values() - oracle::r_of(p)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((p_from_r(r).values() - p).cwiseAbs().maxCoeff() < 1e-14);
  }

  CHECK(r_from_p(ProbVector::uniform()).values().cwiseAbs().maxCoeff() < 1e-16);
  const RVector ghz = r_from_p(ProbVector{1, 0, 0, 0, 0, 0, 0, 0});
  Vec7 expected;
  expected << 1, 1, 1, 1, -1, -1, -1;
  CHECK(ghz.values() == expected);

  CHECK((p_from_r(RVector{0, 0, 0, 0, 0, 0, 0}).values() - Vec8::Constant(0.125)).norm() == 0.0);
  CHECK(p_from_r(RVector{1, 1, 1, 1, -1, -1, -1})[0] == 1.0);
  const ProbVector second = p_from_r(RVector{1, 1, 1, -1, 1, 1, 1});
  CHECK(second[1] == 1.0);
  CHECK(second.values().sum() == 1.0);

  const ProbVector proto{0.043425, 0.15308, 0.016132, 0.19387, 0.059793, 0.24806, 0.18207, 0.10357};
  const RVector rp = r_from_p(proto);
  CHECK(rp.r(1) == doctest::Approx(-0.186986).epsilon(1e-9));
  CHECK(rp.r(4) == doctest::Approx(-0.397160).epsilon(1e-9));
}

TEST_CASE("invalid coordinates are rejected") {
  CHECK_THROWS_AS(ProbVector({0.5, 0.5, 0.1, 0, 0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(ProbVector({1.1, -0.1, 0, 0, 0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(p_from_r(RVector{1, 1, 1, 1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("density matrices from p and from r agree") {
  const auto g = oracle::ghz();
  CHECK((density_from_p(ProbVector::uniform()) - Mat8c::Identity() / 8.0).norm() < 1e-15);
  CHECK((density_from_p(ProbVector{1, 0, 0, 0, 0, 0, 0, 0}) - g[0] * g[0].adjoint()).norm() < 1e-15);

  std::mt19937_64 rng(5);
  const char* obs[8] = {"III", "ZZI", "ZIZ", "IZZ", "XXX", "XYY", "YXY", "YYX"};
  for (int t = 0; t < 10000; ++t) {
    const Vec8 p = random_p(rng);
    const ProbVector pv(p);
    Mat8c by_projectors = Mat8c::Zero();
    for (int i = 0; i < 8; ++i) by_projectors += p(i) * g[i] * g[i].adjoint();
    const Vec7 r = oracle::r_of(p);
    Mat8c by_paulis = kron3(obs[0]);
    for (int i = 0; i < 7; ++i) by_paulis += r(i) * kron3(obs[i + 1]);
    by_paulis /= 8.0;
    const Mat8c a = density_from_p(pv), b = density_from_r(r_from_p(pv));
    CHECK((a - by_projectors).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((b - by_paulis).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    if (t < 100) {
      CHECK((a - a.adjoint()).norm() < 1e-12);
      CHECK(std::abs(a.trace() - C(1.0)) < 1e-12);
      CHECK(Eigen::ComplexEigenSolver<Mat8c>(a).eigenvalues().real().minCoeff() > -1e-10);
    }
  }
}
