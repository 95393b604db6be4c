#include "mubw/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mubw/linalg.hpp"

namespace mubw {

namespace {

constexpr double kPi = std::numbers::pi;

char sign_char(int s) { return s > 0 ? '+' : '-'; }

int parse_sign(char c) {
  if (c == '+') return 1;
  if (c == '-') return -1;
  throw std::invalid_argument(std::string("witness id: expected '+' or '-', got '") + c + "'");
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a = 0.0;
  return a;
}

// Coefficients over {I,X,Y,Z}^3, indexed [a][b][c].
using BlochTensor = std::array<std::array<std::array<double, 4>, 4>, 4>;

BlochTensor bloch_tensor(const PauliOperator& op) {
  BlochTensor t{};
  for (const auto& term : op) {
    const auto& l = term.string.labels;
    t[static_cast<int>(l[0])][static_cast<int>(l[1])][static_cast<int>(l[2])] += term.coeff;
  }
  return t;
}

using Bloch4 = std::array<double, 4>;  // (1, x, y, z)

Bloch4 homogeneous(const Eigen::Vector3d& n) { return {1.0, n.x(), n.y(), n.z()}; }

// Expectation as an affine function of qubit q's Bloch vector: returns (const, linear part).
std::pair<double, Eigen::Vector3d> partial_contraction(const BlochTensor& t, const std::array<Bloch4, 3>& n, int q) {
  Bloch4 coeff{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        const double v = t[a][b][c];
        if (v == 0.0) continue;
        const std::array<int, 3> idx{a, b, c};
        double w = v;
        for (int k = 0; k < 3; ++k) {
          if (k != q) w *= n[k][idx[k]];
        }
        coeff[idx[q]] += w;
      }
    }
  }
  return {coeff[0], Eigen::Vector3d(coeff[1], coeff[2], coeff[3])};
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int count) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(count);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / count;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.emplace_back(rho * std::cos(golden * k), rho * std::sin(golden * k), z);
  }
  return out;
}

constexpr int kStartDirections = 24;
constexpr int kMaxSweeps = 500;
constexpr double kSweepTol = 1e-14;

}  // namespace

int NonlinearFamilyId::ordinal() const {
  return (((outer_sign > 0 ? 0 : 1) * 3 + (z_index - 1)) * 2 + (inner_sign > 0 ? 0 : 1)) * 3 + partition;
}

NonlinearFamilyId NonlinearFamilyId::from_ordinal(int k) {
  if (k < 0 || k >= kCount) throw std::out_of_range("witness id ordinal out of range");
  NonlinearFamilyId id;
  id.partition = k % 3;
  id.inner_sign = (k / 3) % 2 == 0 ? 1 : -1;
  id.z_index = (k / 6) % 3 + 1;
  id.outer_sign = k / 18 == 0 ? 1 : -1;
  return id;
}

const std::array<NonlinearFamilyId, NonlinearFamilyId::kCount>& NonlinearFamilyId::all() {
  static const auto ids = [] {
    std::array<NonlinearFamilyId, kCount> out;
    for (int k = 0; k < kCount; ++k) out[k] = from_ordinal(k);
    return out;
  }();
  return ids;
}

std::string NonlinearFamilyId::str() const {
  std::string s;
  s += sign_char(outer_sign);
  s += static_cast<char>('0' + z_index);
  s += ':';
  s += sign_char(inner_sign);
  s += static_cast<char>('0' + cos_pair()[0]);
  s += static_cast<char>('0' + cos_pair()[1]);
  s += ':';
  s += static_cast<char>('0' + sin_pair()[0]);
  s += static_cast<char>('0' + sin_pair()[1]);
  return s;
}

NonlinearFamilyId NonlinearFamilyId::parse(std::string_view text) {
  if (text.size() != 9 || text[2] != ':' || text[6] != ':') {
    throw std::invalid_argument("witness id: expected the form +1:+45:67, got '" + std::string(text) + "'");
  }
  NonlinearFamilyId id;
  id.outer_sign = parse_sign(text[0]);
  id.z_index = text[1] - '0';
  if (id.z_index < 1 || id.z_index > 3) throw std::invalid_argument("witness id: z index must be 1, 2 or 3");
  id.inner_sign = parse_sign(text[3]);
  const std::array<int, 2> cos_pair{text[4] - '0', text[5] - '0'};
  const std::array<int, 2> sin_pair{text[7] - '0', text[8] - '0'};
  for (int k = 0; k < 3; ++k) {
    if (kPartitions[k][0] == cos_pair && kPartitions[k][1] == sin_pair) {
      id.partition = k;
      return id;
    }
  }
  throw std::invalid_argument("witness id: unknown partition in '" + std::string(text) + "'");
}

PauliOperator witness_operator(const WitnessSpec& w) {
  const auto& id = w.id;
  const double c = std::cos(w.psi);
  const double s = std::sin(w.psi);
  return {
      {1.0, correlation_observable(0)},
      {static_cast<double>(id.outer_sign), correlation_observable(id.z_index)},
      {c, correlation_observable(id.cos_pair()[0])},
      {c * id.inner_sign, correlation_observable(id.cos_pair()[1])},
      {s, correlation_observable(id.sin_pair()[0])},
      {s * id.inner_sign, correlation_observable(id.sin_pair()[1])},
  };
}

Mat8c to_matrix(const PauliOperator& op) {
  Mat8c m = Mat8c::Zero();
  for (const auto& term : op) m += term.coeff * pauli_matrix(term.string);
  return m;
}

Mat8c witness_matrix(const WitnessSpec& w) { return to_matrix(witness_operator(w)); }

std::array<double, 2> envelope_arm(const NonlinearFamilyId& id, const RVector& r) {
  const double s = id.inner_sign;
  return {r.r(id.cos_pair()[0]) + s * r.r(id.cos_pair()[1]), r.r(id.sin_pair()[0]) + s * r.r(id.sin_pair()[1])};
}

double expectation(const WitnessSpec& w, const RVector& r) {
  const auto [a, b] = envelope_arm(w.id, r);
  return 1.0 + w.id.outer_sign * r.r(w.id.z_index) + std::cos(w.psi) * a + std::sin(w.psi) * b;
}

double expectation(const WitnessSpec& w, const ProbVector& p) { return expectation(w, r_from_p(p)); }

double nonlinear_value(const NonlinearFamilyId& id, const RVector& r) {
  const auto [a, b] = envelope_arm(id, r);
  return 1.0 + id.outer_sign * r.r(id.z_index) - std::hypot(a, b);
}

double nonlinear_value(const NonlinearFamilyId& id, const ProbVector& p) { return nonlinear_value(id, r_from_p(p)); }

double optimal_psi(const NonlinearFamilyId& id, const RVector& r) {
  const auto [a, b] = envelope_arm(id, r);
  if (a == 0.0 && b == 0.0) return 0.0;
  return wrap_angle(std::atan2(b, a) + kPi);
}

Ket8c ProductState::vector() const {
  std::array<Eigen::Vector2cd, 3> q;
  for (int k = 0; k < 3; ++k) {
    q[k] << std::cos(theta[k] / 2.0), std::polar(std::sin(theta[k] / 2.0), phi[k]);
  }
  Ket8c v;
  for (int i = 0; i < kDim; ++i) v(i) = q[0](i >> 2) * q[1]((i >> 1) & 1) * q[2](i & 1);
  return v;
}

Eigen::Vector3d ProductState::bloch(int q) const {
  return {std::sin(theta[q]) * std::cos(phi[q]), std::sin(theta[q]) * std::sin(phi[q]), std::cos(theta[q])};
}

ProductState ProductState::from_bloch(const std::array<Eigen::Vector3d, 3>& n) {
  ProductState s;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d u = n[k].normalized();
    s.theta[k] = std::acos(std::clamp(u.z(), -1.0, 1.0));
    s.phi[k] = wrap_angle(std::atan2(u.y(), u.x()));
  }
  return s;
}

double product_expectation(const Mat8c& w, const ProductState& s) {
  const Ket8c v = s.vector();
  return (v.adjoint() * w * v)(0).real();
}

double product_expectation(const WitnessSpec& w, const ProductState& s) {
  return product_expectation(witness_matrix(w), s);
}

ProductMinimum min_over_products(const PauliOperator& op) {
  const BlochTensor t = bloch_tensor(op);
  const auto starts = fibonacci_sphere(kStartDirections);
  ProductMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  long evaluations = 0;
  std::array<Eigen::Vector3d, 3> best_n;

  auto minimize_block = [&](std::array<Eigen::Vector3d, 3>& n, int q) {
    const std::array<Bloch4, 3> h{homogeneous(n[0]), homogeneous(n[1]), homogeneous(n[2])};
    const auto [c, v] = partial_contraction(t, h, q);
    ++evaluations;
    const double norm = v.norm();
    if (norm > 0.0) n[q] = -v / norm;
    return c - norm;
  };

  for (const auto& d2 : starts) {
    for (const auto& d3 : starts) {
      std::array<Eigen::Vector3d, 3> n{Eigen::Vector3d::UnitZ(), d2, d3};
      double value = minimize_block(n, 0);
      for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        minimize_block(n, 1);
        minimize_block(n, 2);
        const double next = minimize_block(n, 0);
        const bool done = value - next <= kSweepTol;
        value = next;
        if (done) break;
      }
      if (value < best.value) {
        best.value = value;
        best_n = n;
      }
    }
  }
  best.argmin = ProductState::from_bloch(best_n);
  best.value = product_expectation(to_matrix(op), best.argmin);
  best.evaluations = evaluations;
  return best;
}

ProductMinimum min_over_products(const WitnessSpec& w) { return min_over_products(witness_operator(w)); }

WitnessSpec reference_witness(double psi) {
  return WitnessSpec{NonlinearFamilyId{-1, 3, 1, 0}, psi};
}

std::array<ProductState, 4> kernel_product_states(double psi) {
  const double h = kPi / 2.0;
  const double q = kPi / 4.0;
  auto make = [h](double p1, double p2, double p3) {
    return ProductState{{h, h, h}, {wrap_angle(p1), wrap_angle(p2), wrap_angle(p3)}};
  };
  return {
      make(psi + kPi, q, q),
      make(kPi - psi, -q, -q),
      make(psi, q, -3.0 * q),
      make(-psi, 3.0 * q, -q),
  };
}

int optimality_obstruction(double psi) {
  constexpr std::array<int, 4> kPhiBasis = {0b001, 0b101, 0b010, 0b110};
  const auto states = kernel_product_states(psi);
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i) {
    const Ket8c nu = states[i].vector();
    for (int c = 0; c < 4; ++c) m(i, c) = std::conj(nu(kPhiBasis[c]));
  }
  Eigen::FullPivLU<Eigen::Matrix4cd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

bool validate_ew(const WitnessSpec& w) {
  if (min_eigenvalue(witness_matrix(w)) >= -kNegativeEigTol) return false;
  return min_over_products(w).value >= -kProductMinTol;
}

const std::array<ValidationEntry, NonlinearFamilyId::kCount>& validation_table() {
  static const auto table = [] {
    std::array<ValidationEntry, NonlinearFamilyId::kCount> out;
    for (int k = 0; k < NonlinearFamilyId::kCount; ++k) {
      auto& e = out[k];
      e.id = NonlinearFamilyId::from_ordinal(k);
      e.valid = true;
      for (std::size_t a = 0; a < kValidationAngles.size(); ++a) {
        const WitnessSpec w{e.id, kValidationAngles[a]};
        e.min_eig[a] = min_eigenvalue(witness_matrix(w));
        e.product_min[a] = min_over_products(w).value;
        e.valid = e.valid && e.min_eig[a] < -kNegativeEigTol && e.product_min[a] >= -kProductMinTol;
      }
    }
    return out;
  }();
  return table;
}

const std::vector<NonlinearFamilyId>& validated_ids() {
  static const auto ids = [] {
    std::vector<NonlinearFamilyId> out;
    for (const auto& e : validation_table()) {
      if (e.valid) out.push_back(e.id);
    }
    return out;
  }();
  return ids;
}

}  // namespace mubw
