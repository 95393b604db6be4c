// The linear witness family W(psi), its nonlinear envelope and the product-state minimum.
//
//   W = III + o Z_i + cos(psi) (O_j + s O_k) + sin(psi) (O_l + s O_m)
//
// with o, s in {+1, -1}, Z_i the operator carrying r_i (ZZI, ZIZ, IZZ) and {j,k}, {l,m} a split
// of {4,5,6,7}. Minimizing over psi gives 1 + o r_i - hypot(r_j + s r_k, r_l + s r_m).
#ifndef MUBW_WITNESS_HPP
#define MUBW_WITNESS_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mubw/pauli.hpp"

namespace mubw {

/// The three ways of splitting {4,5,6,7}; the pair holding 4 always takes the cosine.
inline constexpr std::array<std::array<std::array<int, 2>, 2>, 3> kPartitions = {{
    {{{4, 5}, {6, 7}}},
    {{{4, 6}, {5, 7}}},
    {{{4, 7}, {5, 6}}},
}};

struct NonlinearFamilyId {
  int outer_sign = 1;  // +1 or -1
  int z_index = 1;     // 1, 2 or 3
  int inner_sign = 1;  // +1 or -1
  int partition = 0;   // index into kPartitions

  static constexpr int kCount = 36;

  /// Position in the fixed enumeration: outer (+, -), z index, inner (+, -), partition.
  int ordinal() const;
  static NonlinearFamilyId from_ordinal(int k);
  static const std::array<NonlinearFamilyId, kCount>& all();

  const std::array<int, 2>& cos_pair() const { return kPartitions[partition][0]; }
  const std::array<int, 2>& sin_pair() const { return kPartitions[partition][1]; }

  /// Compact text such as "+1:-47:56": outer sign and z index, inner sign and cos pair, sin pair.
  std::string str() const;
  static NonlinearFamilyId parse(std::string_view text);

  friend bool operator==(const NonlinearFamilyId&, const NonlinearFamilyId&) = default;
};

struct WitnessSpec {
  NonlinearFamilyId id;
  double psi = 0.0;
};

/// Real combination of Pauli strings.
struct PauliTerm {
  double coeff;
  PauliString string;
};
using PauliOperator = std::vector<PauliTerm>;

PauliOperator witness_operator(const WitnessSpec& w);
Mat8c to_matrix(const PauliOperator& op);
Mat8c witness_matrix(const WitnessSpec& w);

/// Closed form 1 + o r_i + cos(psi) (r_j + s r_k) + sin(psi) (r_l + s r_m).
double expectation(const WitnessSpec& w, const RVector& r);
double expectation(const WitnessSpec& w, const ProbVector& p);

/// (r_j + s r_k, r_l + s r_m): the vector the psi-dependent part is a projection of.
std::array<double, 2> envelope_arm(const NonlinearFamilyId& id, const RVector& r);

double nonlinear_value(const NonlinearFamilyId& id, const RVector& r);
double nonlinear_value(const NonlinearFamilyId& id, const ProbVector& p);

/// atan2(b, a) + pi in [0, 2 pi); 0 when the arm vanishes.
double optimal_psi(const NonlinearFamilyId& id, const RVector& r);

// ---------------------------------------------------------------------------------------
// Product states.

/// Qubit q is cos(theta_q/2)|0> + exp(i phi_q) sin(theta_q/2)|1>.
struct ProductState {
  std::array<double, 3> theta{};
  std::array<double, 3> phi{};

  Ket8c vector() const;
  /// Bloch vector (x, y, z) of one qubit, q in 0..2.
  Eigen::Vector3d bloch(int q) const;
  static ProductState from_bloch(const std::array<Eigen::Vector3d, 3>& n);
};

double product_expectation(const Mat8c& w, const ProductState& s);
double product_expectation(const WitnessSpec& w, const ProductState& s);

struct ProductMinimum {
  double value = 0.0;
  ProductState argmin;
  long evaluations = 0;
};

/// Global minimum of <nu|op|nu> over product states.
///
/// The expectation is affine in each qubit's Bloch vector, so minimizing over one qubit with
/// the others fixed is exact (const - |v|). Alternating these block minimizations from a fixed
/// set of starting directions for qubits 2 and 3 converges to the global minimum; the
/// reported value is re-evaluated from the realized product vector.
ProductMinimum min_over_products(const PauliOperator& op);
ProductMinimum min_over_products(const WitnessSpec& w);

/// III - IZZ + cos(psi)(XXX + XYY) + sin(psi)(YXY + YYX).
WitnessSpec reference_witness(double psi);

/// The four kernel product states of reference_witness(psi) (theta = pi/2 on every qubit).
std::array<ProductState, 4> kernel_product_states(double psi);

/// Rank of the 4x4 system <nu_i|Phi> = 0 over Phi = a1|001> + a2|101> + b1|010> + b2|110>.
int optimality_obstruction(double psi);

inline constexpr double kProductMinTol = 1e-6;
inline constexpr double kNegativeEigTol = 1e-8;

/// Nonnegative on product states and at least one negative eigenvalue.
bool validate_ew(const WitnessSpec& w);

/// Angles at which every family member is validated before the classifier trusts it.
inline constexpr std::array<double, 3> kValidationAngles = {0.52359877559829887, 0.78539816339744831,
                                                            1.0471975511965976};

struct ValidationEntry {
  NonlinearFamilyId id;
  std::array<double, 3> product_min{};
  std::array<double, 3> min_eig{};
  bool valid = false;
};

/// Validation of all 36 ids at kValidationAngles; computed once.
const std::array<ValidationEntry, NonlinearFamilyId::kCount>& validation_table();
const std::vector<NonlinearFamilyId>& validated_ids();

}  // namespace mubw

#endif  // MUBW_WITNESS_HPP
