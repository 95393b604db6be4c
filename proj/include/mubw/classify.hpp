// Verdicts for GHZ-diagonal states: NPT, bound entanglement detected by a nonlinear witness,
// separability certified by an explicit product-state decomposition, or undecided.
#ifndef MUBW_CLASSIFY_HPP
#define MUBW_CLASSIFY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mubw/ppt.hpp"
#include "mubw/witness.hpp"

namespace mubw {

inline constexpr double kDetectTol = 1e-9;
inline constexpr double kCategoryTol = 1e-9;
inline constexpr double kReconstructionTol = 1e-10;

// ---------------------------------------------------------------------------------------
// Category equalities 1 + o r_i = r_j + s r_k.

struct CategoryHit {
  int category = 0;  // 1, 2 or 3
  int outer_sign = 1;
  int z_index = 1;
  int inner_sign = 1;
  std::array<int, 2> pair{};  // {j, k}, j < k
  std::string equality;       // e.g. "1+r1 = r4-r7"
  double residual = 0.0;      // (1 + o r_i) - (r_j + s r_k)
};

/// Category of the equality 1 + o r_i = r_j + s r_k.
int equality_category(int outer_sign, int z_index, int inner_sign, const std::array<int, 2>& pair);

/// Residual of the equality written as a signed sum over p, exact for the integer sign table.
double equality_residual(const ProbVector& p, int outer_sign, int z_index, int inner_sign,
                         const std::array<int, 2>& pair);

/// All 72 equalities with |residual| <= tol, in enumeration order (i, o, pair, s).
std::vector<CategoryHit> category_of(const ProbVector& p, double tol = kCategoryTol);

// ---------------------------------------------------------------------------------------
// Detection.

struct Detection {
  NonlinearFamilyId id;
  double value = 0.0;
};

/// Most negative nonlinear value over the validated ids, if below -tol. Ties within 1e-12 go
/// to the first id in enumeration order. Throws std::invalid_argument on NPT input.
std::optional<Detection> detect_bound(const ProbVector& p, double tol = kDetectTol);

/// The scan without the PPT precondition.
Detection best_witness(const ProbVector& p);

// ---------------------------------------------------------------------------------------
// Separability certificates.

/// A density matrix given as an explicit mixture of pure product states.
struct SeparableBlock {
  std::string description;
  std::vector<std::pair<double, Ket8c>> ensemble;

  Mat8c matrix() const;
};

/// (|k><k| + |~k><~k|)/2 for pair k in 0..3, i.e. the even mix of psi_{2k+1} and psi_{2k+2}.
SeparableBlock pair_mixture(int k);
/// III/8.
SeparableBlock maximally_mixed();
/// (III + sign O_j)/8, j in 4..7: a product state with <O_j> = sign twirled by the eight
/// local Pauli operators of the GHZ stabilizer group.
SeparableBlock stabilizer_vertex(int j, int sign);
/// (III + sign (|k><~k| + |~k><k|))/8: sixteen equatorial product states whose phases cancel
/// every coherence except the one between |k> and its complement.
SeparableBlock coherent_block(int k, int sign);

struct CertificateTerm {
  double weight = 0.0;
  SeparableBlock block;
};

struct SeparableCertificate {
  std::string pattern;  // "pairs", "single-coherence" or "category"
  std::vector<CertificateTerm> terms;
  double reconstruction_error = 0.0;

  Mat8c matrix() const;
  double weight_sum() const;
  std::size_t product_state_count() const;
};

/// Tries, in order: (a) a vanishing pair with every pair internally balanced; (b) at most one
/// unbalanced pair; (c) a category equality with the complementary arm vanishing. Returns the
/// first certificate; throws std::logic_error if a built certificate fails to reconstruct p.
std::optional<SeparableCertificate> certify_separable(const ProbVector& p);

/// Individual patterns, exposed for testing. They do not check reconstruction.
std::optional<SeparableCertificate> certify_pairs(const ProbVector& p);
std::optional<SeparableCertificate> certify_single_coherence(const ProbVector& p);
std::optional<SeparableCertificate> certify_category(const ProbVector& p);

// ---------------------------------------------------------------------------------------

enum class VerdictKind { NPT, BoundDetected, SeparableCertified, PptUndecided };

std::string to_string(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::PptUndecided;
  PptReport ppt;
  std::optional<Detection> detection;
  std::optional<SeparableCertificate> certificate;
};

/// Throws std::logic_error if a state is both detected and certified separable.
Verdict classify(const ProbVector& p, double tol = kPptTol);

/// (p1, p2, p, 0, p, 0, p, 0) with p = (1 - p1 - p2)/3.
ProbVector cat1_special(double p1, double p2);

}  // namespace mubw

#endif  // MUBW_CLASSIFY_HPP
