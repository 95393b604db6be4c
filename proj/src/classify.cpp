#include "mubw/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace mubw {

namespace {

constexpr double kMatchTol = 1e-12;
constexpr std::array<std::array<int, 2>, 6> kArmPairs = {{{4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}}};

std::array<int, 2> complement(const std::array<int, 2>& pair) {
  std::array<int, 2> out{};
  int n = 0;
  for (int j = 4; j <= 7; ++j) {
    if (j != pair[0] && j != pair[1]) out[n++] = j;
  }
  return out;
}

std::string equality_text(int o, int i, int s, const std::array<int, 2>& pair) {
  auto sign = [](int v) { return v > 0 ? '+' : '-'; };
  std::string t = "1";
  t += sign(o);
  t += "r" + std::to_string(i) + " = r" + std::to_string(pair[0]);
  t += sign(s);
  t += "r" + std::to_string(pair[1]);
  return t;
}

bool balanced(const ProbVector& p, int k) { return std::abs(p[2 * k] - p[2 * k + 1]) <= kMatchTol; }

Ket8c basis_ket(int index) {
  Ket8c v = Ket8c::Zero();
  v(index) = 1.0;
  return v;
}

Ket8c product_ket(const std::array<Eigen::Vector2cd, 3>& q) {
  Ket8c v;
  for (int i = 0; i < kDim; ++i) v(i) = q[0](i >> 2) * q[1]((i >> 1) & 1) * q[2](i & 1);
  return v;
}

Eigen::Vector2cd equator(double phi) {
  Eigen::Vector2cd v;
  v << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), phi);
  return v;
}

void add_term(SeparableCertificate& cert, double weight, SeparableBlock block) {
  if (weight < -kMatchTol) throw std::logic_error("separable certificate: negative weight");
  if (weight <= kMatchTol * 1e-3) return;
  cert.terms.push_back({weight, std::move(block)});
}

double reconstruction_error(const SeparableCertificate& cert, const ProbVector& p) {
  return (cert.matrix() - density_from_p(p)).cwiseAbs().maxCoeff();
}

}  // namespace

int equality_category(int outer_sign, int z_index, int inner_sign, const std::array<int, 2>& pair) {
  // For each i one partition is special; the rest of the arms give category 2.
  const auto& special = kPartitions[3 - z_index];
  if (pair != special[0] && pair != special[1]) return 2;
  const int twist = pair[0] == 4 ? -1 : 1;
  return inner_sign == outer_sign * twist ? 1 : 3;
}

double equality_residual(const ProbVector& p, int outer_sign, int z_index, int inner_sign,
                         const std::array<int, 2>& pair) {
  const auto& h = sign_table();
  double lhs = 0.0;
  double rhs = 0.0;
  for (int k = 0; k < 8; ++k) {
    lhs += (1 + outer_sign * h(z_index, k)) * p[k];
    rhs += (h(pair[0], k) + inner_sign * h(pair[1], k)) * p[k];
  }
  return lhs - rhs;
}

std::vector<CategoryHit> category_of(const ProbVector& p, double tol) {
  std::vector<CategoryHit> hits;
  for (int i = 1; i <= 3; ++i) {
    for (int o : {1, -1}) {
      for (const auto& pair : kArmPairs) {
        for (int s : {1, -1}) {
          const double res = equality_residual(p, o, i, s, pair);
          if (std::abs(res) > tol) continue;
          hits.push_back({equality_category(o, i, s, pair), o, i, s, pair, equality_text(o, i, s, pair), res});
        }
      }
    }
  }
  return hits;
}

Detection best_witness(const ProbVector& p) {
  const RVector r = r_from_p(p);
  const auto& ids = validated_ids();
  if (ids.empty()) throw std::logic_error("no witness passed validation");
  Detection best{ids.front(), nonlinear_value(ids.front(), r)};
  for (const auto& id : ids) {
    const double v = nonlinear_value(id, r);
    if (v < best.value - 1e-12) best = {id, v};
  }
  return best;
}

std::optional<Detection> detect_bound(const ProbVector& p, double tol) {
  if (!ppt_inequalities(p).pass) throw std::invalid_argument("detect_bound: state is not PPT");
  const Detection best = best_witness(p);
  if (best.value < -tol) return best;
  return std::nullopt;
}

Mat8c SeparableBlock::matrix() const {
  Mat8c m = Mat8c::Zero();
  for (const auto& [w, v] : ensemble) m += w * v * v.adjoint();
  return m;
}

SeparableBlock pair_mixture(int k) {
  return {"pair " + std::to_string(k + 1) + " mixture", {{0.5, basis_ket(k)}, {0.5, basis_ket(7 - k)}}};
}

SeparableBlock maximally_mixed() {
  SeparableBlock b{"maximally mixed", {}};
  for (int i = 0; i < kDim; ++i) b.ensemble.emplace_back(1.0 / kDim, basis_ket(i));
  return b;
}

SeparableBlock stabilizer_vertex(int j, int sign) {
  if (j < 4 || j > 7) throw std::invalid_argument("stabilizer_vertex: j must be in 4..7");
  const auto& labels = correlation_observable(j).labels;
  std::array<Eigen::Vector2cd, 3> q;
  for (int k = 0; k < 3; ++k) {
    const double phase = labels[k] == Pauli::X ? 0.0 : std::numbers::pi / 2.0;
    q[k] = equator(k == 0 && sign < 0 ? phase + std::numbers::pi : phase);
  }
  const Ket8c base = product_ket(q);
  SeparableBlock b{std::string("vertex ") + (sign > 0 ? "+" : "-") + correlation_observable(j).str(), {}};
  for (int g = 0; g < kDim; ++g) {
    b.ensemble.emplace_back(1.0 / kDim, pauli_matrix(correlation_observable(g)) * base);
  }
  return b;
}

SeparableBlock coherent_block(int k, int sign) {
  if (k < 0 || k > 3) throw std::invalid_argument("coherent_block: pair index must be in 0..3");
  const std::array<int, 3> d{2 * ((k >> 2) & 1) - 1, 2 * ((k >> 1) & 1) - 1, 2 * (k & 1) - 1};
  const double theta0 = sign > 0 ? 0.0 : std::numbers::pi;
  SeparableBlock b{std::string("coherence ") + (sign > 0 ? "+" : "-") + " pair " + std::to_string(k + 1), {}};
  for (int a = 0; a < 4; ++a) {
    for (int c = 0; c < 4; ++c) {
      const double phi1 = a * std::numbers::pi / 2.0;
      const double phi2 = c * std::numbers::pi / 2.0;
      const double phi3 = d[2] * (theta0 - d[0] * phi1 - d[1] * phi2);
      b.ensemble.emplace_back(1.0 / 16.0, product_ket({equator(phi1), equator(phi2), equator(phi3)}));
    }
  }
  return b;
}

Mat8c SeparableCertificate::matrix() const {
  Mat8c m = Mat8c::Zero();
  for (const auto& t : terms) m += t.weight * t.block.matrix();
  return m;
}

double SeparableCertificate::weight_sum() const {
  return std::accumulate(terms.begin(), terms.end(), 0.0, [](double s, const auto& t) { return s + t.weight; });
}

std::size_t SeparableCertificate::product_state_count() const {
  std::size_t n = 0;
  for (const auto& t : terms) n += t.block.ensemble.size();
  return n;
}

std::optional<SeparableCertificate> certify_pairs(const ProbVector& p) {
  bool has_zero = false;
  for (int k = 0; k < 4; ++k) {
    if (!balanced(p, k)) return std::nullopt;
    has_zero = has_zero || p.pair_sum(k) <= kMatchTol;
  }
  if (!has_zero) return std::nullopt;
  SeparableCertificate cert{"pairs", {}, 0.0};
  for (int k = 0; k < 4; ++k) add_term(cert, p.pair_sum(k), pair_mixture(k));
  return cert;
}

std::optional<SeparableCertificate> certify_single_coherence(const ProbVector& p) {
  int u = -1;
  for (int k = 0; k < 4; ++k) {
    if (balanced(p, k)) continue;
    if (u >= 0) return std::nullopt;
    u = k;
  }
  if (u < 0) u = 0;
  const double plus = p[2 * u];
  const double minus = p[2 * u + 1];
  const int sign = plus >= minus ? 1 : -1;
  const double pmin = std::min(plus, minus);
  const double pmax = std::max(plus, minus);
  std::array<double, 4> q{};
  double qmin = 1.0;
  for (int k = 0; k < 4; ++k) {
    if (k == u) continue;
    q[k] = p.pair_sum(k) / 2.0;
    qmin = std::min(qmin, q[k]);
  }
  const double eps = (pmin + 2.0 * qmin - pmax) / 2.0;
  if (eps < -kMatchTol) return std::nullopt;

  SeparableCertificate cert{"single-coherence", {}, 0.0};
  const double shift = std::max(0.0, eps - pmin);
  add_term(cert, 8.0 * std::clamp(std::min(eps, pmin), 0.0, 1.0), maximally_mixed());
  add_term(cert, 2.0 * std::max(0.0, pmin - eps), pair_mixture(u));
  add_term(cert, 8.0 * (qmin - std::max(eps, 0.0)), coherent_block(u, sign));
  for (int k = 0; k < 4; ++k) {
    if (k != u) add_term(cert, 2.0 * (q[k] - qmin + shift), pair_mixture(k));
  }
  return cert;
}

std::optional<SeparableCertificate> certify_category(const ProbVector& p) {
  const RVector r = r_from_p(p);
  bool gated = false;
  for (const auto& hit : category_of(p, kCategoryTol)) {
    const auto rest = complement(hit.pair);
    if (std::abs(r.r(rest[0]) + hit.inner_sign * r.r(rest[1])) <= kCategoryTol) {
      gated = true;
      break;
    }
  }
  if (!gated) return std::nullopt;

  double l1 = 0.0;
  for (int j = 4; j <= 7; ++j) l1 += std::abs(r.r(j));
  std::array<double, 4> mu{};
  for (int k = 0; k < 4; ++k) {
    mu[k] = p.pair_sum(k) - l1 / 4.0;
    if (mu[k] < -kMatchTol) return std::nullopt;
  }
  SeparableCertificate cert{"category", {}, 0.0};
  for (int j = 4; j <= 7; ++j) {
    const double rj = r.r(j);
    add_term(cert, std::abs(rj), stabilizer_vertex(j, rj >= 0.0 ? 1 : -1));
  }
  for (int k = 0; k < 4; ++k) add_term(cert, std::max(0.0, mu[k]), pair_mixture(k));
  return cert;
}

std::optional<SeparableCertificate> certify_separable(const ProbVector& p) {
  for (auto attempt : {certify_pairs, certify_single_coherence, certify_category}) {
    auto cert = attempt(p);
    if (!cert) continue;
    cert->reconstruction_error = reconstruction_error(*cert, p);
    if (cert->reconstruction_error > kReconstructionTol || std::abs(cert->weight_sum() - 1.0) > kReconstructionTol) {
      throw std::logic_error("separable certificate (" + cert->pattern + ") does not reconstruct the state");
    }
    return cert;
  }
  return std::nullopt;
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::NPT: return "NPT";
    case VerdictKind::BoundDetected: return "BoundDetected";
    case VerdictKind::SeparableCertified: return "SeparableCertified";
    case VerdictKind::PptUndecided: return "PptUndecided";
  }
  return "?";
}

Verdict classify(const ProbVector& p, double tol) {
  Verdict v;
  v.ppt = is_ppt(p, tol);
  if (!v.ppt.pass) {
    v.kind = VerdictKind::NPT;
    return v;
  }
  v.detection = detect_bound(p, kDetectTol);
  v.certificate = certify_separable(p);
  if (v.detection && v.certificate) {
    throw std::logic_error("state is both detected by " + v.detection->id.str() + " and certified separable");
  }
  if (v.detection) v.kind = VerdictKind::BoundDetected;
  else if (v.certificate) v.kind = VerdictKind::SeparableCertified;
  else v.kind = VerdictKind::PptUndecided;
  return v;
}

ProbVector cat1_special(double p1, double p2) {
  constexpr double eps = 1e-12;
  if (!(p1 >= -eps && p2 >= -eps && p1 + p2 <= 1.0 + eps)) {
    throw std::invalid_argument("cat1_special: need p1, p2 >= 0 and p1 + p2 <= 1");
  }
  p1 = std::max(0.0, p1);
  p2 = std::max(0.0, p2);
  const double rest = std::max(0.0, (1.0 - p1 - p2) / 3.0);
  Vec8 p;
  p << p1, p2, rest, 0.0, rest, 0.0, rest, 0.0;
  return ProbVector(p);
}

}  // namespace mubw
