#include "mubw/batch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <thread>

#include "mubw/linalg.hpp"
#include "mubw/mub.hpp"

namespace mubw {

namespace {

// Runs compute(c) for c in [0, n_chunks) on up to `threads` workers and hands the results to
// consume() in chunk order.
template <typename Compute, typename Consume>
void ordered_chunks(std::uint64_t n_chunks, unsigned threads, Compute compute, Consume consume) {
  using Result = decltype(compute(std::uint64_t{0}));
  threads = std::max(1u, threads);
  for (std::uint64_t first = 0; first < n_chunks; first += threads) {
    const std::uint64_t count = std::min<std::uint64_t>(threads, n_chunks - first);
    std::vector<Result> results(count);
    if (count == 1) {
      results[0] = compute(first);
    } else {
      std::vector<std::thread> workers;
      workers.reserve(count);
      for (std::uint64_t k = 0; k < count; ++k) {
        workers.emplace_back([&, k] { results[k] = compute(first + k); });
      }
      for (auto& w : workers) w.join();
    }
    for (auto& r : results) consume(std::move(r));
  }
}

std::uint64_t chunk_count(std::uint64_t n) { return (n + kChunkSize - 1) / kChunkSize; }

std::uint64_t chunk_length(std::uint64_t n, std::uint64_t c) { return std::min(kChunkSize, n - c * kChunkSize); }

struct ChunkTally {
  SampleReport report;
  Vec8 sum = Vec8::Zero();
  Vec8 sum_sq = Vec8::Zero();
  std::vector<SampleRecord> records;
};

void tally(SampleReport& r, VerdictKind kind) {
  ++r.n_total;
  switch (kind) {
    case VerdictKind::NPT: ++r.n_npt; break;
    case VerdictKind::BoundDetected: ++r.n_detected; break;
    case VerdictKind::SeparableCertified: ++r.n_certified_separable; break;
    case VerdictKind::PptUndecided: ++r.n_undecided; break;
  }
  if (kind != VerdictKind::NPT) ++r.n_ppt;
}

std::string count_detail(std::uint64_t checks, std::uint64_t failures) {
  std::ostringstream out;
  out << checks << " checks, " << failures << " failures";
  return out.str();
}

SuiteResult finish(std::string name, std::uint64_t checks, std::uint64_t failures, std::string extra = {}) {
  SuiteResult r{std::move(name), failures == 0 && checks > 0, checks, failures, count_detail(checks, failures)};
  if (!extra.empty()) r.detail += "; " + extra;
  return r;
}

SuiteResult suite_oracle(const VerifyOptions& opt) {
  constexpr int n = 20000;
  std::mt19937_64 rng(chunk_seed(opt.seed, 0));
  std::uint64_t failures = 0;
  for (int k = 0; k < n; ++k) {
    const ProbVector p = sample_simplex(rng);
    Vec8 q = p.values();
    if (opt.inject_fault) std::swap(q(1), q(2));
    const auto values = ppt_inequalities(q);
    const bool ineq = *std::min_element(values.begin(), values.end()) >= -opt.tol;
    const auto eigs = partial_transpose_min_eigs(density_from_p(p));
    const bool eig = *std::min_element(eigs.begin(), eigs.end()) >= -opt.tol;
    if (ineq != eig) ++failures;
  }
  return finish("oracle", n, failures, opt.inject_fault ? "fault injected" : "");
}

SuiteResult suite_envelope(const VerifyOptions& opt) {
  constexpr int n_states = 200;
  constexpr int n_psi = 10000;
  std::vector<double> cs(n_psi), sn(n_psi);
  for (int t = 0; t < n_psi; ++t) {
    const double psi = 2.0 * std::numbers::pi * t / n_psi;
    cs[t] = std::cos(psi);
    sn[t] = std::sin(psi);
  }
  std::mt19937_64 rng(chunk_seed(opt.seed, 1));
  std::uint64_t checks = 0, failures = 0;
  double worst = 0.0;
  for (int k = 0; k < n_states; ++k) {
    const RVector r = r_from_p(sample_simplex(rng));
    for (const auto& id : NonlinearFamilyId::all()) {
      const auto [a, b] = envelope_arm(id, r);
      const double base = 1.0 + id.outer_sign * r.r(id.z_index);
      double best = std::numeric_limits<double>::infinity();
      for (int t = 0; t < n_psi; ++t) best = std::min(best, base + cs[t] * a + sn[t] * b);
      const double gap = std::abs(best - nonlinear_value(id, r));
      worst = std::max(worst, gap);
      ++checks;
      if (gap > 1e-6) ++failures;
    }
  }
  std::ostringstream extra;
  extra << "max gap " << worst;
  return finish("envelope", checks, failures, extra.str());
}

/// True when every coefficient of the residual in p is nonnegative.
bool face_residual(int o, int i, int s, const std::array<int, 2>& arm) {
  const auto& h = sign_table();
  for (int k = 0; k < 8; ++k) {
    if ((1 + o * h(i, k)) - (h(arm[0], k) + s * h(arm[1], k)) < 0) return false;
  }
  return true;
}

SuiteResult suite_identities(const VerifyOptions& opt) {
  constexpr int n = 10000;
  constexpr std::array<std::array<int, 2>, 6> arms = {{{4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}}};
  std::mt19937_64 rng(chunk_seed(opt.seed, 2));
  std::uint64_t checks = 0, failures = 0;
  for (int k = 0; k < n; ++k) {
    const ProbVector p = sample_simplex(rng);
    const RVector r = r_from_p(p);
    const ProbVector back = p_from_r(r);
    ++checks;
    if ((back.values() - p.values()).cwiseAbs().maxCoeff() > 1e-14) ++failures;
    const bool ppt = ppt_inequalities(p).pass;
    for (int i = 1; i <= 3; ++i) {
      for (int o : {1, -1}) {
        for (const auto& arm : arms) {
          for (int s : {1, -1}) {
            const double direct = (1.0 + o * r.r(i)) - (r.r(arm[0]) + s * r.r(arm[1]));
            const double via_p = equality_residual(p, o, i, s, arm);
            ++checks;
            if (std::abs(direct - via_p) > 1e-12) ++failures;
            if (!ppt && !face_residual(o, i, s, arm)) continue;
            ++checks;
            if (via_p < -1e-12) ++failures;
          }
        }
      }
    }
  }
  return finish("identities", checks, failures);
}

SuiteResult suite_witness_table(const VerifyOptions&) {
  std::uint64_t failures = 0;
  double worst_product = 0.0;
  for (const auto& e : validation_table()) {
    if (!e.valid) ++failures;
    for (double v : e.product_min) worst_product = std::min(worst_product, v);
  }
  std::ostringstream extra;
  extra << validated_ids().size() << " of 36 ids valid, lowest product minimum " << worst_product;
  return finish("witness-table", NonlinearFamilyId::kCount, failures, extra.str());
}

SuiteResult suite_soundness(const VerifyOptions& opt) {
  constexpr int n = 2000;
  std::mt19937_64 rng(chunk_seed(opt.seed, 3));
  std::uint64_t checks = 0, failures = 0;
  for (auto family : {SeparableFamily::Pairs, SeparableFamily::SingleCoherence, SeparableFamily::Category}) {
    for (int k = 0; k < n; ++k) {
      const ProbVector p = random_separable(family, rng);
      const auto cert = certify_separable(p);
      checks += 2;
      if (!cert || cert->reconstruction_error > kReconstructionTol) ++failures;
      if (best_witness(p).value < -kDetectTol) ++failures;
    }
  }
  return finish("soundness", checks, failures);
}

SuiteResult suite_mub(const VerifyOptions&) {
  const auto& table = mub_table();
  std::array<Basis8, 9> bases;
  for (int k = 0; k < 9; ++k) bases[k] = common_eigenbasis(table[k]);
  std::uint64_t checks = 0, failures = 0;
  for (int a = 0; a < 9; ++a) {
    for (int b = a + 1; b < 9; ++b) {
      ++checks;
      if (!unbiasedness(bases[a], bases[b])) ++failures;
    }
  }
  const auto& ghz = ghz_basis();
  for (const auto& v : bases[5]) {
    int hits = 0;
    for (const auto& g : ghz) hits += std::abs(std::abs(g.dot(v)) - 1.0) < 1e-10;
    ++checks;
    if (hits != 1) ++failures;
  }
  const std::array<LocalUnitary, 3> none{};
  const auto mapped = transform_row(table[5], none, std::array<LabelMap, 3>{kCyclicLabels, kCyclicLabels, kCyclicLabels});
  ++checks;
  if (match_row(mapped.row) != 3) ++failures;
  return finish("mub", checks, failures);
}

SuiteResult suite_projection(const VerifyOptions&) {
  constexpr int grid = 12;
  std::uint64_t checks = 0, failures = 0;
  for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}}) {
    const auto fast = project_region(a, b, grid, ScanMode::ColumnInterval);
    const auto slow = project_region(a, b, grid, ScanMode::PerPoint);
    for (std::size_t k = 0; k < fast.cells.size(); ++k) {
      ++checks;
      if (fast.cells[k] != slow.cells[k]) ++failures;
    }
  }
  return finish("projection", checks, failures);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) { return splitmix64(seed ^ chunk); }

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ProbVector sample_simplex(std::mt19937_64& rng) {
  Vec8 e;
  for (int i = 0; i < 8; ++i) e(i) = -std::log1p(-uniform01(rng));
  return ProbVector(e / e.sum());
}

unsigned worker_count() {
  if (const char* env = std::getenv("MUBW_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double SampleReport::fraction_detected_of_ppt() const {
  return n_ppt == 0 ? 0.0 : static_cast<double>(n_detected) / static_cast<double>(n_ppt);
}

double SampleReport::fraction_ppt() const {
  return n_total == 0 ? 0.0 : static_cast<double>(n_ppt) / static_cast<double>(n_total);
}

SampleReport run_sample(std::uint64_t n, std::uint64_t seed, unsigned threads, const RecordSink& sink, double tol) {
  if (n == 0) throw std::invalid_argument("run_sample: n must be at least 1");
  const bool keep = static_cast<bool>(sink);
  SampleReport total;
  total.seed = seed;
  Vec8 sum = Vec8::Zero();
  Vec8 sum_sq = Vec8::Zero();

  auto compute = [&](std::uint64_t c) {
    ChunkTally t;
    std::mt19937_64 rng(chunk_seed(seed, c));
    const std::uint64_t len = chunk_length(n, c);
    if (keep) t.records.reserve(len);
    for (std::uint64_t k = 0; k < len; ++k) {
      const ProbVector p = sample_simplex(rng);
      const Verdict v = classify(p, tol);
      tally(t.report, v.kind);
      if (v.detection) ++t.report.detections_by_witness[v.detection->id.ordinal()];
      t.sum += p.values();
      t.sum_sq += p.values().cwiseAbs2();
      if (keep) {
        SampleRecord rec{p.values(), v.kind, std::nullopt};
        if (v.kind != VerdictKind::NPT) rec.best = v.detection ? *v.detection : best_witness(p);
        t.records.push_back(std::move(rec));
      }
    }
    return t;
  };
  auto consume = [&](ChunkTally&& t) {
    const auto& r = t.report;
    total.n_total += r.n_total;
    total.n_npt += r.n_npt;
    total.n_ppt += r.n_ppt;
    total.n_detected += r.n_detected;
    total.n_certified_separable += r.n_certified_separable;
    total.n_undecided += r.n_undecided;
    for (int k = 0; k < NonlinearFamilyId::kCount; ++k) total.detections_by_witness[k] += r.detections_by_witness[k];
    sum += t.sum;
    sum_sq += t.sum_sq;
    for (const auto& rec : t.records) sink(rec);
  };
  ordered_chunks(chunk_count(n), threads, compute, consume);

  const double dn = static_cast<double>(total.n_total);
  total.p_mean = sum / dn;
  total.p_var = (sum_sq / dn - total.p_mean.cwiseAbs2()).cwiseMax(0.0);
  return total;
}

const std::vector<std::string>& plane_names() {
  static const std::vector<std::string> names = {"p1p2", "p1p3", "p3p4", "p2p4", "p5p6", "p7p8", "cat1-triangle"};
  return names;
}

Plane parse_plane(const std::string& name) {
  if (name == "cat1-triangle") return {name, PlaneKind::Cat1Triangle, 0, 1};
  if (name.size() == 4 && name[0] == 'p' && name[2] == 'p') {
    const int a = name[1] - '1';
    const int b = name[3] - '1';
    if (std::find(plane_names().begin(), plane_names().end(), name) != plane_names().end()) {
      return {name, PlaneKind::Coordinates, a, b};
    }
  }
  throw std::invalid_argument("unknown plane '" + name + "'");
}

RegionScan scan_region(const Plane& plane, int grid, std::uint64_t n_samples, std::uint64_t seed, unsigned threads) {
  if (grid < 2) throw std::invalid_argument("scan_region: grid must be at least 2");
  RegionScan scan{plane, grid, std::vector<RegionCell>(static_cast<std::size_t>(grid) * grid)};
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      auto& cell = scan.cells[static_cast<std::size_t>(i) * grid + j];
      cell.i = i;
      cell.j = j;
      cell.x = static_cast<double>(i) / grid;
      cell.y = static_cast<double>(j) / grid;
    }
  }

  auto add = [](RegionCell& cell, VerdictKind kind) {
    ++cell.n_samples;
    switch (kind) {
      case VerdictKind::NPT: ++cell.n_npt; break;
      case VerdictKind::BoundDetected: ++cell.n_detected; break;
      case VerdictKind::SeparableCertified: ++cell.n_separable; break;
      case VerdictKind::PptUndecided: ++cell.n_undecided; break;
    }
  };

  if (plane.kind == PlaneKind::Cat1Triangle) {
    for (auto& cell : scan.cells) {
      if (cell.i + cell.j > grid) continue;
      const Verdict v = classify(cat1_special(cell.x, cell.y));
      cell.feasible = v.ppt.pass;
      add(cell, v.kind);
    }
    return scan;
  }

  const RegionGrid region = project_region(plane.a, plane.b, grid, ScanMode::ColumnInterval);
  for (auto& cell : scan.cells) cell.feasible = region.feasible(cell.i, cell.j);
  if (n_samples == 0) return scan;

  using Hits = std::vector<std::pair<std::size_t, VerdictKind>>;
  auto compute = [&](std::uint64_t c) {
    Hits hits;
    std::mt19937_64 rng(chunk_seed(seed, c));
    const std::uint64_t len = chunk_length(n_samples, c);
    hits.reserve(len);
    for (std::uint64_t k = 0; k < len; ++k) {
      const ProbVector p = sample_simplex(rng);
      const int i = std::min(grid - 1, static_cast<int>(p[plane.a] * grid));
      const int j = std::min(grid - 1, static_cast<int>(p[plane.b] * grid));
      hits.emplace_back(static_cast<std::size_t>(i) * grid + j, classify(p).kind);
    }
    return hits;
  };
  auto consume = [&](Hits&& hits) {
    for (const auto& [index, kind] : hits) add(scan.cells[index], kind);
  };
  ordered_chunks(chunk_count(n_samples), threads, compute, consume);
  return scan;
}

ProbVector random_separable(SeparableFamily family, std::mt19937_64& rng) {
  auto expo = [&rng] { return -std::log1p(-uniform01(rng)); };
  auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

  switch (family) {
    case SeparableFamily::Pairs: {
      const int zero = pick(4);
      Vec8 p = Vec8::Zero();
      for (int k = 0; k < 4; ++k) {
        if (k == zero) continue;
        p(2 * k) = p(2 * k + 1) = expo();
      }
      return ProbVector(p / p.sum());
    }
    case SeparableFamily::SingleCoherence: {
      const int u = pick(4);
      Vec8 p = Vec8::Zero();
      double qmin = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 4; ++k) {
        if (k == u) continue;
        p(2 * k) = p(2 * k + 1) = expo();
        qmin = std::min(qmin, p(2 * k));
      }
      const double pmin = expo();
      const double pmax = pmin + uniform01(rng) * 2.0 * qmin;
      const bool flip = (rng() & 1) != 0;
      p(2 * u) = flip ? pmin : pmax;
      p(2 * u + 1) = flip ? pmax : pmin;
      return ProbVector(p / p.sum());
    }
    case SeparableFamily::Category: {
      constexpr std::array<std::array<int, 2>, 6> arms = {{{4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}}};
      const auto& h = sign_table();
      for (int attempt = 0; attempt < 100000; ++attempt) {
        Vec8 p = Vec8::Zero();
        if (pick(3) == 0) {
          // 1 + r1 = r4 + r6 with r5 + r7 = 0.
          const double p1 = expo(), p2 = expo(), p6 = expo(), p8 = expo();
          const double p5 = p6 + p1 - p2;
          if (p5 < 0.0) continue;
          p << p1, p2, p1 + p2, 0.0, p5, p6, p1 + p2 + p8, p8;
        } else {
          const int i = 1 + pick(3);
          const int o = pick(2) == 0 ? 1 : -1;
          const int s = pick(2) == 0 ? 1 : -1;
          const auto arm = arms[pick(6)];
          std::array<int, 2> rest{};
          for (int j = 4, n = 0; j <= 7; ++j) {
            if (j != arm[0] && j != arm[1]) rest[n++] = j;
          }
          // Faces with a nonnegative residual: zero every p with a positive coefficient.
          bool face = true;
          for (int k = 0; k < 8; ++k) {
            const int coeff = (1 + o * h(i, k)) - (h(arm[0], k) + s * h(arm[1], k));
            if (coeff < 0) face = false;
            if (coeff == 0) p(k) = expo();
          }
          if (!face) continue;
          // Balance r_l + s r_m to zero.
          double pos = 0.0, neg = 0.0;
          for (int k = 0; k < 8; ++k) {
            const int c = h(rest[0], k) + s * h(rest[1], k);
            if (c > 0) pos += c * p(k);
            if (c < 0) neg -= c * p(k);
          }
          for (int k = 0; k < 8; ++k) {
            const int c = h(rest[0], k) + s * h(rest[1], k);
            if (c > 0) p(k) = pos > 0.0 && neg > 0.0 ? p(k) * neg / pos : 0.0;
          }
          if (neg > 0.0 && pos == 0.0) {
            for (int k = 0; k < 8; ++k) {
              if (h(rest[0], k) + s * h(rest[1], k) < 0) p(k) = 0.0;
            }
          }
        }
        if (p.sum() <= 0.0) continue;
        const ProbVector state(p / p.sum());
        if (!ppt_inequalities(state).pass) continue;
        if (certify_category(state)) return state;
      }
      throw std::runtime_error("random_separable: no category state found");
    }
  }
  throw std::invalid_argument("random_separable: unknown family");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"oracle",    "envelope", "identities", "witness-table",
                                                 "soundness", "mub",      "projection"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  if (name == "oracle") return suite_oracle(options);
  if (name == "envelope") return suite_envelope(options);
  if (name == "identities") return suite_identities(options);
  if (name == "witness-table") return suite_witness_table(options);
  if (name == "soundness") return suite_soundness(options);
  if (name == "mub") return suite_mub(options);
  if (name == "projection") return suite_projection(options);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions& options) {
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, options));
  return out;
}

}  // namespace mubw
