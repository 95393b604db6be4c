// Seeded Monte Carlo over the probability simplex, region scans and the self-verification
// suites. Everything here is deterministic in (arguments, seed) and independent of the
// number of worker threads.
#ifndef MUBW_BATCH_HPP
#define MUBW_BATCH_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mubw/classify.hpp"

namespace mubw {

/// Samples are generated in fixed chunks; chunk c draws from mt19937_64 seeded with
/// splitmix64(seed ^ c). Changing the worker count never changes the stream.
inline constexpr std::uint64_t kChunkSize = 65536;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

/// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng);

/// Flat Dirichlet point: eight unit exponentials, normalized.
ProbVector sample_simplex(std::mt19937_64& rng);

/// Worker count: MUBW_THREADS if set and positive, else the hardware concurrency (at least 1).
unsigned worker_count();

struct SampleRecord {
  Vec8 p;
  VerdictKind kind = VerdictKind::NPT;
  /// Best validated witness and its value; absent for NPT states.
  std::optional<Detection> best;
};

struct SampleReport {
  std::uint64_t seed = 0;
  std::uint64_t n_total = 0;
  std::uint64_t n_npt = 0;
  std::uint64_t n_ppt = 0;
  std::uint64_t n_detected = 0;
  std::uint64_t n_certified_separable = 0;
  std::uint64_t n_undecided = 0;
  std::array<std::uint64_t, NonlinearFamilyId::kCount> detections_by_witness{};
  Vec8 p_mean = Vec8::Zero();
  Vec8 p_var = Vec8::Zero();

  double fraction_detected_of_ppt() const;
  double fraction_ppt() const;
};

using RecordSink = std::function<void(const SampleRecord&)>;

/// Classifies n flat-simplex samples. Records reach `sink` in sample order.
SampleReport run_sample(std::uint64_t n, std::uint64_t seed, unsigned threads = worker_count(),
                        const RecordSink& sink = {}, double tol = kPptTol);

// ---------------------------------------------------------------------------------------
// Region scans.

enum class PlaneKind { Coordinates, Cat1Triangle };

struct Plane {
  std::string name;
  PlaneKind kind = PlaneKind::Coordinates;
  int a = 0;  // 0-based coordinate indices for PlaneKind::Coordinates
  int b = 1;
};

/// p1p2, p1p3, p3p4, p2p4, p5p6, p7p8 and cat1-triangle. Throws std::invalid_argument otherwise.
Plane parse_plane(const std::string& name);
const std::vector<std::string>& plane_names();

struct RegionCell {
  int i = 0;
  int j = 0;
  double x = 0.0;
  double y = 0.0;
  bool feasible = false;
  /// Coordinate planes: tallies of the samples falling in the cell. Triangle plane: the single
  /// family state at the cell corner (n_samples = 1 when it lies in the simplex).
  std::uint64_t n_samples = 0;
  std::uint64_t n_npt = 0;
  std::uint64_t n_detected = 0;
  std::uint64_t n_separable = 0;
  std::uint64_t n_undecided = 0;
};

struct RegionScan {
  Plane plane;
  int grid = 0;
  std::vector<RegionCell> cells;  // row-major in i

  const RegionCell& at(int i, int j) const { return cells[static_cast<std::size_t>(i) * grid + j]; }
};

RegionScan scan_region(const Plane& plane, int grid, std::uint64_t n_samples, std::uint64_t seed,
                       unsigned threads = worker_count());

// ---------------------------------------------------------------------------------------
// Random members of the separable constructions.

enum class SeparableFamily { Pairs, SingleCoherence, Category };

/// A random state of the given construction. Always PPT; rejection sampling inside.
ProbVector random_separable(SeparableFamily family, std::mt19937_64& rng);

// ---------------------------------------------------------------------------------------
// Verification suites.

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  /// Swaps p2 and p3 before the inequality side of the oracle suite; the suite must then fail.
  bool inject_fault = false;
  double tol = kPptTol;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);
std::vector<SuiteResult> run_all_suites(const VerifyOptions& options);

}  // namespace mubw

#endif  // MUBW_BATCH_HPP
