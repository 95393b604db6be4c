// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero on any failure not listed
// as known.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mubw/batch.hpp"
#include "mubw/mub.hpp"
#include "oracles.hpp"

using namespace mubw;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  bool known_failure = false;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += "[failed: " + what + "] ";
    }
  }
  void note(const std::string& text) { detail += text + "; "; }
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

Outcome prototype() {
  Outcome o;
  const ProbVector p{0.043425, 0.15308, 0.016132, 0.19387, 0.059793, 0.24806, 0.18207, 0.10357};
  const PptReport report = is_ppt(p);
  o.require(report.pass, "24 inequalities");
  for (double v : report.values) o.require(v >= 0.0, "inequality value " + num(v));
  for (double e : report.min_eigs) o.require(e >= -1e-10, "partial transpose eigenvalue " + num(e));
  double best = 0.0;
  std::string best_id;
  for (const auto& id : NonlinearFamilyId::all()) {
    const double v = nonlinear_value(id, p);
    if (v < best) {
      best = v;
      best_id = id.str();
    }
  }
  o.require(best < -1e-9, "a negative nonlinear witness");
  o.note("min inequality " + num(report.min_value()) + ", min PT eigenvalue " +
         num(std::min({report.min_eigs[0], report.min_eigs[1], report.min_eigs[2]})) + ", best witness " + best_id +
         " = " + num(best));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int agree = 0, ppt = 0;
  constexpr int n = 100000;
  for (int t = 0; t < n; ++t) {
    const ProbVector p = sample_simplex(rng);
    const bool by_inequalities = ppt_inequalities(p).pass;
    const bool by_eigenvalues = oracle::min_pt_eig(p.values()) >= -1e-9;
    agree += by_inequalities == by_eigenvalues;
    ppt += by_eigenvalues;
  }
  o.require(agree == n, "verdicts disagree on " + std::to_string(n - agree) + " draws");
  o.note(std::to_string(agree) + "/" + std::to_string(n) + " agree, " + std::to_string(ppt) + " PPT");
  return o;
}

Outcome envelope_identity() {
  Outcome o;
  std::mt19937_64 rng(7);
  constexpr int n_psi = 10000;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const RVector r = r_from_p(sample_simplex(rng));
    for (const auto& id : NonlinearFamilyId::all()) {
      double sampled = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n_psi; ++k) {
        const double psi = 2.0 * kPi * k / n_psi;
        sampled = std::min(sampled, expectation(WitnessSpec{id, psi}, r));
      }
      worst = std::max(worst, std::abs(sampled - nonlinear_value(id, r)));
    }
  }
  o.require(worst <= 1e-6, "gap " + num(worst));
  o.note("36000 (r, id) pairs, max gap " + num(worst, 3));
  return o;
}

Outcome optimality() {
  Outcome o;
  for (double psi : {kPi / 6, kPi / 4, kPi / 3, 2 * kPi / 3}) {
    const double m = min_over_products(reference_witness(psi)).value;
    const int rank = optimality_obstruction(psi);
    o.require(std::abs(m) <= 1e-6, "product minimum " + num(m) + " at psi " + num(psi));
    o.require(rank == 4, "rank " + std::to_string(rank) + " at psi " + num(psi));
    o.note("psi " + num(psi, 4) + ": min " + num(m, 3) + ", rank " + std::to_string(rank));
  }
  for (double psi : {0.0, kPi}) {
    const int rank = optimality_obstruction(psi);
    o.require(rank < 4, "rank " + std::to_string(rank) + " at psi " + num(psi));
    o.note("psi " + num(psi, 4) + ": rank " + std::to_string(rank));
  }
  return o;
}

Outcome worked_examples() {
  Outcome o;
  const ProbVector cat1{0.2, 0, 0.2, 0, 0.2, 0.1, 0.18, 0.12};
  const auto d1 = detect_bound(cat1);
  const double e1 = 0.8 - std::sqrt(0.6464);
  o.require(d1 && d1->id.str() == "+1:-47:56", "category 1 witness id");
  o.require(d1 && rel_close(d1->value, e1, 1e-9), "category 1 value");
  if (d1) o.note("category 1: " + d1->id.str() + " = " + num(d1->value, 10));

  const ProbVector cat2{0.1, 0.05, 0.15, 0, 0.3, 0.15, 0.2, 0.05};
  const auto d2 = detect_bound(cat2);
  const double e2 = 0.6 - std::sqrt(0.4);
  const auto named = NonlinearFamilyId::parse("+1:+46:57");
  o.require(d2.has_value(), "category 2 detection");
  o.require(rel_close(nonlinear_value(named, cat2), e2, 1e-9), "category 2 value of +1:+46:57");
  if (d2) {
    o.require(rel_close(d2->value, e2, 1e-9), "category 2 best value");
    o.note("category 2: best " + d2->id.str() + " = " + num(d2->value, 10) + ", +1:+46:57 = " +
           num(nonlinear_value(named, cat2), 10));
  }

  const ProbVector ghz{1, 0, 0, 0, 0, 0, 0, 0};
  const double g = nonlinear_value(NonlinearFamilyId::parse("+1:-47:56"), ghz);
  double g_min = std::numeric_limits<double>::infinity();
  for (const auto& id : NonlinearFamilyId::all()) g_min = std::min(g_min, nonlinear_value(id, ghz));
  const double expected = 2.0 - 2.0 * std::sqrt(2.0);
  const bool ghz_ok = rel_close(g, expected, 1e-9);
  o.require(!is_ppt(ghz).pass, "GHZ is NPT");
  const bool others_ok = o.pass;
  o.require(ghz_ok, "GHZ +1:-47:56 gives " + num(g) + ", expected " + num(expected));
  o.note("GHZ: +1:-47:56 = " + num(g) + ", minimum over all ids " + num(g_min));
  if (!ghz_ok && others_ok) {
    o.known_failure = true;
    o.note("known: with r = (1,1,1,1,-1,-1,-1) the arm (r4-r7, r5-r6) is (2, 0), so this id is 0 and "
           "no id reaches 2-2*sqrt(2)");
  }
  return o;
}

bool within_one_cell(const std::vector<std::pair<int, int>>& feasible, double x, double y, int grid) {
  for (const auto& [i, j] : feasible)
    if (std::abs(i - x * grid) <= 1.0 && std::abs(j - y * grid) <= 1.0) return true;
  return false;
}

Outcome region_geometry() {
  Outcome o;
  constexpr int grid = 400;

  // Corner membership: exact halfspaces in units of 1/grid.
  struct Case {
    const char* plane;
    std::vector<std::pair<double, double>> vertices;
    std::function<bool(int, int)> inside;
  };
  const std::vector<Case> cases = {
      {"p1p2",
       {{0.5, 0.5}, {0.25, 0.0}, {0.0, 0.25}, {0.0, 0.0}},
       [](int i, int j) { return 4 * i - 2 * j <= grid && 4 * j - 2 * i <= grid; }},
      {"p1p3", {{0.5, 0.0}, {0.0, 0.5}, {0.0, 0.0}}, [](int i, int j) { return 2 * (i + j) <= grid; }},
  };
  for (const auto& c : cases) {
    const RegionScan scan = scan_region(parse_plane(c.plane), grid, 0, 0);
    std::vector<std::pair<int, int>> feasible;
    int mismatched = 0;
    for (const auto& cell : scan.cells) {
      if (cell.feasible) feasible.emplace_back(cell.i, cell.j);
      mismatched += cell.feasible != c.inside(cell.i, cell.j);
    }
    o.require(mismatched == 0, std::string(c.plane) + " cells off the hull: " + std::to_string(mismatched));
    for (const auto& [x, y] : c.vertices)
      o.require(within_one_cell(feasible, x, y, grid), std::string(c.plane) + " vertex (" + num(x) + "," + num(y) + ")");
    o.note(std::string(c.plane) + ": " + std::to_string(feasible.size()) + " feasible cells, " +
           std::to_string(mismatched) + " off the exact hull");
  }

  const RegionScan tri = scan_region(parse_plane("cat1-triangle"), grid, 0, 0);
  int feasible = 0, off_hull = 0, edge = 0, edge_ok = 0, interior = 0, interior_ok = 0;
  std::vector<std::pair<int, int>> cells;
  for (const auto& cell : tri.cells) {
    const int i = cell.i, j = cell.j;
    if (i + j > grid) continue;
    // p = (1 - p1 - p2)/3 in grid units is (grid - i - j)/3; the triangle is p <= 1/4,
    // p1 <= p2 + p and p2 <= p1 + p.
    const bool in_triangle = 4 * (i + j) >= grid && 4 * i - 2 * j <= grid && 4 * j - 2 * i <= grid;
    const bool ppt = cell.n_npt == 0 && cell.n_samples == 1;
    feasible += ppt;
    off_hull += ppt != in_triangle;
    if (ppt) cells.emplace_back(i, j);
    const bool on_edge = 4 * i - 2 * j == grid;
    const bool strictly_inside = 4 * (i + j) > grid && 4 * i - 2 * j < grid && 4 * j - 2 * i < grid;
    if (on_edge) {
      ++edge;
      edge_ok += cell.n_separable == 1;
    } else if (strictly_inside) {
      ++interior;
      interior_ok += cell.n_detected == 1;
    }
  }
  o.require(off_hull == 0, "triangle cells off the hull: " + std::to_string(off_hull));
  for (const auto& [x, y] : std::vector<std::pair<double, double>>{{0.25, 0.0}, {0.0, 0.25}, {0.5, 0.5}})
    o.require(within_one_cell(cells, x, y, grid), "triangle vertex (" + num(x) + "," + num(y) + ")");
  o.require(edge > 0 && edge_ok == edge, "separable edge " + std::to_string(edge_ok) + "/" + std::to_string(edge));
  o.require(interior > 0 && interior_ok == interior,
            "interior detected " + std::to_string(interior_ok) + "/" + std::to_string(interior));
  o.note("triangle: " + std::to_string(feasible) + " PPT corners, edge separable " + std::to_string(edge_ok) + "/" +
         std::to_string(edge) + ", interior detected " + std::to_string(interior_ok) + "/" + std::to_string(interior));
  return o;
}

Outcome detection_fraction() {
  Outcome o;
  std::vector<double> fractions;
  for (std::uint64_t seed : {42, 43, 44}) {
    const SampleReport r = run_sample(1000000, seed);
    fractions.push_back(r.fraction_detected_of_ppt());
    o.note("seed " + std::to_string(seed) + ": " + std::to_string(r.n_detected) + "/" + std::to_string(r.n_ppt) +
           " PPT detected = " + num(100.0 * fractions.back(), 4) + "%");
  }
  double mean = 0.0;
  for (double f : fractions) mean += f / fractions.size();
  double spread = 0.0;
  for (double f : fractions) spread = std::max(spread, std::abs(f - mean));
  o.require(spread <= 0.001, "seed spread " + num(100.0 * spread) + " pp");
  o.note("mean " + num(100.0 * mean, 4) + "%, max deviation " + num(100.0 * spread, 3) +
         " pp; reference figure 2.7% has no stated sampling measure, flat Dirichlet used here");
  return o;
}

Outcome separable_soundness() {
  Outcome o;
  std::mt19937_64 rng(31);
  const auto& ids = validated_ids();
  for (auto [family, name] : {std::pair{SeparableFamily::Pairs, "pairs"},
                              std::pair{SeparableFamily::SingleCoherence, "single-coherence"},
                              std::pair{SeparableFamily::Category, "category"}}) {
    double worst_value = std::numeric_limits<double>::infinity(), worst_error = 0.0;
    int certified = 0;
    for (int t = 0; t < 10000; ++t) {
      const ProbVector p = random_separable(family, rng);
      for (const auto& id : ids) worst_value = std::min(worst_value, nonlinear_value(id, p));
      const auto cert = certify_separable(p);
      if (cert) {
        ++certified;
        worst_error = std::max(worst_error, cert->reconstruction_error);
      }
    }
    o.require(worst_value >= -1e-9, std::string(name) + " witness value " + num(worst_value));
    o.require(certified == 10000, std::string(name) + " certified " + std::to_string(certified));
    o.require(worst_error < 1e-10, std::string(name) + " reconstruction " + num(worst_error));
    o.note(std::string(name) + ": min witness " + num(worst_value, 3) + ", max reconstruction error " +
           num(worst_error, 3));
  }
  o.note(std::to_string(ids.size()) + " validated ids");
  return o;
}

Outcome mub_properties() {
  Outcome o;
  const auto& table = mub_table();
  std::array<Basis8, 9> bases;
  for (int row = 0; row < 9; ++row) bases[row] = common_eigenbasis(table[row]);
  int unbiased = 0;
  double worst = 0.0;
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b) {
      unbiased += unbiasedness(bases[a], bases[b], 1e-10);
      worst = std::max(worst, unbiasedness_defect(bases[a], bases[b]));
    }
  o.require(unbiased == 36, "unbiased pairs " + std::to_string(unbiased));

  const auto g = oracle::ghz();
  int matched = 0;
  for (const auto& v : bases[5]) {
    int hits = 0;
    for (const auto& w : g) hits += std::abs(std::abs(w.dot(v)) - 1.0) < 1e-10;
    matched += hits == 1;
  }
  o.require(matched == 8, "row 6 vectors on the GHZ basis " + std::to_string(matched));

  const std::array<LocalUnitary, 3> none{};
  const auto mapped = transform_row(table[5], none, std::array<LabelMap, 3>{kCyclicLabels, kCyclicLabels, kCyclicLabels});
  const auto target = match_row(mapped.row);
  o.require(target == 3, "row 6 relabelled lands on row " + (target ? std::to_string(*target + 1) : std::string("none")));
  o.note("36/36 pairs unbiased (max defect " + num(worst, 3) + "), row 6 = GHZ basis up to phase, z->x relabelling "
         "maps row 6 to row " + (target ? std::to_string(*target + 1) : std::string("none")));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"prototype state", prototype},
      {"oracle equivalence", oracle_equivalence},
      {"envelope identity", envelope_identity},
      {"optimality minimum", optimality},
      {"worked examples", worked_examples},
      {"region geometry", region_geometry},
      {"detection fraction", detection_fraction},
      {"separable soundness", separable_soundness},
      {"MUB properties", mub_properties},
  };
  int unexpected = 0, known = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s%s (%.2f s) %s\n", k + 1, criteria[k].first, o.pass ? "PASS" : "FAIL",
                !o.pass && o.known_failure ? " (known)" : "", seconds, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) (o.known_failure ? known : unexpected)++;
  }
  std::printf("%d unexpected failures, %d known failures\n", unexpected, known);
  return unexpected == 0 ? 0 : 1;
}
