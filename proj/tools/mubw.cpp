// mubw: classify GHZ-diagonal three-qubit states, sample the simplex, scan regions, self-verify.
//
// Exit codes: 0 ok, 1 verification failure, 2 bad input.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mubw/batch.hpp"
#include "mubw/csv.hpp"

namespace {

using namespace mubw;
using nlohmann::json;

constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return csv::format_double(v); }

ProbVector read_state(const std::string& p_text, const std::string& r_text, const std::string& file) {
  const int given = !p_text.empty() + !r_text.empty() + !file.empty();
  if (given != 1) throw BadInput("give exactly one of --p, --r or --file");
  try {
    if (!r_text.empty()) {
      const auto r = csv::parse_numbers(r_text);
      if (r.size() != 7) throw BadInput("--r needs 7 values");
      return p_from_r(RVector(Vec7(Eigen::Map<const Vec7>(r.data()))));
    }
    std::string line = p_text;
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in || !std::getline(in, line)) throw BadInput("cannot read a state from '" + file + "'");
    }
    const auto p = csv::parse_numbers(line);
    if (p.size() != 8) throw BadInput("a state needs 8 probabilities");
    return ProbVector(Vec8(Eigen::Map<const Vec8>(p.data())));
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
}

json certificate_json(const SeparableCertificate& cert) {
  json terms = json::array();
  for (const auto& t : cert.terms) {
    terms.push_back({{"weight", t.weight}, {"block", t.block.description}, {"product_states", t.block.ensemble.size()}});
  }
  return {{"pattern", cert.pattern}, {"terms", terms}, {"reconstruction_error", cert.reconstruction_error}};
}

int cmd_classify(const ProbVector& p, double tol) {
  const Verdict v = classify(p, tol);
  const auto& report = v.ppt;

  std::cout << "verdict: " << to_string(v.kind) << '\n';
  std::cout << "ppt: " << (report.pass ? "pass" : "fail") << " (min inequality " << fmt(report.min_value()) << ")\n";
  for (int g = 0; g < 6; ++g) {
    const auto q = report.quadruple(g);
    std::cout << "  group " << g + 1 << ": " << fmt(q[0]) << ' ' << fmt(q[1]) << ' ' << fmt(q[2]) << ' ' << fmt(q[3])
              << '\n';
  }
  std::cout << "partial transpose min eigenvalues: " << fmt(report.min_eigs[0]) << ' ' << fmt(report.min_eigs[1])
            << ' ' << fmt(report.min_eigs[2]) << '\n';

  std::optional<Detection> best;
  if (report.pass) best = v.detection ? *v.detection : best_witness(p);
  if (best) std::cout << "best witness: " << best->id.str() << " value " << fmt(best->value) << '\n';
  if (v.certificate) {
    std::cout << "certificate: " << v.certificate->pattern << ", " << v.certificate->terms.size() << " terms, "
              << v.certificate->product_state_count() << " product states, reconstruction error "
              << fmt(v.certificate->reconstruction_error) << '\n';
    for (const auto& t : v.certificate->terms) std::cout << "  " << fmt(t.weight) << "  " << t.block.description << '\n';
  }

  json record = {{"verdict", to_string(v.kind)},
                 {"p", std::vector<double>(p.values().data(), p.values().data() + 8)},
                 {"inequalities", report.values},
                 {"min_eigs", report.min_eigs},
                 {"ppt", report.pass}};
  if (best) record["witness"] = {{"id", best->id.str()}, {"value", best->value}, {"detects", v.detection.has_value()}};
  if (v.certificate) record["certificate"] = certificate_json(*v.certificate);
  std::cout << "record: " << record.dump() << '\n';
  return 0;
}

json report_json(const SampleReport& r) {
  json by_witness = json::object();
  for (int k = 0; k < NonlinearFamilyId::kCount; ++k) {
    if (r.detections_by_witness[k] > 0) by_witness[NonlinearFamilyId::from_ordinal(k).str()] = r.detections_by_witness[k];
  }
  return {{"seed", r.seed},
          {"n_total", r.n_total},
          {"n_npt", r.n_npt},
          {"n_ppt", r.n_ppt},
          {"n_detected", r.n_detected},
          {"n_certified_separable", r.n_certified_separable},
          {"n_undecided", r.n_undecided},
          {"fraction_ppt", r.fraction_ppt()},
          {"fraction_detected_of_ppt", r.fraction_detected_of_ppt()},
          {"detections_by_witness", by_witness}};
}

int cmd_sample(std::uint64_t n, std::uint64_t seed, const std::string& out_path, double tol) {
  std::ofstream out;
  RecordSink sink;
  if (!out_path.empty()) {
    out.open(out_path, std::ios::binary);
    if (!out) throw BadInput("cannot write '" + out_path + "'");
    out << csv::kSampleHeader << '\n';
    sink = [&out](const SampleRecord& rec) { out << csv::sample_row(rec) << '\n'; };
  }
  const SampleReport r = run_sample(n, seed, worker_count(), sink, tol);
  std::cout << "samples: " << r.n_total << " (seed " << r.seed << ", flat Dirichlet measure)\n";
  std::cout << "NPT: " << r.n_npt << "  PPT: " << r.n_ppt << "  detected: " << r.n_detected
            << "  separable: " << r.n_certified_separable << "  undecided: " << r.n_undecided << '\n';
  std::cout << "detected fraction of PPT: " << fmt(r.fraction_detected_of_ppt())
            << " (reference figure 0.027 quoted without a sampling measure)\n";
  std::cout << "record: " << report_json(r).dump() << '\n';
  return 0;
}

int cmd_region(const std::string& plane_name, int grid, const std::string& out_path, const std::string& svg_path,
               std::uint64_t n, std::uint64_t seed) {
  Plane plane;
  try {
    plane = parse_plane(plane_name);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  if (grid < 2) throw BadInput("--grid must be at least 2");
  const RegionScan scan = scan_region(plane, grid, n, seed);

  if (out_path.empty()) {
    csv::write_region(std::cout, scan);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw BadInput("cannot write '" + out_path + "'");
    csv::write_region(out, scan);
  }
  if (!svg_path.empty()) {
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) throw BadInput("cannot write '" + svg_path + "'");
    csv::write_region_svg(svg, scan);
  }
  if (!out_path.empty()) {
    std::size_t feasible = 0, detected = 0, separable = 0;
    for (const auto& c : scan.cells) {
      feasible += c.feasible;
      detected += c.n_detected > 0;
      separable += c.n_separable > 0;
    }
    std::cout << "plane " << plane.name << ", grid " << grid << ": " << feasible << " feasible cells, " << detected
              << " with detections, " << separable << " with certified separable states\n";
  }
  return 0;
}

int cmd_verify(const std::vector<std::string>& suites, bool inject_fault, std::uint64_t seed, double tol) {
  VerifyOptions opt{seed, inject_fault, tol};
  std::vector<SuiteResult> results;
  try {
    if (suites.empty()) {
      results = run_all_suites(opt);
    } else {
      for (const auto& s : suites) results.push_back(run_suite(s, opt));
    }
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  bool ok = true;
  for (const auto& r : results) {
    std::cout << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
    ok = ok && r.passed;
  }
  std::cout << (ok ? "all suites passed" : "verification failed") << '\n';
  return ok ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement witnesses and PPT analysis for GHZ-diagonal three-qubit states"};
  app.require_subcommand(1);
  double tol = kPptTol;
  app.add_option("--tol", tol, "PPT tolerance")->check(CLI::PositiveNumber);

  std::string p_text, r_text, file;
  auto* classify_cmd = app.add_subcommand("classify", "Classify one state");
  classify_cmd->add_option("--p", p_text, "p1..p8, comma separated");
  classify_cmd->add_option("--r", r_text, "r1..r7, comma separated");
  classify_cmd->add_option("--file", file, "file whose first line holds p1..p8");

  std::uint64_t n = 1000;
  std::uint64_t seed = 0;
  std::string out_path;
  auto* sample_cmd = app.add_subcommand("sample", "Classify uniform samples of the simplex");
  sample_cmd->add_option("--n", n, "number of samples")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed, "random seed");
  sample_cmd->add_option("--out", out_path, "per-state CSV output");

  std::string plane_name, svg_path;
  int grid = 200;
  std::uint64_t region_n = 0;
  auto* region_cmd = app.add_subcommand("region", "Scan a two-dimensional section of the PPT region");
  region_cmd->add_option("--plane", plane_name, "p1p2, p1p3, p3p4, p2p4, p5p6, p7p8 or cat1-triangle")->required();
  region_cmd->add_option("--grid", grid, "cells per axis");
  region_cmd->add_option("--out", out_path, "CSV output (default stdout)");
  region_cmd->add_option("--svg", svg_path, "SVG output");
  region_cmd->add_option("--n", region_n, "uniform samples binned into the cells");
  region_cmd->add_option("--seed", seed, "random seed");

  std::vector<std::string> suites;
  bool inject_fault = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the self-verification suites");
  verify_cmd->add_option("--suite", suites, "suite name (repeatable)");
  verify_cmd->add_flag("--inject-fault", inject_fault, "perturb the inequality side of the oracle suite");
  verify_cmd->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*classify_cmd) return cmd_classify(read_state(p_text, r_text, file), tol);
    if (*sample_cmd) return cmd_sample(n, seed, out_path, tol);
    if (*region_cmd) return cmd_region(plane_name, grid, out_path, svg_path, region_n, seed);
    if (*verify_cmd) return cmd_verify(suites, inject_fault, seed, tol);
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
