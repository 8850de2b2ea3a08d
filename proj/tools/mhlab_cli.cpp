// mhlab: classification of mixed homogeneous phases and the associated experiments.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mhlab/algebra_checks.hpp"
#include "mhlab/classifier.hpp"
#include "mhlab/oscillation_lab.hpp"
#include "mhlab/parse.hpp"
#include "mhlab/report.hpp"
#include "mhlab/scaling_lab.hpp"

using namespace mhlab;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kExcluded = 2;

struct Globals {
  std::string json_path;
  std::string svg_path;
  std::string csv_path;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

std::string fmt(double x, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, sep))
    if (!part.empty()) out.push_back(part);
  return out;
}

void emit(const std::string& path, const std::string& content) {
  if (!path.empty()) write_file_atomic(path, content);
}

struct Loaded {
  std::optional<BivariatePoly> exact;
  Classification c;
};

/// Exact parse first; on a parse error falls back to the floating-point classifier.
Loaded load(const std::string& text, double tol) {
  try {
    BivariatePoly p = parse_poly(text);
    return {p, classify(p)};
  } catch (const ParseError& exact_error) {
    NumericPoly np;
    try {
      np = parse_numeric_poly(text);
    } catch (const ParseError&) {
      throw exact_error;
    }
    Classification c = classify_numeric(np, tol);
    c.diagnostics.insert(c.diagnostics.begin(),
                         std::string("exact parse failed (") + exact_error.what() + "); classified in floating point");
    return {std::nullopt, c};
  }
}

BivariatePoly load_exact(const std::string& text) { return parse_poly(text); }

int cmd_analyze(const Globals& g, const std::string& text) {
  Loaded l = load(text, g.tol);
  std::cout << analysis_text(text, l.c);
  emit(g.json_path, analysis_report(text, l.c).dump(2) + "\n");
  if (!l.c.admitted()) return kExcluded;
  if (!g.svg_path.empty()) emit(g.svg_path, region_svg(region_of(l.c), text));
  return kOk;
}

int cmd_region(const Globals& g, const std::string& text) {
  Loaded l = load(text, g.tol);
  if (!l.c.admitted()) {
    std::cout << analysis_text(text, l.c);
    return kExcluded;
  }
  RegionPolygon rp = region_of(l.c);
  ordered_json j = region_to_json(rp);
  std::string doc = j.dump(2) + "\n";
  if (g.json_path.empty())
    std::cout << doc;
  else
    emit(g.json_path, doc);
  emit(g.svg_path, region_svg(rp, text));
  if (!g.csv_path.empty()) {
    std::string csv = "u,v,included\n";
    for (const auto& v : rp.vertices) csv += to_fraction(v.u) + "," + to_fraction(v.v) + "," + (v.included ? "1" : "0") + "\n";
    emit(g.csv_path, csv);
  }
  return kOk;
}

int cmd_verify_lemmas(const Globals& g, int count, int dyadic_count) {
  std::vector<SuiteReport> reps = {
      curve_order_suite(g.seed, count),          axis_order_suite(g.seed, count),
      transversal_order_suite(g.seed, count),    hessian_nonzero_suite(g.seed, count),
      homogeneous_control_suite(g.seed, count),  dyadic_identity_suite(g.seed, dyadic_count),
      structural_suite(g.seed, count),           region_suite(g.seed, count),
  };
  bool all = true;
  ordered_json j;
  j["tool"] = {{"name", "mhlab"}, {"version", version()}};
  j["seed"] = g.seed;
  j["suites"] = ordered_json::array();
  std::string csv = "suite,instances,passed\n";
  for (const auto& r : reps) {
    all = all && r.ok();
    std::cout << (r.ok() ? "pass " : "FAIL ") << r.name << ": " << r.passed << "/" << r.instances << "\n";
    for (const auto& f : r.failures) std::cout << "  " << f << "\n";
    j["suites"].push_back({{"name", r.name}, {"instances", r.instances}, {"passed", r.passed}, {"failures", r.failures}});
    csv += "\"" + r.name + "\"," + std::to_string(r.instances) + "," + std::to_string(r.passed) + "\n";
  }
  j["pass"] = all;
  emit(g.json_path, j.dump(2) + "\n");
  emit(g.csv_path, csv);
  return all ? kOk : kError;
}

struct ScalingArgs {
  std::string family = "c2";
  std::string pq = "4/3,4";
  int from = 3;
  int to = 7;
  int x_points = 32;
  int nodes = 8;
  double slope_tol = 0.1;
};

int cmd_verify_scaling(const Globals& g, const std::string& text, const ScalingArgs& a) {
  BivariatePoly p = load_exact(text);
  Family fam = parse_family(a.family);
  auto parts = split(a.pq, ',');
  if (parts.size() != 2) throw PreconditionError("--pq expects p,q");
  Rat P = parse_rat(parts[0]), Q = parse_rat(parts[1]);
  if (P < 1 || Q < 1) throw PreconditionError("--pq: exponents must be at least 1");
  Rat u = 1 / P, v = 1 / Q;
  FamilyParams params = derive_params(p, fam);
  ScalingGrid grid{a.x_points, a.nodes};
  ScalingExperiment e = run_scaling(p, fam, params, u, v, delta_schedule(a.from, a.to), grid);
  WitnessReport w = witness_check(p, fam, params, std::ldexp(1.0, -a.to));

  std::cout << "family " << to_string(fam) << " at (p, q) = (" << to_display(P) << ", " << to_display(Q) << ")\n";
  std::cout << "delta        ||A f||_q       log2 ratio\n";
  for (const auto& m : e.measured)
    std::cout << fmt(m.delta, "%-12g") << " " << fmt(m.norm_q, "%-15.8g") << " " << fmt(m.log2_ratio, "%.6f") << "\n";
  double diff = e.fitted_slope - to_double(e.predicted_slope);
  std::cout << "fitted slope " << fmt(e.fitted_slope) << ", predicted " << to_display(e.predicted_slope) << ", residual "
            << fmt(e.max_residual) << "\n";
  std::cout << "witness spot check: " << w.violations << " violations in " << w.checked << "\n";
  Prediction pr = predicted_exponent(fam, params, u, v);
  std::cout << "margin " << to_display(pr.margin) << (pr.margin < 0 ? " (unbounded at this pair)" : "") << "\n";
  if (e.above_prediction) std::cout << "warning: slope exceeds the prediction; check the family parameters\n";
  emit(g.json_path, scaling_json(e));
  emit(g.csv_path, scaling_csv(e));
  return std::abs(diff) <= a.slope_tol && w.ok() ? kOk : kError;
}

struct DecayArgs {
  int l = 1;
  int j = 1;
  int k = 6;
  std::string rays = "e2,e3";
  double xi_min = 8;
  double xi_max = 256;
  double min_rho = 0.45;
};

int cmd_verify_decay(const Globals& g, const std::string& text, const DecayArgs& a) {
  BivariatePoly p = load_exact(text);
  Classification c = classify(p);
  if (!c.admitted()) {
    std::cout << analysis_text(text, c);
    return kExcluded;
  }
  if (c.kappa.s != 1) throw PreconditionError("verify-decay: dyadic pieces need s = 1");
  DyadicPiece piece = build_piece(c.factorization, c.kappa.r, a.l, a.j, a.k);
  std::cout << "piece j=" << a.j << " k=" << a.k << " lambda=" << to_display(piece.lambda) << " n_l=" << piece.n_l
            << " delta=" << to_display(piece.delta) << "\n";
  std::cout << "  second = " << piece.second.to_string() << "\n  phi_jk = " << piece.phi_jk.to_string() << "\n";
  for (const auto& b : piece.blowups) std::cout << "  blowup " << b.label << ": delta^" << to_display(b.exponent) << "\n";

  DecayOptions opt;
  opt.max_xi = a.xi_max;
  auto sched = dyadic_schedule(a.xi_min, a.xi_max);
  bool all = true;
  ordered_json j;
  j["tool"] = {{"name", "mhlab"}, {"version", version()}};
  j["input"] = text;
  j["piece"] = {{"j", a.j}, {"k", a.k}, {"lambda", to_fraction(piece.lambda)}, {"n_l", piece.n_l},
                {"delta", to_fraction(piece.delta)}, {"phi_jk", piece.phi_jk.to_string()}};
  j["rays"] = ordered_json::array();
  std::string csv = "ray,xi,magnitude,resolved\n";
  for (const auto& name : split(a.rays, ';').size() > 1 ? split(a.rays, ';') : split(a.rays, ',')) {
    Vec3 ray = parse_ray(name);
    DecayFit fit = estimate_fourier_decay(piece, ray, sched, opt);
    bool ok = fit.rho >= a.min_rho;
    all = all && ok;
    std::cout << ray_name(ray) << ": rho = " << fmt(fit.rho, "%.4f") << (fit.floor_limited ? " (lower bound, noise floor)" : "")
              << ", residual " << fmt(fit.max_residual, "%.3g") << (ok ? "" : "  below threshold") << "\n";
    ordered_json mags = ordered_json::array();
    for (std::size_t i = 0; i < fit.schedule.size(); ++i) {
      mags.push_back({{"xi", fit.schedule[i]}, {"magnitude", fmt(fit.magnitude[i], "%.12e")}, {"resolved", bool(fit.resolved[i])}});
      csv += ray_name(ray) + "," + fmt(fit.schedule[i], "%g") + "," + fmt(fit.magnitude[i], "%.12e") + "," +
             (fit.resolved[i] ? "1" : "0") + "\n";
    }
    j["rays"].push_back({{"ray", ray_name(ray)}, {"rho", fmt(fit.rho, "%.6f")}, {"floor_limited", fit.floor_limited},
                         {"samples", mags}});
  }
  j["min_rho"] = a.min_rho;
  j["pass"] = all;
  emit(g.json_path, j.dump(2) + "\n");
  emit(g.csv_path, csv);
  return all ? kOk : kError;
}

int cmd_search_case_d(const Globals& g, int trials) {
  auto found = search_case_d(g.seed, trials);
  ordered_json j;
  j["tool"] = {{"name", "mhlab"}, {"version", version()}};
  j["seed"] = g.seed;
  j["trials"] = trials;
  j["instances"] = ordered_json::array();
  for (const auto& inst : found) {
    const auto& c = inst.classification;
    std::cout << inst.phi.to_string() << "  d_h=" << to_display(c.d_h) << " T=" << c.T << " N=" << c.N << "\n";
    j["instances"].push_back({{"phi", inst.phi.to_string()}, {"d_h", to_fraction(c.d_h)}, {"T", c.T}, {"N", c.N}});
  }
  std::cout << found.size() << " case D instances in " << trials << " trials\n";
  emit(g.json_path, j.dump(2) + "\n");
  return found.empty() ? kError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mhlab: L^p-improving region analysis for mixed homogeneous surfaces"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--json", g.json_path, "Write a JSON artifact to PATH");
  app.add_option("--svg", g.svg_path, "Write the region as SVG to PATH");
  app.add_option("--csv", g.csv_path, "Write a CSV artifact to PATH");
  app.add_option("--seed", g.seed, "Seed for randomized suites and searches");
  app.add_option("--tol", g.tol, "Root clustering tolerance of the floating-point classifier");

  std::string poly;
  auto* analyze = app.add_subcommand("analyze", "Classify a polynomial and report its region");
  analyze->add_option("poly", poly, "Polynomial in y1, y2")->required();

  auto* region = app.add_subcommand("region", "Emit the region of a polynomial");
  region->add_option("poly", poly, "Polynomial in y1, y2")->required();

  int count = 100, dyadic_count = 20;
  auto* lemmas = app.add_subcommand("verify-lemmas", "Run the seeded algebraic suites");
  lemmas->add_option("--count", count, "Instances per suite")->check(CLI::PositiveNumber);
  lemmas->add_option("--dyadic-count", dyadic_count, "Instances for the rescaling identity")->check(CLI::PositiveNumber);

  ScalingArgs sa;
  auto* scaling = app.add_subcommand("verify-scaling", "Measure a scaling family and compare with its prediction");
  scaling->add_option("poly", poly, "Polynomial in y1, y2")->required();
  scaling->add_option("--family", sa.family, "c1, c2, nu, dh, n1, n2 or ml1");
  scaling->add_option("--pq", sa.pq, "p,q (rationals)");
  scaling->add_option("--from", sa.from, "Largest delta is 2^-FROM");
  scaling->add_option("--to", sa.to, "Smallest delta is 2^-TO");
  scaling->add_option("--x-points", sa.x_points, "Samples per axis of the x-set")->check(CLI::PositiveNumber);
  scaling->add_option("--nodes", sa.nodes, "Nodes per resolved length")->check(CLI::PositiveNumber);
  scaling->add_option("--slope-tol", sa.slope_tol, "Allowed |fitted - predicted|");

  DecayArgs da;
  auto* decay = app.add_subcommand("verify-decay", "Fourier decay of a dyadic piece along rays");
  decay->add_option("poly", poly, "Polynomial in y1, y2")->required();
  decay->add_option("--l", da.l, "Real root index, 1-based ascending");
  decay->add_option("--j", da.j, "y1 scale 2^-j");
  decay->add_option("--k", da.k, "y2 scale 2^-k");
  decay->add_option("--rays", da.rays, "Comma separated e1/e2/e3, or ';' separated a,b,c vectors");
  decay->add_option("--xi-min", da.xi_min, "Smallest |xi|");
  decay->add_option("--xi-max", da.xi_max, "Largest |xi|");
  decay->add_option("--min-rho", da.min_rho, "Required decay exponent");

  int trials = 10000;
  auto* search = app.add_subcommand("search-case-d", "Seeded search for rational case D polynomials");
  search->add_option("--trials", trials, "Random draws")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(g, poly);
    if (region->parsed()) return cmd_region(g, poly);
    if (lemmas->parsed()) return cmd_verify_lemmas(g, count, dyadic_count);
    if (scaling->parsed()) return cmd_verify_scaling(g, poly, sa);
    if (decay->parsed()) return cmd_verify_decay(g, poly, da);
    if (search->parsed()) return cmd_search_case_d(g, trials);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
