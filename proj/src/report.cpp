#include "mhlab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef MHLAB_VERSION
#define MHLAB_VERSION "unknown"
#endif

namespace mhlab {

using nlohmann::ordered_json;

std::string version() { return MHLAB_VERSION; }

RegionPolygon region_of(const Classification& c) { return build_region(theorem_inequalities(c)); }

namespace {

ordered_json endpoint_json(const Endpoint& e) {
  return {{"u", to_fraction(e.u)}, {"v", to_fraction(e.v)}, {"theta_max", to_fraction(e.theta_max)}, {"label", e.label}};
}

std::string approx(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

ordered_json analysis_report(const std::string& input, const Classification& c) {
  ordered_json j;
  j["tool"] = {{"name", "mhlab"}, {"version", version()}};
  j["input"] = input;
  if (!c.admitted()) {
    j["case"] = "Excluded";
    j["reason"] = c.reason ? to_string(*c.reason) : "unknown";
    j["notes"] = ordered_json::array({c.detail});
    return j;
  }
  j["kappa"] = {{"s", c.kappa.s}, {"r", c.kappa.r}, {"m", c.kappa.m}, {"swapped", c.kappa.swapped},
                {"kappa1", to_fraction(c.kappa.kappa1())}, {"kappa2", to_fraction(c.kappa.kappa2())}};
  j["d_h"] = to_fraction(c.d_h);

  const auto& f = c.factorization;
  ordered_json fac;
  fac["C"] = c.advisory ? "advisory" : to_fraction(f.C);
  fac["nu1"] = f.nu1;
  fac["nu2"] = f.nu2;
  fac["n"] = f.n;
  fac["factors"] = ordered_json::array();
  for (const auto& rf : f.factors) {
    ordered_json e;
    e["factor"] = rf.minimal_factor.to_string("u");
    e["multiplicity"] = rf.multiplicity;
    e["real_roots"] = rf.real_root_count;
    ordered_json approxs = ordered_json::array();
    for (double x : rf.real_root_approximations) approxs.push_back(approx(x));
    e["approximations"] = approxs;
    fac["factors"].push_back(e);
  }
  j["factorization"] = fac;
  j["N"] = c.N;

  const auto& h = c.hessian;
  ordered_json hj;
  hj["w"] = c.advisory ? "advisory" : h.w.to_string();
  hj["T"] = c.T;
  hj["max_root_location"] = to_string(h.max_root_location);
  ordered_json att = ordered_json::array();
  for (auto loc : h.attaining) att.push_back(to_string(loc));
  hj["attaining"] = att;
  hj["h_w"] = to_fraction(c.h_w);
  hj["h_phi"] = to_fraction(c.h_phi);
  j["hessian"] = hj;
  j["case"] = to_string(c.kase);

  RegionPolygon rp = region_of(c);
  ordered_json rj = region_to_json(rp);
  j["conditions"] = rj["constraints"];
  j["vertices"] = rj["vertices"];

  Endpoint sum = summability_endpoint(c);
  Endpoint gre = gressman_endpoint(c.h_w);
  j["endpoints"] = {{"summability", endpoint_json(sum)}, {"gressman", endpoint_json(gre)}};

  j["flags"] = {{"redundancy", c.redundancy_flag}, {"tie", c.tie_flag}, {"advisory", c.advisory}};

  ordered_json notes = ordered_json::array();
  for (const auto& d : c.diagnostics) notes.push_back(d);
  for (const auto& a : rp.annotations) notes.push_back(a);
  DualityReport dr = duality_check(rp);
  if (dr.c12_c13 && !dr.c12_c13->holds)
    notes.push_back("c12 and c13 are not dual to each other under (u, v) -> (1 - v, 1 - u); reported as stated");
  if (!c.advisory) {
    HeightRelation hr = height_relation_check(c);
    notes.push_back("height relation " + to_string(hr.status) + ": " + hr.relation);
  }
  j["notes"] = notes;
  return j;
}

std::string analysis_text(const std::string& input, const Classification& c) {
  std::ostringstream os;
  os << "input: " << input << "\n";
  if (!c.admitted()) {
    os << "excluded: " << (c.reason ? to_string(*c.reason) : "unknown") << " (" << c.detail << ")\n";
    return os.str();
  }
  if (c.advisory) os << "advisory: floating-point classification\n";
  os << "kappa = (" << to_display(c.kappa.kappa1()) << ", " << to_display(c.kappa.kappa2()) << ")"
     << (c.kappa.swapped ? " after exchanging y1, y2" : "") << "\n";
  os << "d_h = " << to_display(c.d_h) << ", nu = (" << c.nu1 << ", " << c.nu2 << "), N = " << c.N << ", T = " << c.T
     << "\n";
  os << "h(phi) = " << to_display(c.h_phi) << ", h(w) = " << to_display(c.h_w)
     << ", max root of w: " << to_string(c.hessian.max_root_location) << "\n";
  os << "case " << to_string(c.kase);
  if (c.redundancy_flag) os << " (case conditions redundant: T <= 2 d_h - 2)";
  if (c.tie_flag) os << " (tie)";
  os << "\n";
  RegionPolygon rp = region_of(c);
  os << "vertices:";
  for (const auto& v : rp.vertices) os << " (" << to_display(v.u) << ", " << to_display(v.v) << ")" << (v.included ? "" : "o");
  os << "\n";
  Endpoint e = summability_endpoint(c);
  os << "summability endpoint (" << to_display(e.u) << ", " << to_display(e.v) << ") [" << e.label
     << "], theta_max = " << to_display(e.theta_max) << "\n";
  for (const auto& d : c.diagnostics) os << "note: " << d << "\n";
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

}  // namespace mhlab
