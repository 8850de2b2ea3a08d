#include "mhlab/region.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "mhlab/errors.hpp"

namespace mhlab {

HalfPlane above_line(const Rat& slope, const Rat& intercept, bool strict, std::string label) {
  return HalfPlane{Rat(-slope), Rat(1), intercept, strict, std::move(label), {}};
}

Rat slack(const HalfPlane& h, const Rat& u, const Rat& v) { return h.alpha * u + h.beta * v - h.gamma; }

bool equivalent(const HalfPlane& a, const HalfPlane& b) {
  if (a.strict != b.strict) return false;
  // (alpha, beta, gamma) proportional with a positive factor.
  if (a.alpha * b.beta != a.beta * b.alpha) return false;
  if (a.alpha * b.gamma != a.gamma * b.alpha) return false;
  if (a.beta * b.gamma != a.gamma * b.beta) return false;
  Rat dot = a.alpha * b.alpha + a.beta * b.beta;
  return dot > 0;
}

HalfPlane dual(const HalfPlane& h) {
  HalfPlane d = h;
  d.alpha = -h.beta;
  d.beta = -h.alpha;
  d.gamma = h.gamma - h.alpha - h.beta;
  return d;
}

namespace {

std::vector<HalfPlane> unit_square() {
  return {
      HalfPlane{Rat(1), Rat(0), Rat(0), false, "u>=0", {}},
      HalfPlane{Rat(-1), Rat(0), Rat(-1), false, "u<=1", {}},
      HalfPlane{Rat(0), Rat(1), Rat(0), false, "v>=0", {}},
      HalfPlane{Rat(0), Rat(-1), Rat(-1), false, "v<=1", {}},
  };
}

bool feasible(const std::vector<HalfPlane>& cs, const Rat& u, const Rat& v) {
  for (const auto& h : cs)
    if (slack(h, u, v) < 0) return false;
  return true;
}

void sort_ccw(std::vector<Vertex>& vs) {
  if (vs.size() < 3) return;
  Rat cx(0), cy(0);
  for (const auto& p : vs) {
    cx += p.u;
    cy += p.v;
  }
  cx /= static_cast<long>(vs.size());
  cy /= static_cast<long>(vs.size());
  auto half = [&](const Vertex& p) {
    Rat dx = p.u - cx, dy = p.v - cy;
    return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
  };
  std::sort(vs.begin(), vs.end(), [&](const Vertex& a, const Vertex& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Rat cross = (a.u - cx) * (b.v - cy) - (a.v - cy) * (b.u - cx);
    return cross > 0;
  });
  // Start at the lowest vertex (then leftmost) so the order does not depend on the centroid.
  auto first = std::min_element(vs.begin(), vs.end(), [](const Vertex& a, const Vertex& b) {
    return a.v != b.v ? a.v < b.v : a.u < b.u;
  });
  std::rotate(vs.begin(), first, vs.end());
}

}  // namespace

RegionPolygon build_region(std::vector<HalfPlane> constraints) {
  if (constraints.empty()) throw PreconditionError("build_region: empty constraint list");
  for (const auto& h : constraints)
    if (h.alpha == 0 && h.beta == 0) throw PreconditionError("half-plane with zero normal: " + h.label);
  RegionPolygon rp;
  rp.constraints = std::move(constraints);
  for (auto& h : unit_square()) rp.constraints.push_back(std::move(h));
  const auto& cs = rp.constraints;

  std::vector<Vertex> pts;
  for (std::size_t a = 0; a < cs.size(); ++a) {
    for (std::size_t b = a + 1; b < cs.size(); ++b) {
      Rat det = cs[a].alpha * cs[b].beta - cs[b].alpha * cs[a].beta;
      if (det == 0) continue;
      Rat u = (cs[a].gamma * cs[b].beta - cs[b].gamma * cs[a].beta) / det;
      Rat v = (cs[a].alpha * cs[b].gamma - cs[b].alpha * cs[a].gamma) / det;
      if (!feasible(cs, u, v)) continue;
      bool dup = std::any_of(pts.begin(), pts.end(), [&](const Vertex& p) { return p.u == u && p.v == v; });
      if (!dup) pts.push_back({u, v, true});
    }
  }
  if (pts.empty()) throw EmptyRegion();
  for (auto& p : pts)
    for (const auto& h : cs)
      if (h.strict && slack(h, p.u, p.v) == 0) p.included = false;
  sort_ccw(pts);
  rp.vertices = std::move(pts);

  rp.active.assign(cs.size(), false);
  for (std::size_t c = 0; c < cs.size(); ++c) {
    int on = 0;
    for (const auto& p : rp.vertices)
      if (slack(cs[c], p.u, p.v) == 0) ++on;
    rp.active[c] = on >= 2;
  }
  for (std::size_t c = 0; c < cs.size(); ++c) {
    if (!cs[c].dominated_by.empty())
      rp.annotations.push_back(cs[c].label + " redundant: dominated by " + cs[c].dominated_by);
    else if (!rp.active[c] && c + 4 < cs.size())
      rp.annotations.push_back(cs[c].label + " inactive");
  }
  return rp;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Outside: return "Outside";
    case Membership::Interior: return "Interior";
    case Membership::BoundaryExcluded: return "BoundaryExcluded";
    case Membership::BoundaryIncluded: return "BoundaryIncluded";
  }
  return "Unknown";
}

Membership contains(const RegionPolygon& rp, const Rat& u, const Rat& v) {
  bool tight = false, tight_strict = false;
  for (const auto& h : rp.constraints) {
    Rat s = slack(h, u, v);
    if (s < 0) return Membership::Outside;
    if (s == 0) {
      tight = true;
      if (h.strict) tight_strict = true;
    }
  }
  if (!tight) return Membership::Interior;
  return tight_strict ? Membership::BoundaryExcluded : Membership::BoundaryIncluded;
}

const HalfPlane* find_constraint(const RegionPolygon& rp, const std::string& label) {
  for (const auto& h : rp.constraints)
    if (h.label == label) return &h;
  return nullptr;
}

DualityReport duality_check(const RegionPolygon& rp) {
  DualityReport rep;
  const std::pair<const char*, const char*> pairs[] = {
      {"c1", "c1"}, {"c2", "c3"}, {"cdh", "cdh"}, {"c4", "c4"}, {"c5", "c6"}, {"c7", "c7"}, {"c9", "c10"}};
  for (const auto& [a, b] : pairs) {
    const HalfPlane* ha = find_constraint(rp, a);
    if (!ha) continue;
    const HalfPlane* hb = find_constraint(rp, b);
    DualPair dp{a, b, false, dual(*ha)};
    dp.holds = hb && equivalent(dp.image, *hb);
    // The map is an involution, so the partner must map back as well.
    if (hb && dp.holds) dp.holds = equivalent(dual(*hb), *ha);
    rep.closed = rep.closed && dp.holds;
    rep.pairs.push_back(dp);
  }
  if (const HalfPlane* h12 = find_constraint(rp, "c12")) {
    const HalfPlane* h13 = find_constraint(rp, "c13");
    DualPair dp{"c12", "c13", false, dual(*h12)};
    dp.holds = h13 && equivalent(dp.image, *h13);
    rep.c12_c13 = dp;
  }
  return rep;
}

nlohmann::ordered_json halfplane_to_json(const HalfPlane& h) {
  nlohmann::ordered_json j;
  j["label"] = h.label;
  j["alpha"] = to_fraction(h.alpha);
  j["beta"] = to_fraction(h.beta);
  j["gamma"] = to_fraction(h.gamma);
  j["strict"] = h.strict;
  if (!h.dominated_by.empty()) j["dominated_by"] = h.dominated_by;
  return j;
}

nlohmann::ordered_json region_to_json(const RegionPolygon& rp) {
  nlohmann::ordered_json doc;
  doc["constraints"] = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < rp.constraints.size(); ++c) {
    auto j = halfplane_to_json(rp.constraints[c]);
    j["active"] = static_cast<bool>(rp.active[c]);
    doc["constraints"].push_back(j);
  }
  doc["vertices"] = nlohmann::ordered_json::array();
  for (const auto& p : rp.vertices)
    doc["vertices"].push_back({{"u", to_fraction(p.u)}, {"v", to_fraction(p.v)}, {"included", p.included}});
  doc["annotations"] = rp.annotations;
  return doc;
}

RegionPolygon region_from_json(const nlohmann::ordered_json& doc) {
  RegionPolygon rp;
  for (const auto& j : doc.at("constraints")) {
    HalfPlane h;
    h.label = j.at("label").get<std::string>();
    h.alpha = parse_rat(j.at("alpha").get<std::string>());
    h.beta = parse_rat(j.at("beta").get<std::string>());
    h.gamma = parse_rat(j.at("gamma").get<std::string>());
    h.strict = j.at("strict").get<bool>();
    if (j.contains("dominated_by")) h.dominated_by = j.at("dominated_by").get<std::string>();
    rp.constraints.push_back(std::move(h));
    rp.active.push_back(j.value("active", false));
  }
  for (const auto& j : doc.at("vertices"))
    rp.vertices.push_back({parse_rat(j.at("u").get<std::string>()), parse_rat(j.at("v").get<std::string>()),
                           j.at("included").get<bool>()});
  for (const auto& a : doc.at("annotations")) rp.annotations.push_back(a.get<std::string>());
  return rp;
}

namespace {

constexpr double kSize = 512.0;
constexpr double kMargin = 56.0;
constexpr double kSide = kSize - 2 * kMargin;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}
double sx(const Rat& u) { return kMargin + kSide * u.get_d(); }
double sy(const Rat& v) { return kSize - kMargin - kSide * v.get_d(); }

}  // namespace

std::string region_svg(const RegionPolygon& rp, const std::string& title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n";
  if (!title.empty()) os << "  <title>" << title << "</title>\n";
  os << "  <rect x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kMargin) << "\" width=\"" << fmt(kSide) << "\" height=\""
     << fmt(kSide) << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  os << "  <polygon points=\"";
  for (std::size_t k = 0; k < rp.vertices.size(); ++k)
    os << (k ? " " : "") << fmt(sx(rp.vertices[k].u)) << "," << fmt(sy(rp.vertices[k].v));
  os << "\" fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"none\"/>\n";
  for (std::size_t c = 0; c < rp.constraints.size(); ++c) {
    if (!rp.active[c]) continue;
    const auto& h = rp.constraints[c];
    std::vector<const Vertex*> on;
    for (const auto& p : rp.vertices)
      if (slack(h, p.u, p.v) == 0) on.push_back(&p);
    auto [lo, hi] = std::minmax_element(on.begin(), on.end(), [](const Vertex* a, const Vertex* b) {
      return a->u != b->u ? a->u < b->u : a->v < b->v;
    });
    os << "  <line x1=\"" << fmt(sx((*lo)->u)) << "\" y1=\"" << fmt(sy((*lo)->v)) << "\" x2=\"" << fmt(sx((*hi)->u))
       << "\" y2=\"" << fmt(sy((*hi)->v)) << "\" stroke=\"#08519c\" stroke-width=\"2\""
       << (h.strict ? " stroke-dasharray=\"6,4\"" : "") << "><title>" << h.label << "</title></line>\n";
  }
  for (const auto& p : rp.vertices)
    os << "  <circle cx=\"" << fmt(sx(p.u)) << "\" cy=\"" << fmt(sy(p.v)) << "\" r=\"3.5\" fill=\""
       << (p.included ? "#08519c" : "white") << "\" stroke=\"#08519c\"><title>(" << to_display(p.u) << ", "
       << to_display(p.v) << ")</title></circle>\n";
  os << "  <text x=\"" << fmt(kMargin + kSide / 2) << "\" y=\"" << fmt(kSize - 16)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">1/p</text>\n";
  os << "  <text x=\"16\" y=\"" << fmt(kMargin + kSide / 2)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 16 "
     << fmt(kMargin + kSide / 2) << ")\">1/q</text>\n";
  os << "  <text x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kSize - kMargin + 16)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";
  os << "  <text x=\"" << fmt(kMargin + kSide) << "\" y=\"" << fmt(kSize - kMargin + 16)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1</text>\n";
  os << "  <text x=\"" << fmt(kMargin - 10) << "\" y=\"" << fmt(kMargin + 4)
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace mhlab
