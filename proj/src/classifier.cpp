#include "mhlab/classifier.hpp"

#include <algorithm>
#include <random>

namespace mhlab {

std::string to_string(Case c) {
  switch (c) {
    case Case::A: return "A";
    case Case::B: return "B";
    case Case::C: return "C";
    case Case::D: return "D";
    case Case::Excluded: return "Excluded";
  }
  return "Unknown";
}

std::string to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::Pass: return "pass";
    case RelationStatus::Fail: return "fail";
    case RelationStatus::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

namespace {

Classification excluded(ExclusionReason r, std::string detail) {
  Classification c;
  c.kase = Case::Excluded;
  c.reason = r;
  c.detail = std::move(detail);
  return c;
}

}  // namespace

/// Case selection shared by the exact and the floating-point classifier.
void assign_case(Classification& c) {
  Rat N(c.N);
  if (N >= c.d_h + Rat(1, 2))
    c.kase = Case::A;
  else if (Rat(c.nu_max()) >= c.d_h)
    c.kase = Case::B;
  else if (c.hessian.max_root_location == RootLocation::OffAxisNew)
    c.kase = Case::D;
  else
    c.kase = Case::C;
  c.redundancy_flag = Rat(c.T) <= 2 * c.d_h - 2;
  c.tie_flag = c.hessian.tie;
  if (c.hessian.max_root_location == RootLocation::NoRealRoots && (c.kase == Case::C))
    c.diagnostics.push_back("Hessian determinant has no real roots: T = 0, conditions c9/c10 are redundant");
  if (c.tie_flag && (c.kase == Case::C || c.kase == Case::D))
    c.diagnostics.push_back("T is attained by both an axis/coincident root and a new off-axis root: c9, c10, c12, c13 all imposed");
}

Classification classify(const BivariatePoly& p) {
  if (p.is_zero()) return excluded(ExclusionReason::Zero, "the zero polynomial");
  Classification c;
  try {
    c.kappa = detect_kappa(p);
  } catch (const NotAdmitted& e) {
    return excluded(e.reason, e.what());
  }
  if (!gradient_vanishes_at_origin(p))
    return excluded(ExclusionReason::GradientNonzero, "gradient at the origin is nonzero");

  c.d_h = homogeneous_distance(c.kappa);
  c.factorization = factorize(p, c.kappa);
  const auto& f = c.factorization;
  c.nu1 = f.nu1;
  c.nu2 = f.nu2;
  c.N = real_root_multiplicity_N(f);
  c.h_phi = height(f, c.d_h);

  long lhs = static_cast<long>(f.nu1) * c.kappa.s + static_cast<long>(f.nu2) * c.kappa.r +
             static_cast<long>(f.n) * c.kappa.r * c.kappa.s;
  if (lhs != c.kappa.m) throw InternalError("degree identity nu1*s + nu2*r + n*r*s = m violated");
  if (!(reconstruct(f, c.kappa) == normalized(p, c.kappa)))
    throw InternalError("factorization does not reconstruct the input");

  c.hessian = hessian_root_data(p, c.kappa, f);
  c.T = c.hessian.T;
  c.h_w = c.hessian.h_w;
  if (c.kappa.swapped) c.diagnostics.push_back("variables exchanged so that kappa1 < kappa2");
  assign_case(c);
  return c;
}

std::vector<HalfPlane> theorem_inequalities(const Classification& c) {
  if (!c.admitted()) throw PreconditionError("theorem_inequalities: input is excluded");
  std::vector<HalfPlane> hs;
  hs.push_back(HalfPlane{Rat(1), Rat(-1), Rat(0), false, "c1", {}});
  hs.push_back(above_line(3, -2, false, "c2"));
  hs.push_back(above_line(Rat(1, 3), 0, false, "c3"));
  hs.push_back(above_line(1, Rat(-1) / (c.d_h + 1), true, "cdh"));
  Rat N(c.N), T(c.T), nu(c.nu_max());
  std::string dom = c.redundancy_flag ? "cdh" : "";
  auto add_c = [&] {
    hs.push_back(above_line((2 * T + 5) / (T + 3), -1, true, "c9"));
    hs.push_back(above_line((T + 3) / (2 * T + 5), Rat(-1) / (2 * T + 5), true, "c10"));
    hs[hs.size() - 2].dominated_by = dom;
    hs.back().dominated_by = dom;
  };
  auto add_d = [&] {
    hs.push_back(above_line(Rat(5, 3), -(2 * T + 12) / (3 * T + 12), true, "c12"));
    hs.push_back(above_line(Rat(3, 5), Rat(-4) / (T + 4), true, "c13"));
    hs[hs.size() - 2].dominated_by = dom;
    hs.back().dominated_by = dom;
  };
  switch (c.kase) {
    case Case::A:
      hs.push_back(above_line(1, Rat(-1) / N, true, "c4"));
      hs.push_back(above_line((N + 2) / (N + 1), Rat(-2) / (N + 1), true, "c5"));
      hs.push_back(above_line((N + 1) / (N + 2), Rat(-1) / (N + 2), true, "c6"));
      break;
    case Case::B:
      hs.push_back(above_line(1, Rat(-1) / (nu + 1), true, "c7"));
      break;
    case Case::C:
      add_c();
      if (c.tie_flag) add_d();
      break;
    case Case::D:
      if (c.tie_flag) add_c();
      add_d();
      break;
    case Case::Excluded:
      break;
  }
  return hs;
}

Endpoint gressman_endpoint(const Rat& H) {
  if (H < 0) throw PreconditionError("gressman_endpoint: H must be nonnegative");
  return {(H + 3) / (H + 4), (H + 1) / (H + 4), Rat(4) / (H + 4), "c2 limit point for height " + to_display(H)};
}

Endpoint summability_endpoint(const Classification& c) {
  if (!c.admitted()) throw PreconditionError("summability_endpoint: input is excluded");
  const Rat& d = c.d_h;
  Rat N(c.N), T(c.T), nu(c.nu_max());
  switch (c.kase) {
    case Case::A:
      if (N >= d + 1) return {1 - 1 / N, 1 - 2 / N, 3 / N, "c4 & c5"};
      return {(2 * d + 1 - N) / (d + 1), (2 * d - N) / (d + 1), (2 * (N - d) + 1) / (d + 1), "cdh & c5"};
    case Case::B: {
      Endpoint e = gressman_endpoint(2 * nu - 2);
      e.label = "c7 & c2";
      return e;
    }
    case Case::C:
    case Case::D:
      if (c.redundancy_flag) {
        Endpoint e = gressman_endpoint(2 * d - 2);
        e.label = "cdh & c2";
        return e;
      }
      if (c.kase == Case::C && !c.tie_flag)
        return {(T + 3) * d / ((T + 2) * (d + 1)), (T * (d - 1) + 3 * d - 2) / ((T + 2) * (d + 1)),
                (3 * T - 2 * d + 6) / ((T + 2) * (d + 1)), "cdh & c9"};
      return {(T * (2 * d - 1) + 12 * d) / (2 * (T + 4) * (d + 1)),
              (T * (2 * d - 3) + 12 * d - 8) / (2 * (T + 4) * (d + 1)), 4 * (T - d + 3) / ((T + 4) * (d + 1)),
              "cdh & c12"};
    case Case::Excluded:
      break;
  }
  throw PreconditionError("summability_endpoint: input is excluded");
}

int smallest_positive_y1_exponent(const Classification& c) {
  // Support in normalized variables: i = nu1 + r*(n - b) for b = 0..n.
  const auto& f = c.factorization;
  int best = 0;
  for (int b = 0; b <= f.n; ++b) {
    if (f.g.coeff(b) == 0) continue;
    int i = f.nu1 + c.kappa.r * (f.n - b);
    if (i > 0 && (best == 0 || i < best)) best = i;
  }
  return best;
}

HeightRelation height_relation_check(const Classification& c) {
  HeightRelation hr;
  hr.h_phi = c.h_phi;
  hr.h_w = c.h_w;
  if (!c.admitted()) {
    hr.relation = "input excluded";
    return hr;
  }
  const Rat& d = c.d_h;
  auto verdict = [&](Rat expected, std::string rel) {
    hr.expected = std::move(expected);
    hr.relation = std::move(rel);
    hr.status = hr.h_w == hr.expected ? RelationStatus::Pass : RelationStatus::Fail;
    return hr;
  };
  if (c.kase == Case::A) return verdict(Rat(2 * c.N - 3), "h(w) = 2N - 3 = 2h(phi) - 3");
  if (c.kase == Case::B) return verdict(Rat(2 * c.nu_max() - 2), "h(w) = 2 max(nu1, nu2) - 2 = 2h(phi) - 2");
  int A = smallest_positive_y1_exponent(c);
  if (c.nu1 == 0 && Rat(A) > 2 * d) return verdict(Rat(A - 2), "h(w) = A - 2 with A = " + std::to_string(A));
  if (c.kappa.s >= 2) return verdict(2 * d - 2, "h(w) = 2 d_h - 2 = 2h(phi) - 2");
  bool off_axis_at_T = std::any_of(c.hessian.attaining.begin(), c.hessian.attaining.end(), [](RootLocation l) {
    return l == RootLocation::OffAxisCoincident || l == RootLocation::OffAxisNew;
  });
  if (off_axis_at_T && Rat(c.T) > 2 * d - 2) {
    hr.expected = hr.h_w;
    hr.relation = "s = 1 with an off-axis Hessian root above 2 d_h - 2: no closed-form relation";
    hr.status = RelationStatus::NotApplicable;
    return hr;
  }
  return verdict(2 * d - 2, "h(w) = 2 d_h - 2 = 2h(phi) - 2");
}

namespace {

/// Portable bounded draw; std distributions differ across standard libraries.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat draw_nonzero_rat(std::mt19937_64& rng, long bound) {
  long num = 0;
  while (num == 0) num = draw(rng, -bound, bound);
  return rat(num, draw(rng, 1, 3));
}

}  // namespace

std::vector<CaseDInstance> search_case_d(std::uint64_t seed, int trials) {
  if (trials < 1) throw PreconditionError("search_case_d: trials must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<CaseDInstance> out;
  static const std::pair<int, int> weights[] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 5}, {3, 4}};
  for (int t = 0; t < trials; ++t) {
    auto [s, r] = weights[draw(rng, 0, 5)];
    int nu1 = static_cast<int>(draw(rng, 0, 2)), nu2 = static_cast<int>(draw(rng, 0, 2));
    UnivariatePoly g = UnivariatePoly::constant(draw_nonzero_rat(rng, 3));
    int linear = static_cast<int>(draw(rng, 1, 3));
    for (int k = 0; k < linear; ++k) g = g * UnivariatePoly::linear_root(draw_nonzero_rat(rng, 6)).pow(draw(rng, 1, 2));
    if (draw(rng, 0, 2) == 0) {
      // u^2 + a u + b with a^2 < 4b has no real roots.
      Rat a(draw(rng, -3, 3)), b(draw(rng, 1, 4));
      if (a * a < 4 * b) g = g * UnivariatePoly({b, a, Rat(1)});
    }
    BivariatePoly phi = BivariatePoly::monomial(Rat(1), nu1, nu2) * homogenize(g, s, r);
    Classification c = classify(phi);
    if (c.kase == Case::D) out.push_back({std::move(phi), std::move(c)});
  }
  return out;
}

}  // namespace mhlab
