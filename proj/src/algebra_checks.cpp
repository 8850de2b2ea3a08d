#include "mhlab/algebra_checks.hpp"

#include "mhlab/classifier.hpp"

#include <algorithm>
#include <numeric>

namespace mhlab {

namespace {

/// Terms of p with y1-exponent 0, as a polynomial in y2.
BivariatePoly slice_y1_zero(const BivariatePoly& p) {
  BivariatePoly out;
  for (const auto& [e, c] : p.terms())
    if (e.i == 0) out.add_term(e, c);
  return out;
}

long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat draw_rat(std::mt19937_64& rng, const RandomPolyConfig& cfg) {
  long num = 0;
  while (num == 0) num = draw(rng, -cfg.max_abs_numerator, cfg.max_abs_numerator);
  return rat(num, draw(rng, 1, cfg.max_denominator));
}

/// Distinct nonzero rationals.
std::vector<Rat> draw_roots(std::mt19937_64& rng, const RandomPolyConfig& cfg, int count, const std::vector<Rat>& avoid) {
  std::vector<Rat> out;
  while (static_cast<int>(out.size()) < count) {
    Rat x = draw_rat(rng, cfg);
    if (std::find(out.begin(), out.end(), x) != out.end()) continue;
    if (std::find(avoid.begin(), avoid.end(), x) != avoid.end()) continue;
    out.push_back(x);
  }
  return out;
}

/// y2^s - lambda*y1^r
BivariatePoly curve_factor(int s, int r, const Rat& lambda) {
  return BivariatePoly::monomial(Rat(1), 0, s) - BivariatePoly::monomial(lambda, r, 0);
}

std::string describe(const BivariatePoly& p) { return p.to_string(); }

}  // namespace

std::optional<CurveOrder> order_along_curve(const BivariatePoly& w, const Rat& lambda, int r) {
  if (w.is_zero()) return std::nullopt;
  BivariatePoly shifted = compose_shift(w, lambda, r);
  CurveOrder out;
  out.order = shifted.order_y2();
  for (const auto& [e, c] : shifted.terms())
    if (e.j == out.order) out.cofactor.add_term({e.i, 0}, c);
  out.cofactor_nonzero_on_curve = out.cofactor.size() == 1;
  return out;
}

CurveOrder curve_vanishing_order(const BivariatePoly& p, const Rat& lambda, int r) {
  if (lambda == 0) throw PreconditionError("curve_vanishing_order: lambda must be nonzero");
  if (r < 2) throw PreconditionError("curve_vanishing_order: r must be at least 2");
  auto res = order_along_curve(hessian_det(p), lambda, r);
  if (!res) throw InternalError("Hessian determinant vanishes identically");
  return *res;
}

OrderReport axis_vanishing_order(const BivariatePoly& p) {
  int n = p.order_y1();
  if (p.is_zero() || n < 1) throw PreconditionError("axis_vanishing_order: p is not divisible by y1");
  BivariatePoly Q = p.shift_down(n, 0);
  BivariatePoly slice = slice_y1_zero(Q);
  if (slice.size() != 1) throw PreconditionError("axis_vanishing_order: Q(0, y2) is not a single monomial");
  auto [e, c] = slice.leading();
  int m = e.j;
  if (m < 1) throw PreconditionError("axis_vanishing_order: Q(0, y2) must have positive degree");

  BivariatePoly w = hessian_det(p);
  OrderReport rep;
  rep.claimed_order = 2 * n - 2;
  rep.computed_order = w.is_zero() ? -1 : w.order_y1();
  rep.description = describe(p) + " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
  if (rep.computed_order >= rep.claimed_order) {
    Rat lead = c * c * n * m * (1 - n - m);
    rep.cofactor_ok = slice_y1_zero(w.shift_down(rep.claimed_order, 0)) == BivariatePoly::monomial(lead, 0, 2 * m - 2);
  }
  return rep;
}

OrderReport transversal_vanishing_order(const BivariatePoly& p) {
  BivariatePoly head = slice_y1_zero(p);
  if (head.size() != 1) throw PreconditionError("transversal_vanishing_order: p(0, y2) is not a single monomial");
  auto [eh, a] = head.leading();
  int M = eh.j;
  BivariatePoly rest = p - head;
  if (rest.is_zero()) throw PreconditionError("transversal_vanishing_order: no y1-dependent part");
  int A = rest.order_y1();
  BivariatePoly slice = slice_y1_zero(rest.shift_down(A, 0));
  if (slice.size() != 1) throw PreconditionError("transversal_vanishing_order: Q(0, y2) is not a single monomial");
  auto [eq, c] = slice.leading();
  int B = eq.j;
  if (std::min(A, M) < 2) throw PreconditionError("transversal_vanishing_order: requires min(A, M) >= 2");

  BivariatePoly w = hessian_det(p);
  OrderReport rep;
  rep.claimed_order = A - 2;
  rep.computed_order = w.is_zero() ? -1 : w.order_y1();
  rep.description = describe(p) + " (A=" + std::to_string(A) + ", M=" + std::to_string(M) + ", B=" + std::to_string(B) + ")";
  if (rep.computed_order >= rep.claimed_order) {
    Rat lead = a * c * A * (A - 1) * M * (M - 1);
    rep.cofactor_ok = slice_y1_zero(w.shift_down(rep.claimed_order, 0)) == BivariatePoly::monomial(lead, 0, B + M - 2);
  }
  return rep;
}

int root_multiplicity(const UnivariatePoly& g, const Rat& lambda) {
  int mult = 0;
  UnivariatePoly q = g;
  UnivariatePoly lin = UnivariatePoly::linear_root(lambda);
  while (!q.is_zero() && q.eval(lambda) == 0) {
    q = exact_quotient(q, lin);
    ++mult;
  }
  return mult;
}

std::vector<Rat> rational_real_roots(const CanonicalFactorization& f) {
  if (f.n == 0) return {};
  return rational_roots(f.g);
}

BivariatePoly rescaled_piece(const CanonicalFactorization& f, int r, const Rat& lambda, int j, int k) {
  int nl = root_multiplicity(f.g, lambda);
  UnivariatePoly G = exact_quotient(f.g * (Rat(1) / f.C), UnivariatePoly::linear_root(lambda).pow(static_cast<unsigned>(nl)));
  Rat delta = pow2(static_cast<long>(j) * r - k);
  BivariatePoly X = BivariatePoly::monomial(delta, 0, 1) + BivariatePoly::monomial(lambda, r, 0);
  BivariatePoly Y = BivariatePoly::monomial(Rat(1), r, 0);
  BivariatePoly homG;
  int dg = G.degree();
  for (int b = 0; b <= dg; ++b) {
    if (G.coeff(b) == 0) continue;
    homG += X.pow(static_cast<unsigned>(b)) * Y.pow(static_cast<unsigned>(dg - b)) * G.coeff(b);
  }
  return BivariatePoly::monomial(f.C, f.nu1, nl) * X.pow(static_cast<unsigned>(f.nu2)) * homG;
}

bool dyadic_rescaling_identity(const BivariatePoly& p, int l, int j, int k) {
  if (j < 0 || k < 0) throw PreconditionError("dyadic_rescaling_identity: j, k must be nonnegative");
  MixedHomogeneity kap = detect_kappa(p);
  if (kap.s != 1) throw PreconditionError("dyadic_rescaling_identity: requires s = 1");
  CanonicalFactorization f = factorize(p, kap);
  auto roots = rational_real_roots(f);
  if (l < 1 || l > static_cast<int>(roots.size()))
    throw PreconditionError("dyadic_rescaling_identity: no rational real root with index " + std::to_string(l));
  const Rat& lambda = roots[static_cast<std::size_t>(l - 1)];
  int r = kap.r;
  BivariatePoly q = normalized(p, kap);
  BivariatePoly a = BivariatePoly::monomial(pow2(-j), 1, 0);
  BivariatePoly b = BivariatePoly::monomial(pow2(-k), 0, 1) + BivariatePoly::monomial(lambda * pow2(-static_cast<long>(j) * r), r, 0);
  BivariatePoly lhs = substitute(q, a, b);
  int nl = root_multiplicity(f.g, lambda);
  long e = -static_cast<long>(j) * f.nu1 - static_cast<long>(k) * nl - static_cast<long>(j) * r * f.nu2 -
           static_cast<long>(j) * r * (f.n - nl);
  return lhs == rescaled_piece(f, r, lambda, j, k) * pow2(e);
}

BivariatePoly random_mixed_homogeneous(std::mt19937_64& rng, const RandomPolyConfig& cfg, bool force_s1) {
  int r = static_cast<int>(draw(rng, 2, cfg.max_r));
  int s = 1;
  if (!force_s1) {
    std::vector<int> options;
    for (int t = 1; t < r; ++t)
      if (std::gcd(t, r) == 1) options.push_back(t);
    s = options[static_cast<std::size_t>(draw(rng, 0, static_cast<long>(options.size()) - 1))];
  }
  int nu1 = static_cast<int>(draw(rng, 0, cfg.max_nu)), nu2 = static_cast<int>(draw(rng, 0, cfg.max_nu));
  int nf = static_cast<int>(draw(rng, 1, cfg.max_factors));
  BivariatePoly phi = BivariatePoly::monomial(draw_rat(rng, cfg), nu1, nu2);
  for (const auto& lam : draw_roots(rng, cfg, nf, {}))
    phi *= curve_factor(s, r, lam).pow(static_cast<unsigned>(draw(rng, 1, cfg.max_multiplicity)));
  if (draw(rng, 0, 2) == 0) {
    // y2^{2s} + a y2^s y1^r + b y1^{2r} with a^2 < 4b
    long a = draw(rng, -3, 3), b = draw(rng, 1, 4);
    if (a * a < 4 * b)
      phi *= BivariatePoly::monomial(Rat(1), 0, 2 * s) + BivariatePoly::monomial(Rat(a), r, s) +
             BivariatePoly::monomial(Rat(b), 2 * r, 0);
  }
  return phi;
}

namespace {

RandomPolyConfig suite_config() {
  RandomPolyConfig cfg;
  cfg.max_factors = 2;
  cfg.max_multiplicity = 3;
  cfg.max_nu = 2;
  return cfg;
}

void record(SuiteReport& rep, bool ok, const std::string& what) {
  ++rep.instances;
  if (ok)
    ++rep.passed;
  else if (rep.failures.size() < 10)
    rep.failures.push_back(what);
}

}  // namespace

SuiteReport curve_order_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"curve order 2N-3", 0, 0, {}};
  std::mt19937_64 rng(seed);
  RandomPolyConfig cfg = suite_config();
  for (int t = 0; t < count; ++t) {
    int r = static_cast<int>(draw(rng, 2, cfg.max_r));
    int N = static_cast<int>(draw(rng, 2, 5));
    auto roots = draw_roots(rng, cfg, 1 + static_cast<int>(draw(rng, 0, 1)), {});
    const Rat& lambda = roots[0];
    BivariatePoly Q = BivariatePoly::monomial(draw_rat(rng, cfg), static_cast<int>(draw(rng, 0, 2)),
                                              static_cast<int>(draw(rng, 0, 2)));
    for (std::size_t i = 1; i < roots.size(); ++i)
      Q *= curve_factor(1, r, roots[i]).pow(static_cast<unsigned>(draw(rng, 1, 2)));
    BivariatePoly phi = curve_factor(1, r, lambda).pow(static_cast<unsigned>(N)) * Q;
    CurveOrder co = curve_vanishing_order(phi, lambda, r);
    BivariatePoly on_curve = substitute(Q, BivariatePoly::y1(), BivariatePoly::monomial(lambda, r, 0));
    BivariatePoly expected = on_curve * on_curve * BivariatePoly::monomial(Rat(-N * N * (N - 1) * r * (r - 1)) * lambda, r - 2, 0);
    bool ok = co.order == 2 * N - 3 && co.cofactor_nonzero_on_curve && co.cofactor == expected;
    record(rep, ok, phi.to_string() + ": order " + std::to_string(co.order) + ", expected " + std::to_string(2 * N - 3));
  }
  return rep;
}

SuiteReport homogeneous_control_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"homogeneous control r=1 order >= 2N-2", 0, 0, {}};
  std::mt19937_64 rng(seed);
  RandomPolyConfig cfg = suite_config();
  for (int t = 0; t < count; ++t) {
    int N = static_cast<int>(draw(rng, 2, 5));
    auto roots = draw_roots(rng, cfg, 2, {});
    BivariatePoly phi = curve_factor(1, 1, roots[0]).pow(static_cast<unsigned>(N)) *
                        BivariatePoly::monomial(draw_rat(rng, cfg), static_cast<int>(draw(rng, 1, 2)),
                                                static_cast<int>(draw(rng, 0, 2))) *
                        curve_factor(1, 1, roots[1]).pow(static_cast<unsigned>(draw(rng, 0, 2)));
    auto co = order_along_curve(hessian_det(phi), roots[0], 1);
    bool ok = !co || co->order >= 2 * N - 2;
    record(rep, ok, phi.to_string() + ": order " + (co ? std::to_string(co->order) : "inf"));
  }
  return rep;
}

SuiteReport axis_order_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"axis order 2n-2", 0, 0, {}};
  std::mt19937_64 rng(seed);
  RandomPolyConfig cfg = suite_config();
  for (int t = 0; t < count; ++t) {
    BivariatePoly phi = random_mixed_homogeneous(rng, cfg);
    if (phi.order_y1() == 0) phi *= BivariatePoly::monomial(Rat(1), static_cast<int>(draw(rng, 1, 3)), 0);
    OrderReport o = axis_vanishing_order(phi);
    record(rep, o.pass() && o.claimed_order == 2 * phi.order_y1() - 2,
           o.description + ": computed " + std::to_string(o.computed_order));
  }
  return rep;
}

SuiteReport transversal_order_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"transversal order A-2", 0, 0, {}};
  std::mt19937_64 rng(seed);
  RandomPolyConfig cfg = suite_config();
  for (int t = 0; t < count;) {
    BivariatePoly phi = random_mixed_homogeneous(rng, cfg);
    phi = phi.shift_down(phi.order_y1(), 0);
    if (phi.size() < 2) continue;
    if (slice_y1_zero(phi).leading().first.j < 2) continue;
    ++t;
    OrderReport o = transversal_vanishing_order(phi);
    record(rep, o.pass(), o.description + ": computed " + std::to_string(o.computed_order));
  }
  return rep;
}

SuiteReport hessian_nonzero_suite(std::uint64_t seed, int count) {
  if (count < 1) throw PreconditionError("hessian_nonzero_suite: count must be at least 1");
  SuiteReport rep{"Hessian determinant not identically zero", 0, 0, {}};
  std::mt19937_64 rng(seed);
  RandomPolyConfig cfg = suite_config();
  for (int t = 0; t < count;) {
    BivariatePoly phi;
    if (t % 10 == 9) {
      int a = static_cast<int>(draw(rng, 1, 6)), b = static_cast<int>(draw(rng, 1, 6));
      phi = BivariatePoly::monomial(draw_rat(rng, cfg), a, b);
      BivariatePoly expected = BivariatePoly::monomial(Rat(a * b * (1 - a - b)) * phi.coeff(a, b) * phi.coeff(a, b),
                                                       2 * a - 2, 2 * b - 2);
      ++t;
      record(rep, hessian_det(phi) == expected, "monomial " + phi.to_string());
      continue;
    }
    phi = random_mixed_homogeneous(rng, cfg);
    if (!gradient_vanishes_at_origin(phi)) continue;
    ++t;
    record(rep, !hessian_det(phi).is_zero(), phi.to_string());
  }
  return rep;
}

SuiteReport dyadic_identity_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"dyadic rescaling identity", 0, 0, {}};
  std::mt19937_64 rng(seed);
  RandomPolyConfig cfg = suite_config();
  cfg.max_r = 4;
  for (int t = 0; t < count; ++t) {
    BivariatePoly phi = random_mixed_homogeneous(rng, cfg, true);
    MixedHomogeneity kap = detect_kappa(phi);
    auto roots = rational_real_roots(factorize(phi, kap));
    int l = 1 + static_cast<int>(draw(rng, 0, static_cast<long>(roots.size()) - 1));
    int j = static_cast<int>(draw(rng, 0, 6)), k = static_cast<int>(draw(rng, 0, 6));
    bool ok = dyadic_rescaling_identity(phi, l, j, k);
    record(rep, ok, phi.to_string() + " l=" + std::to_string(l) + " j=" + std::to_string(j) + " k=" + std::to_string(k));
  }
  return rep;
}

namespace {

/// Admitted classifications of random polynomials, count of them.
template <class F>
void for_admitted(std::uint64_t seed, int count, F&& body) {
  std::mt19937_64 rng(seed);
  RandomPolyConfig cfg = suite_config();
  int seen = 0;
  for (int guard = 0; seen < count && guard < 50 * count; ++guard) {
    BivariatePoly phi = random_mixed_homogeneous(rng, cfg);
    Classification c = classify(phi);
    if (!c.admitted()) continue;
    ++seen;
    body(phi, c);
  }
}

bool on_boundary(Membership m) { return m == Membership::BoundaryIncluded || m == Membership::BoundaryExcluded; }

}  // namespace

SuiteReport structural_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"structural invariants", 0, 0, {}};
  for_admitted(seed, count, [&](const BivariatePoly& phi, const Classification& c) {
    const auto& k = c.kappa;
    const auto& f = c.factorization;
    std::vector<std::string> bad;
    if (reconstruct(f, k) != normalized(phi, k)) bad.push_back("reconstruction");
    if (f.nu1 * k.s + f.nu2 * k.r + f.n * k.r * k.s != k.m) bad.push_back("degree identity");
    if (k.s >= 2) {
      for (const auto& rf : f.factors)
        if (rf.real_root_count > 0 && Rat(rf.multiplicity) >= c.d_h) bad.push_back("real multiplicity >= d_h");
    } else {
      int above = (Rat(f.nu1) > c.d_h) + (Rat(f.nu2) > c.d_h);
      for (const auto& rf : f.factors)
        if (Rat(rf.multiplicity) > c.d_h) above += rf.real_root_count;
      if (above > 1) bad.push_back("several multiplicities above d_h");
    }
    const auto& w = c.hessian.w;
    if (c.hessian.kappa_w && w.size() > 1 && homogeneous_distance(*c.hessian.kappa_w) != 2 * c.d_h - 2)
      bad.push_back("d_h(w) != 2 d_h - 2");
    if (height_relation_check(c).status == RelationStatus::Fail) bad.push_back("height relation");
    std::string what = phi.to_string();
    for (const auto& b : bad) what += "; " + b;
    record(rep, bad.empty(), what);
  });
  return rep;
}

SuiteReport region_suite(std::uint64_t seed, int count) {
  SuiteReport rep{"region invariants", 0, 0, {}};
  for_admitted(seed, count, [&](const BivariatePoly& phi, const Classification& c) {
    RegionPolygon rp = build_region(theorem_inequalities(c));
    std::vector<std::string> bad;
    const auto& vs = rp.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto& a = vs[i];
      const auto& b = vs[(i + 1) % vs.size()];
      const auto& d = vs[(i + 2) % vs.size()];
      if ((b.u - a.u) * (d.v - b.v) - (b.v - a.v) * (d.u - b.u) < 0) bad.push_back("not convex");
      if (a.v > a.u) bad.push_back("vertex above v = u");
    }
    if (contains(rp, Rat(0), Rat(0)) == Membership::Outside) bad.push_back("(0,0) outside");
    if (contains(rp, Rat(1), Rat(1)) == Membership::Outside) bad.push_back("(1,1) outside");
    Endpoint e = summability_endpoint(c);
    if (!on_boundary(contains(rp, e.u, e.v))) bad.push_back("summability endpoint off boundary");
    Endpoint g = gressman_endpoint(c.h_w);
    if (!on_boundary(contains(rp, g.u, g.v)) || g.v != 3 * g.u - 2) bad.push_back("Gressman endpoint off boundary");
    if (!duality_check(rp).closed) bad.push_back("duality");
    std::string what = phi.to_string() + " case " + to_string(c.kase);
    for (const auto& b : bad) what += "; " + b;
    record(rep, bad.empty(), what);
  });
  return rep;
}

}  // namespace mhlab
