#include "mhlab/factorization.hpp"

#include <algorithm>

namespace mhlab {

Reduction reduce_to_univariate(const BivariatePoly& p, const MixedHomogeneity& k) {
  if (p.is_zero()) throw PreconditionError("reduce_to_univariate: zero polynomial");
  BivariatePoly q = normalized(p, k);
  Reduction red;
  red.nu1 = q.order_y1();
  red.nu2 = q.order_y2();
  // Points on s*i + r*j = m: i - nu1 = r*(n - b), j - nu2 = s*b.
  int n = -1;
  for (const auto& [e, c] : q.terms()) {
    if (static_cast<long>(k.s) * e.i + static_cast<long>(k.r) * e.j != k.m)
      throw InternalError("support point off the weighted line during reduction");
    if ((e.j - red.nu2) % k.s != 0 || (e.i - red.nu1) % k.r != 0)
      throw InternalError("support exponent not expressible in u = y2^s/y1^r");
    n = std::max(n, (e.j - red.nu2) / k.s);
  }
  std::vector<Rat> coeffs(static_cast<std::size_t>(n) + 1, Rat(0));
  for (const auto& [e, c] : q.terms()) {
    int b = (e.j - red.nu2) / k.s;
    if ((e.i - red.nu1) != k.r * (n - b)) throw InternalError("inconsistent reduced degree");
    coeffs[static_cast<std::size_t>(b)] = c;
  }
  red.g = UnivariatePoly(std::move(coeffs));
  red.C = red.g.lead();
  return red;
}

CanonicalFactorization factorize(const BivariatePoly& p, const MixedHomogeneity& k) {
  Reduction red = reduce_to_univariate(p, k);
  CanonicalFactorization f;
  f.C = red.C;
  f.nu1 = red.nu1;
  f.nu2 = red.nu2;
  f.g = red.g;
  f.n = red.g.degree();
  for (auto& sf : squarefree_decomposition(red.g)) {
    RootFactor rf;
    rf.real_root_count = sturm_real_root_count(sf.factor, {});
    rf.real_root_approximations = real_root_approximations(sf.factor);
    rf.minimal_factor = std::move(sf.factor);
    rf.multiplicity = sf.multiplicity;
    f.factors.push_back(std::move(rf));
  }
  return f;
}

BivariatePoly homogenize(const UnivariatePoly& f, int s, int r) {
  BivariatePoly out;
  int d = f.degree();
  for (int b = 0; b <= d; ++b) out.add_term({r * (d - b), s * b}, f.coeff(b));
  return out;
}

BivariatePoly reconstruct(const CanonicalFactorization& f, const MixedHomogeneity& k) {
  BivariatePoly out = BivariatePoly::monomial(f.C, f.nu1, f.nu2);
  for (const auto& rf : f.factors)
    out *= homogenize(rf.minimal_factor, k.s, k.r).pow(static_cast<unsigned>(rf.multiplicity));
  return out;
}

int real_root_multiplicity_N(const CanonicalFactorization& f) {
  int N = 0;
  for (const auto& rf : f.factors)
    if (rf.real_root_count > 0) N = std::max(N, rf.multiplicity);
  return N;
}

Rat height(const CanonicalFactorization& f, const Rat& d_h) {
  Rat h = max(Rat(f.nu1), Rat(f.nu2));
  if (f.n == 0) return h;
  h = max(h, d_h);
  return max(h, Rat(real_root_multiplicity_N(f)));
}

std::optional<MixedHomogeneity> kappa_of_hessian(const MixedHomogeneity& k) {
  int mw = 2 * (k.m - k.r - k.s);
  if (mw <= 0) return std::nullopt;
  MixedHomogeneity out = k;
  out.m = mw;
  return out;
}

std::string to_string(RootLocation loc) {
  switch (loc) {
    case RootLocation::Axis1: return "Axis1";
    case RootLocation::Axis2: return "Axis2";
    case RootLocation::OffAxisCoincident: return "OffAxisCoincident";
    case RootLocation::OffAxisNew: return "OffAxisNew";
    case RootLocation::NoRealRoots: return "NoRealRoots";
  }
  return "Unknown";
}

HessianRootData hessian_root_data(const BivariatePoly& p, const MixedHomogeneity& k,
                                  const CanonicalFactorization& fphi) {
  HessianRootData out;
  out.w = hessian_det(p);
  if (out.w.is_zero()) throw InternalError("Hessian determinant vanishes identically");
  out.kappa_w = kappa_of_hessian(k);
  if (!out.kappa_w) {
    if (out.w.size() != 1 || out.w.coeff(0, 0) == 0) throw InternalError("weighted degree 0 but w is not constant");
    out.h_w = 0;
    return out;
  }
  out.factorization_w = factorize(out.w, *out.kappa_w);
  const auto& fw = out.factorization_w;

  // Squarefree part of the real-rooted factors of g_phi, for coincidence tests.
  UnivariatePoly phi_real = UnivariatePoly::constant(1);
  for (const auto& rf : fphi.factors)
    if (rf.real_root_count > 0) phi_real = phi_real * rf.minimal_factor;

  int T = std::max(fw.nu1, fw.nu2);
  for (const auto& rf : fw.factors)
    if (rf.real_root_count > 0) T = std::max(T, rf.multiplicity);
  out.T = T;

  if (T > 0) {
    if (fw.nu1 == T) out.attaining.push_back(RootLocation::Axis1);
    if (fw.nu2 == T) out.attaining.push_back(RootLocation::Axis2);
    for (const auto& rf : fw.factors) {
      if (rf.real_root_count == 0 || rf.multiplicity != T) continue;
      UnivariatePoly common = gcd(rf.minimal_factor, phi_real);
      int shared = common.degree() > 0 ? sturm_real_root_count(common, {}) : 0;
      out.coincident_roots_at_T += shared;
      out.new_roots_at_T += rf.real_root_count - shared;
    }
    if (out.coincident_roots_at_T > 0) out.attaining.push_back(RootLocation::OffAxisCoincident);
    if (out.new_roots_at_T > 0) out.attaining.push_back(RootLocation::OffAxisNew);
  }

  bool c_type = false, d_type = false;
  for (auto loc : out.attaining) (loc == RootLocation::OffAxisNew ? d_type : c_type) = true;
  out.tie = c_type && d_type;
  if (out.attaining.empty())
    out.max_root_location = RootLocation::NoRealRoots;
  else if (d_type)
    out.max_root_location = RootLocation::OffAxisNew;
  else
    out.max_root_location = out.attaining.front();

  out.h_w = height(fw, homogeneous_distance(*out.kappa_w));
  return out;
}

}  // namespace mhlab
