#include "mhlab/mixhom.hpp"

#include <algorithm>
#include <numeric>

namespace mhlab {

std::string to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::Zero: return "Zero";
    case ExclusionReason::Monomial: return "Monomial";
    case ExclusionReason::NotMixedHomogeneous: return "NotMixedHomogeneous";
    case ExclusionReason::Homogeneous: return "Homogeneous";
    case ExclusionReason::GradientNonzero: return "GradientNonzero";
  }
  return "Unknown";
}

TaylorSupport taylor_support(const BivariatePoly& p) {
  TaylorSupport out;
  for (const auto& kv : p.terms()) out.push_back(kv.first);
  std::sort(out.begin(), out.end(), [](Exponent a, Exponent b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  return out;
}

MixedHomogeneity detect_kappa(const BivariatePoly& p) {
  if (p.is_zero()) throw NotAdmitted(ExclusionReason::Zero, "the zero polynomial has no homogeneity");
  auto pts = taylor_support(p);
  if (pts.size() == 1) throw NotAdmitted(ExclusionReason::Monomial, "single support point: " + p.to_string());
  // Two support points fix the line s*i + r*j = m up to scale.
  long di = pts[1].i - pts[0].i, dj = pts[1].j - pts[0].j;
  if (di * dj >= 0)
    throw NotAdmitted(ExclusionReason::NotMixedHomogeneous, "support does not lie on a line with positive weights");
  long g = std::gcd(std::labs(di), std::labs(dj));
  long s = std::labs(dj) / g, r = std::labs(di) / g;
  long m = s * pts[0].i + r * pts[0].j;
  for (const auto& e : pts)
    if (s * e.i + r * e.j != m)
      throw NotAdmitted(ExclusionReason::NotMixedHomogeneous, "support is not contained in a single weighted line");
  if (s == r) throw NotAdmitted(ExclusionReason::Homogeneous, "kappa1 = kappa2: the polynomial is homogeneous");
  MixedHomogeneity k;
  k.m = static_cast<int>(m);
  if (s < r) {
    k.s = static_cast<int>(s);
    k.r = static_cast<int>(r);
  } else {
    k.s = static_cast<int>(r);
    k.r = static_cast<int>(s);
    k.swapped = true;
  }
  return k;
}

Rat homogeneous_distance(const MixedHomogeneity& k) { return rat(k.m, k.r + k.s); }

bool gradient_vanishes_at_origin(const BivariatePoly& p) { return p.coeff(1, 0) == 0 && p.coeff(0, 1) == 0; }

bool verify_mixed_homogeneity(const BivariatePoly& p, const MixedHomogeneity& k) {
  for (const auto& kv : p.terms()) {
    Exponent e = kv.first;
    if (k.swapped) std::swap(e.i, e.j);
    if (static_cast<long>(k.s) * e.i + static_cast<long>(k.r) * e.j != k.m) return false;
  }
  return true;
}

BivariatePoly normalized(const BivariatePoly& p, const MixedHomogeneity& k) { return k.swapped ? p.swapped() : p; }

}  // namespace mhlab
