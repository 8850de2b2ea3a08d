#pragma once

#include <string>
#include <vector>

#include "mhlab/poly.hpp"

namespace mhlab {

/// Reasons an input is outside the mixed homogeneous setting. Checked in this order.
enum class ExclusionReason { Zero, Monomial, NotMixedHomogeneous, Homogeneous, GradientNonzero };

std::string to_string(ExclusionReason r);

struct NotAdmitted : Error {
  NotAdmitted(ExclusionReason r, const std::string& detail) : Error(detail), reason(r) {}
  ExclusionReason reason;
};

/// Weights kappa = (s/m, r/m) with gcd(s, r) = 1 and s < r after normalization.
/// `swapped` records that y1 and y2 were exchanged to reach s < r.
struct MixedHomogeneity {
  int s = 0;
  int r = 0;
  int m = 0;
  bool swapped = false;

  Rat kappa1() const { return rat(s, m); }
  Rat kappa2() const { return rat(r, m); }
  friend bool operator==(const MixedHomogeneity&, const MixedHomogeneity&) = default;
};

using TaylorSupport = std::vector<Exponent>;

/// Exponents with nonzero coefficient, sorted by y1-exponent then y2-exponent.
TaylorSupport taylor_support(const BivariatePoly& p);

/// Throws NotAdmitted with reason Zero, Monomial, NotMixedHomogeneous or Homogeneous.
MixedHomogeneity detect_kappa(const BivariatePoly& p);

/// d_h = m / (r + s).
Rat homogeneous_distance(const MixedHomogeneity& k);

bool gradient_vanishes_at_origin(const BivariatePoly& p);

/// s*j + r*k = m on the support of p, taken in normalized variables when k.swapped.
bool verify_mixed_homogeneity(const BivariatePoly& p, const MixedHomogeneity& k);

/// p in the variables where s < r holds.
BivariatePoly normalized(const BivariatePoly& p, const MixedHomogeneity& k);

}  // namespace mhlab
