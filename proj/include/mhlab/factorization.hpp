#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhlab/mixhom.hpp"
#include "mhlab/upoly.hpp"

namespace mhlab {

struct RootFactor {
  UnivariatePoly minimal_factor;  // monic squarefree factor of g over Q
  int multiplicity = 0;
  int real_root_count = 0;
  std::vector<double> real_root_approximations;
};

/// p = C * y1^nu1 * y2^nu2 * prod hom(f)^mult, in normalized variables, where
/// hom(f)(y) = y1^{r deg f} f(y2^s / y1^r).
struct CanonicalFactorization {
  Rat C;
  int nu1 = 0;
  int nu2 = 0;
  std::vector<RootFactor> factors;
  int n = 0;
  UnivariatePoly g;  // reduced polynomial, g(0) != 0, lead(g) = C
};

struct Reduction {
  int nu1 = 0;
  int nu2 = 0;
  UnivariatePoly g;
  Rat C;
};

/// Works in normalized variables (applies k.swapped). Monomials reduce to a constant g.
/// Throws InternalError when a support point is off the weighted line.
Reduction reduce_to_univariate(const BivariatePoly& p, const MixedHomogeneity& k);

CanonicalFactorization factorize(const BivariatePoly& p, const MixedHomogeneity& k);

/// y1^{r deg f} f(y2^s / y1^r).
BivariatePoly homogenize(const UnivariatePoly& f, int s, int r);

/// Expands the factorization back to a polynomial in normalized variables.
BivariatePoly reconstruct(const CanonicalFactorization& f, const MixedHomogeneity& k);

/// Highest multiplicity of a real off-axis root; 0 if none.
int real_root_multiplicity_N(const CanonicalFactorization& f);

/// max{d_h, nu1, nu2, N}, or max{nu1, nu2} for a monomial (n = 0).
Rat height(const CanonicalFactorization& f, const Rat& d_h);

/// Homogeneity of w = det of the Hessian; nullopt when w has weighted degree 0 (constant).
std::optional<MixedHomogeneity> kappa_of_hessian(const MixedHomogeneity& k);

enum class RootLocation { Axis1, Axis2, OffAxisCoincident, OffAxisNew, NoRealRoots };

std::string to_string(RootLocation loc);

struct HessianRootData {
  BivariatePoly w;  // original variables
  std::optional<MixedHomogeneity> kappa_w;
  CanonicalFactorization factorization_w;
  int T = 0;
  RootLocation max_root_location = RootLocation::NoRealRoots;
  std::vector<RootLocation> attaining;  // every location whose multiplicity equals T
  int coincident_roots_at_T = 0;
  int new_roots_at_T = 0;
  Rat h_w;
  bool tie = false;  // T attained both on an axis/coincident root and on a new off-axis root
};

/// Axis1 is the line y1 = 0 (multiplicity nu1(w)), Axis2 is y2 = 0, both in normalized variables.
HessianRootData hessian_root_data(const BivariatePoly& p, const MixedHomogeneity& k,
                                  const CanonicalFactorization& fphi);

}  // namespace mhlab
