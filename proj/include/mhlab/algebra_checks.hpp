#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mhlab/factorization.hpp"

namespace mhlab {

struct CurveOrder {
  int order = 0;
  bool cofactor_nonzero_on_curve = false;  // lowest t-coefficient is c*y1^k with c != 0
  BivariatePoly cofactor;                  // that coefficient, as a polynomial in y1
};

/// Lowest power of t in w(y1, t + lambda*y1^r), w = Hessian determinant of p. Requires lambda != 0, r >= 2.
CurveOrder curve_vanishing_order(const BivariatePoly& p, const Rat& lambda, int r);

/// Same computation on an arbitrary polynomial w and any r >= 1; nullopt when w == 0.
std::optional<CurveOrder> order_along_curve(const BivariatePoly& w, const Rat& lambda, int r);

struct OrderReport {
  int claimed_order = 0;
  int computed_order = 0;
  bool cofactor_ok = false;
  std::string description;
  bool pass() const { return claimed_order == computed_order && cofactor_ok; }
};

/// p = y1^n Q with Q(0, y2) = c*y2^m: w = y1^{2n-2} Qt with Qt(0, y2) = c^2 n m (1-n-m) y2^{2m-2}.
/// Throws PreconditionError when p does not have that shape.
OrderReport axis_vanishing_order(const BivariatePoly& p);

/// p = a*y2^M + y1^A Q with Q(0, y2) = c*y2^B, min(A, M) >= 2:
/// w = y1^{A-2} Qt with Qt(0, y2) = a c A(A-1) M(M-1) y2^{B+M-2}.
OrderReport transversal_vanishing_order(const BivariatePoly& p);

/// phi^l_{j,k} for s = 1: C y1^nu1 y2^{n_l} X^nu2 G_l(X, y1^r) with X = delta*y2 + lambda_l*y1^r,
/// delta = 2^{jr-k} and G_l the homogenized cofactor g / (C (u - lambda_l)^{n_l}).
/// A lambda off the root set is allowed and gives n_l = 0.
BivariatePoly rescaled_piece(const CanonicalFactorization& f, int r, const Rat& lambda, int j, int k);

/// Multiplicity of the rational root lambda of g; 0 when it is not a root.
int root_multiplicity(const UnivariatePoly& g, const Rat& lambda);

/// Rational real roots of the reduced polynomial of p, ascending; index l is 1-based into this list.
std::vector<Rat> rational_real_roots(const CanonicalFactorization& f);

/// Exact check: phi(2^-j y1, 2^-k y2 + lambda_l 2^-jr y1^r) = 2^{-j nu1 - k n_l - jr nu2 - jr(n - n_l)} phi^l_{j,k}.
/// Requires s = 1 and at least l rational real roots.
bool dyadic_rescaling_identity(const BivariatePoly& p, int l, int j, int k);

struct RandomPolyConfig {
  int max_r = 6;
  int max_multiplicity = 5;
  int max_abs_numerator = 10;
  int max_denominator = 10;
  int max_factors = 3;
  int max_nu = 3;
};

/// Random mixed homogeneous polynomial C y1^nu1 y2^nu2 prod (y2^s - lambda y1^r)^n_i with
/// gcd(s, r) = 1, 1 <= s < r, optionally times an irreducible quadratic factor.
BivariatePoly random_mixed_homogeneous(std::mt19937_64& rng, const RandomPolyConfig& cfg, bool force_s1 = false);

struct SuiteReport {
  std::string name;
  int instances = 0;
  int passed = 0;
  std::vector<std::string> failures;
  bool ok() const { return instances > 0 && passed == instances; }
};

SuiteReport curve_order_suite(std::uint64_t seed, int count);
SuiteReport homogeneous_control_suite(std::uint64_t seed, int count);
SuiteReport axis_order_suite(std::uint64_t seed, int count);
SuiteReport transversal_order_suite(std::uint64_t seed, int count);
SuiteReport hessian_nonzero_suite(std::uint64_t seed, int count);
SuiteReport dyadic_identity_suite(std::uint64_t seed, int count);

/// Classifies random polynomials; each admitted one is checked for reconstruction, the degree identity,
/// the real-root multiplicity bounds, d_h(w) = 2 d_h - 2 and the height relation.
SuiteReport structural_suite(std::uint64_t seed, int count);

/// Region of each admitted random polynomial: convexity, corners (0,0) and (1,1), v <= u, both
/// endpoints on the boundary, duality closure.
SuiteReport region_suite(std::uint64_t seed, int count);

}  // namespace mhlab
