#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mhlab/factorization.hpp"
#include "mhlab/region.hpp"

namespace mhlab {

enum class Case { A, B, C, D, Excluded };

std::string to_string(Case c);

struct Classification {
  Case kase = Case::Excluded;
  std::optional<ExclusionReason> reason;
  std::string detail;  // human-readable exclusion detail

  MixedHomogeneity kappa;
  CanonicalFactorization factorization;
  HessianRootData hessian;

  int N = 0;
  int T = 0;
  Rat d_h;
  int nu1 = 0;
  int nu2 = 0;
  Rat h_phi;
  Rat h_w;
  bool redundancy_flag = false;  // T <= 2 d_h - 2
  bool tie_flag = false;
  bool advisory = false;  // produced by the floating-point classifier
  std::vector<std::string> diagnostics;

  bool admitted() const { return kase != Case::Excluded; }
  int nu_max() const { return nu1 > nu2 ? nu1 : nu2; }
};

/// Exclusions are returned as values (kase == Excluded), never thrown.
Classification classify(const BivariatePoly& p);

/// c1, c2, c3, cdh plus the case-specific strict conditions. Throws PreconditionError on Excluded.
std::vector<HalfPlane> theorem_inequalities(const Classification& c);

struct Endpoint {
  Rat u;
  Rat v;
  Rat theta_max;
  std::string label;
};

Endpoint summability_endpoint(const Classification& c);

/// ((H+3)/(H+4), (H+1)/(H+4)) on v = 3u - 2, theta_max = 4/(H+4).
Endpoint gressman_endpoint(const Rat& H);

enum class RelationStatus { Pass, Fail, NotApplicable };

std::string to_string(RelationStatus s);

struct HeightRelation {
  RelationStatus status = RelationStatus::NotApplicable;
  std::string relation;  // which identity was checked
  Rat h_phi;
  Rat h_w;
  Rat expected;
};

HeightRelation height_relation_check(const Classification& c);

/// Smallest positive y1-exponent in the normalized support (0 if none).
int smallest_positive_y1_exponent(const Classification& c);

/// Floating-point variant for irrational coefficients; the result is marked advisory.
/// Throws IllConditioned when roots cannot be clustered unambiguously at tol.
Classification classify_numeric(const NumericPoly& p, double tol = 1e-9);

struct CaseDInstance {
  BivariatePoly phi;
  Classification classification;
};

/// Seeded random search for rational case-D polynomials. Throws PreconditionError for trials < 1.
std::vector<CaseDInstance> search_case_d(std::uint64_t seed, int trials);

}  // namespace mhlab
