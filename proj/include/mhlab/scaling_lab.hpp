#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mhlab/poly.hpp"
#include "mhlab/region.hpp"

namespace mhlab {

enum class Family { C1, C2, NU, DH, N1, N2, ML1 };

std::string to_string(Family f);
/// Case-insensitive: c1, c2, nu, dh, n1, n2, ml1.
Family parse_family(const std::string& text);

/// Structural data a family needs. Unset fields are derived from the polynomial.
struct FamilyParams {
  std::optional<Rat> lambda;  // N1, N2: root of the curve factor y2 - lambda*y1^r
  int r = 0;
  int N = 0;        // N1, N2: multiplicity of that factor
  int nu = 0;       // NU: vanishing order along the chosen axis
  int nu_axis = 2;  // NU: 2 for y2^nu, 1 for y1^nu
  int A = 0;        // ML1
  Rat kappa1, kappa2;  // DH, in the input's own variables
  bool swapped = false;  // N1, N2 run in exchanged variables
};

/// Fills the params of a family from p; throws PreconditionError when the family does not apply.
FamilyParams derive_params(const BivariatePoly& p, Family family, FamilyParams hint = {});

struct Prediction {
  Rat slope;           // ||A f_delta||_q ~ delta^slope
  Rat slope_per_q;     // slope = slope_per_q / q + slope_const
  Rat slope_const;
  Rat box_exponent;    // |supp f_delta| ~ delta^box_exponent
  Rat margin;          // slope - box_exponent / p; negative means unbounded at (p, q)
  HalfPlane condition; // necessary condition implied on (1/p, 1/q)
};

/// p and q given as reciprocals u = 1/p, v = 1/q.
Prediction predicted_exponent(Family family, const FamilyParams& params, const Rat& u, const Rat& v);

struct ScalingGrid {
  int x_points = 32;         // samples per axis of the designed x-set
  int nodes_per_feature = 8; // y-nodes per smallest resolved length
};

struct Measurement {
  double delta = 0;      // nominal
  double norm_q = 0;     // ||A f_delta||_{L^q(X_delta)}
  double norm_p = 0;     // |box|^{1/p}, exact
  double ratio = 0;
  double log2_ratio = 0;
  double max_average = 0;  // max of A f_delta over the samples
};

struct ScalingExperiment {
  Family family = Family::C2;
  FamilyParams params;
  Rat u, v;  // 1/p, 1/q
  std::vector<double> schedule;
  double delta_scale = 1;  // boxes use delta_scale * delta so the windows sit where psi = 1
  ScalingGrid grid;
  std::vector<Measurement> measured;
  double fitted_slope = 0;
  double max_residual = 0;
  Rat predicted_slope;
  bool above_prediction = false;  // fitted > predicted + 0.1: family mis-specification flag
  double mass = 0;                // quadrature mass of psi on the base lattice
};

/// psi(y) = chi(y1) chi(y2), chi = 1 on [-1/2, 1/2], smooth taper to 0 at +-1; total mass 9/4.
double cutoff(double y1, double y2);
double cutoff_mass_exact();
/// Midpoint-lattice mass of psi at step h.
double lattice_mass(double h);

/// Geometric schedule 2^-from, ..., 2^-to (strictly decreasing).
std::vector<double> delta_schedule(int from = 3, int to = 7);

/// Throws UnresolvedScaling when the log-log fit residual exceeds 0.1.
ScalingExperiment run_scaling(const BivariatePoly& p, Family family, const FamilyParams& params, const Rat& u,
                              const Rat& v, const std::vector<double>& schedule, const ScalingGrid& grid = {});

/// Spot check: x - Phi(y) in supp f_delta for sampled x in X_delta and y in the witness set Y_x.
struct WitnessReport {
  long checked = 0;
  long violations = 0;
  bool ok() const { return checked > 0 && violations == 0; }
};
WitnessReport witness_check(const BivariatePoly& p, Family family, const FamilyParams& params, double delta,
                            int samples = 9);

std::string scaling_csv(const ScalingExperiment& e);
std::string scaling_json(const ScalingExperiment& e);

struct AffineReport {
  std::array<Rat, 3> D;
  Rat u, v;
  double expected = 0;  // |det D|^{1/q - 1/p}
  std::vector<double> measured;  // one factor per test box
  double worst_relative_error = 0;
  bool pass = false;  // every factor within 5%
};

/// Half-widths of the default indicator test boxes.
std::vector<std::array<double, 3>> default_test_boxes();

/// Compares ||S_D 1_B||_q / ||1_B||_p against |det D|^{1/q-1/p} times ||A 1_{D^-1 B}||_q / ||1_{D^-1 B}||_p.
AffineReport check_affine_scaling(const BivariatePoly& p, const std::array<Rat, 3>& D,
                                  const std::vector<std::array<double, 3>>& boxes, const Rat& u, const Rat& v,
                                  const ScalingGrid& grid = {});

}  // namespace mhlab
