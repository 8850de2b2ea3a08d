#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "mhlab/factorization.hpp"

namespace mhlab {

/// Symbolic weighted-estimate blowup delta_jk^exponent attached to a piece; not checked numerically.
struct WeightedBlowup {
  std::string label;
  Rat exponent;
};

/// Rescaled piece y -> (y1, delta*y2 + lambda*y1^r, phi_jk(y)) on the annulus 1/2 <= |y1|, |y2| <= 2.
struct DyadicPiece {
  int j = 0;
  int k = 0;
  int r = 0;
  Rat lambda;
  int n_l = 0;          // multiplicity of lambda as a root of g (0 off the root set)
  Rat delta;            // 2^{jr-k}
  long scale_exponent;  // phi(2^-j y1, 2^-k y2 + lambda 2^-jr y1^r) = 2^scale_exponent * phi_jk(y)
  BivariatePoly second; // delta*y2 + lambda*y1^r
  BivariatePoly phi_jk;
  std::vector<WeightedBlowup> blowups;
};

/// Piece around the l-th real root (1-based, ascending) of the reduced polynomial; requires s = 1.
/// Throws IrrationalRoot when that root is not rational, PreconditionError when k - j r < 3.
DyadicPiece build_piece(const CanonicalFactorization& f, int r, int l, int j, int k);

/// Same construction at an arbitrary rational lambda; off the root set n_l = 0.
DyadicPiece build_piece_at(const CanonicalFactorization& f, int r, const Rat& lambda, int j, int k);

/// Real roots of g in ascending order as (approximation, exact value when rational).
std::vector<std::pair<double, std::optional<Rat>>> real_roots_of(const UnivariatePoly& g);

using Vec3 = std::array<double, 3>;

/// Parses "e1", "e2", "e3" or "a,b,c" into a unit vector.
Vec3 parse_ray(const std::string& text);
std::string ray_name(const Vec3& ray);

struct DecayFit {
  Vec3 ray{};
  std::vector<double> schedule;   // |xi|
  std::vector<double> magnitude;  // |mu^(xi)|
  std::vector<double> residual;   // log-log residual per point (0 outside the fit window)
  std::vector<bool> resolved;     // false when |mu^| is below the quadrature noise floor
  double rho = 0;
  double target = 0.5;
  double max_residual = 0;
  int fit_points = 0;
  bool floor_limited = false;  // part of the fit window sat at the noise floor; rho is a lower bound
  long evaluations = 0;
};

struct DecayOptions {
  double max_xi = 256;
  long max_evaluations = 40'000'000;
  int nodes_per_panel = 8;
  int fit_octaves = 3;
  double noise_floor = 1e-12;  // relative to the cutoff mass
};

/// |mu^(xi)| along the ray, by tensor Gauss-Legendre panels; rho from a least-squares fit on log|mu^| vs log|xi|.
DecayFit estimate_fourier_decay(const DyadicPiece& piece, const Vec3& ray, const std::vector<double>& schedule,
                                const DecayOptions& opt = {});

/// mu^(xi) at one frequency.
double fourier_magnitude(const DyadicPiece& piece, const Vec3& xi, const DecayOptions& opt, long* evaluations = nullptr);

/// Integral of the annular cutoff chi(y1) chi(y2).
double cutoff_mass();

/// Dyadic schedule lo, 2lo, ..., hi.
std::vector<double> dyadic_schedule(double lo, double hi);

/// (1/p, 1/p') with 1/p = (1 + rho/(rho + 1)) / 2.
std::pair<Rat, Rat> decay_to_pq(const Rat& rho);

/// (N - d_h + 1) / (2(N - d_h) + 1), the interpolation exponent for root pieces with N > d_h.
Rat interpolation_exponent(int N, const Rat& d_h);

}  // namespace mhlab
