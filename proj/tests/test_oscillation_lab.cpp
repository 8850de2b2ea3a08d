#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mhlab/oscillation_lab.hpp"

using namespace mhlab;

namespace {

CanonicalFactorization fac(const char* text) {
  BivariatePoly p = P(text);
  return factorize(p, detect_kappa(p));
}

}  // namespace

TEST_CASE("root piece of (y2-y1^2)^3") {
  DyadicPiece d = build_piece(fac("(y2-y1^2)^3"), 2, 1, 1, 6);
  CHECK(d.delta == R(1, 16));
  CHECK(d.lambda == 1);
  CHECK(d.n_l == 3);
  CHECK(d.phi_jk == P("y2^3"));
  CHECK(d.second == P("1/16*y2 + y1^2"));
  REQUIRE_FALSE(d.blowups.empty());
  CHECK(d.blowups[0].exponent == R(-1, 4));
}

TEST_CASE("piece preconditions") {
  CHECK_THROWS_AS(build_piece(fac("(y2-y1^2)^3"), 2, 1, 2, 5), PreconditionError);
  CHECK_THROWS_AS(build_piece(fac("(y2-y1^2)^3"), 2, 2, 1, 6), PreconditionError);
  CHECK_THROWS_AS(build_piece(fac("(y2-y1^2)*(y2^2-2*y1^4)"), 2, 1, 0, 5), IrrationalRoot);
}

TEST_CASE("pieces approach the curve-localized model as k grows") {
  auto f = fac("(y2-y1^2)^2*(y2+y1^2)");
  DyadicPiece near = build_piece_at(f, 2, R(1), 0, 8), far = build_piece_at(f, 2, R(1), 0, 30);
  // phi_jk = y2^2 (delta y2 + 2 y1^2): the y2^3 coefficient is delta and vanishes in the limit.
  CHECK(near.phi_jk.coeff(0, 3) == R(1, 256));
  CHECK(far.phi_jk.coeff(0, 3) == pow2(-30));
  CHECK(far.phi_jk.coeff(2, 2) == 2);
  DyadicPiece off = build_piece_at(f, 2, R(5), 0, 4);
  CHECK(off.n_l == 0);
}

TEST_CASE("real roots report exact values when rational") {
  auto roots = real_roots_of(fac("(y2-y1^2)*(y2+3*y1^2)*(y2^2-2*y1^4)").g);
  REQUIRE(roots.size() == 4);
  CHECK(roots[0].second.has_value());
  CHECK(*roots[0].second == -3);
  CHECK_FALSE(roots[1].second.has_value());
  CHECK(roots[1].first == doctest::Approx(-std::sqrt(2.0)));
}

TEST_CASE("decay exponents to Lebesgue pairs") {
  CHECK(decay_to_pq(R(1, 2)) == std::pair{R(2, 3), R(1, 3)});
  CHECK(decay_to_pq(R(1, 3)) == std::pair{R(5, 8), R(3, 8)});
  CHECK(decay_to_pq(R(1)) == std::pair{R(3, 4), R(1, 4)});
  CHECK_THROWS_AS(decay_to_pq(R(0)), PreconditionError);
}

TEST_CASE("interpolation exponent lies in (2/3, 3/4] when d_h + 1/2 <= N < d_h + 1") {
  int checked = 0;
  for (int N = 2; N <= 12; ++N)
    for (int q = 1; q <= 12; ++q)
      for (int p = q + 1; p < N * q; ++p) {
        Rat dh = R(p, q);
        if (!(dh + R(1, 2) <= N && N < dh + 1)) continue;
        Rat e = interpolation_exponent(N, dh);
        CHECK(e > R(2, 3));
        CHECK(e <= R(3, 4));
        ++checked;
      }
  CHECK(checked > 50);
  CHECK(interpolation_exponent(3, R(5, 2)) == R(3, 4));
  CHECK(interpolation_exponent(3, R(2)) == R(2, 3));
  CHECK_THROWS_AS(interpolation_exponent(2, R(2)), PreconditionError);
}

TEST_CASE("rays and schedules") {
  CHECK(parse_ray("e2") == Vec3{0, 1, 0});
  Vec3 v = parse_ray("3,0,4");
  CHECK(v[0] == doctest::Approx(0.6));
  CHECK(v[2] == doctest::Approx(0.8));
  CHECK_THROWS_AS(parse_ray("1,2,3,4"), PreconditionError);
  CHECK_THROWS_AS(parse_ray("0,0,0"), PreconditionError);
  CHECK(dyadic_schedule(8, 256) == std::vector<double>{8, 16, 32, 64, 128, 256});
  CHECK(cutoff_mass() == doctest::Approx(2.25).epsilon(1e-9));
}

TEST_CASE("zero frequency gives the cutoff mass") {
  DyadicPiece d = build_piece(fac("(y2-y1^2)^3"), 2, 1, 1, 6);
  DecayOptions opt;
  CHECK(fourier_magnitude(d, {0, 0, 0}, opt) == doctest::Approx(cutoff_mass()).epsilon(1e-9));
}

TEST_CASE("decay on the (y2-y1^2)^3 root piece") {
  DyadicPiece d = build_piece(fac("(y2-y1^2)^3"), 2, 1, 1, 6);
  auto sched = dyadic_schedule(8, 256);
  for (const char* ray : {"e2", "e3"}) {
    CAPTURE(ray);
    DecayFit fit = estimate_fourier_decay(d, parse_ray(ray), sched);
    CHECK(fit.rho >= 0.45);
  }
  DecayFit e1 = estimate_fourier_decay(d, parse_ray("e1"), sched);
  CHECK(e1.rho >= 0.9);
}

TEST_CASE("a nondegenerate stationary point decays at rate 1") {
  // Along (-96, 48, -1) the phase has a single nondegenerate critical point inside the annulus.
  DyadicPiece d = build_piece(fac("(y2-y1^2)^3"), 2, 1, 1, 6);
  DecayFit fit = estimate_fourier_decay(d, parse_ray("-96,48,-1"), dyadic_schedule(8, 256));
  CHECK(fit.rho == doctest::Approx(1.0).epsilon(0.05));
  CHECK_FALSE(fit.floor_limited);
}

TEST_CASE("frequency schedule guards") {
  DyadicPiece d = build_piece(fac("(y2-y1^2)^3"), 2, 1, 1, 6);
  CHECK_THROWS_AS(estimate_fourier_decay(d, parse_ray("e3"), {8, 16, 32}), PreconditionError);
  DecayOptions opt;
  opt.max_xi = 64;
  CHECK_THROWS_AS(estimate_fourier_decay(d, parse_ray("e3"), dyadic_schedule(8, 256), opt), OscillationBudgetExceeded);
}
