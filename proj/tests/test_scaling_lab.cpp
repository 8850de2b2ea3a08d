#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mhlab/scaling_lab.hpp"

using namespace mhlab;

TEST_CASE("family names") {
  CHECK(parse_family("C2") == Family::C2);
  CHECK(parse_family("ml1") == Family::ML1);
  CHECK(to_string(Family::N2) == "N2");
  CHECK_THROWS_AS(parse_family("c3"), PreconditionError);
}

TEST_CASE("derived parameters") {
  auto n = derive_params(P("(y2-y1^2)^2"), Family::N1);
  REQUIRE(n.lambda);
  CHECK(*n.lambda == 1);
  CHECK(n.r == 2);
  CHECK(n.N == 2);
  auto dh = derive_params(P("y2^4+y1^12"), Family::DH);
  CHECK(dh.kappa1 == R(1, 12));
  CHECK(dh.kappa2 == R(1, 4));
  CHECK(derive_params(P("y2^4+y1^12"), Family::ML1).A == 12);
  CHECK_THROWS_AS(derive_params(P("y2^4+y1^12"), Family::N1), PreconditionError);
}

TEST_CASE("predicted exponents and necessary conditions") {
  FamilyParams none;
  Prediction c2 = predicted_exponent(Family::C2, none, R(3, 4), R(1, 4));
  CHECK(c2.slope == R(9, 4));
  CHECK(c2.margin == 0);

  FamilyParams dh;
  dh.kappa1 = R(1, 12);
  dh.kappa2 = R(1, 4);
  Prediction d = predicted_exponent(Family::DH, dh, R(1, 2), R(1, 2));
  CHECK(equivalent(d.condition, above_line(R(1), R(-1, 4), false, "")));

  FamilyParams ml;
  ml.A = 12;
  Prediction m = predicted_exponent(Family::ML1, ml, R(1, 2), R(1, 2));
  CHECK(equivalent(m.condition, above_line(R(25, 13), R(-1), false, "")));

  FamilyParams n1;
  n1.lambda = R(1);
  n1.r = 2;
  n1.N = 2;
  CHECK(predicted_exponent(Family::N1, n1, R(1, 2), R(1, 3)).slope == R(5, 3));
}

TEST_CASE("cutoff") {
  CHECK(cutoff(0, 0) == 1);
  CHECK(cutoff(0.5, -0.5) == 1);
  CHECK(cutoff(1, 0) == 0);
  CHECK(cutoff_mass_exact() == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(lattice_mass(1.0 / 64) == doctest::Approx(2.25).epsilon(1e-6));
  CHECK(delta_schedule(3, 6) == std::vector<double>{0.125, 0.0625, 0.03125, 0.015625});
}

TEST_CASE("C2 slope on (y2-y1^2)^2") {
  BivariatePoly p = P("(y2-y1^2)^2");
  auto e = run_scaling(p, Family::C2, derive_params(p, Family::C2), R(3, 4), R(1, 4), delta_schedule(3, 7));
  CHECK(e.fitted_slope == doctest::Approx(2.25).epsilon(0.1 / 2.25));
  CHECK_FALSE(e.above_prediction);
  CHECK(e.max_residual < 0.02);
}

TEST_CASE("N1 slope on (y2-y1^2)^2 at q = 3") {
  BivariatePoly p = P("(y2-y1^2)^2");
  auto e = run_scaling(p, Family::N1, derive_params(p, Family::N1), R(2, 3), R(1, 3), delta_schedule(3, 7));
  CHECK(std::abs(e.fitted_slope - 5.0 / 3) < 0.1);
}

TEST_CASE("witness sets lie in the support") {
  BivariatePoly p = P("(y2-y1^2)^2");
  for (Family f : {Family::C1, Family::C2, Family::DH, Family::N1, Family::N2, Family::ML1}) {
    CAPTURE(to_string(f));
    CHECK(witness_check(p, f, derive_params(p, f), 1.0 / 1024).ok());
  }
}

TEST_CASE("outputs are deterministic") {
  BivariatePoly p = P("(y2-y1^2)^2");
  ScalingGrid g{16, 6};
  auto a = run_scaling(p, Family::C2, derive_params(p, Family::C2), R(3, 4), R(1, 4), delta_schedule(3, 6), g);
  auto b = run_scaling(p, Family::C2, derive_params(p, Family::C2), R(3, 4), R(1, 4), delta_schedule(3, 6), g);
  CHECK(scaling_csv(a) == scaling_csv(b));
  CHECK(scaling_json(a) == scaling_json(b));
  CHECK(scaling_csv(a).rfind("delta,norm_q,norm_p,ratio,log2_ratio\n", 0) == 0);
}

TEST_CASE("affine scaling") {
  BivariatePoly p = P("(y2-y1^2)^2");
  auto id = check_affine_scaling(p, {R(1), R(1), R(1)}, default_test_boxes(), R(2, 3), R(1, 3));
  CHECK(id.expected == 1);
  for (double m : id.measured) CHECK(m == 1);

  auto d = check_affine_scaling(p, {R(1, 2), R(1, 4), R(1, 8)}, default_test_boxes(), R(2, 3), R(1, 3));
  CHECK(d.expected == doctest::Approx(4));
  CHECK(d.pass);

  auto flip = check_affine_scaling(p, {R(-1), R(1), R(1)}, default_test_boxes(), R(2, 3), R(1, 3));
  CHECK(flip.expected == doctest::Approx(1));
  CHECK(flip.pass);
}
