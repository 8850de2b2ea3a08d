#include <doctest.h>

#include "helpers.hpp"
#include "mhlab/algebra_checks.hpp"

using namespace mhlab;

TEST_CASE("order of w along the curve") {
  auto a = curve_vanishing_order(P("(y2-y1^2)^2"), R(1), 2);
  CHECK(a.order == 1);
  CHECK(a.cofactor_nonzero_on_curve);
  auto b = curve_vanishing_order(P("(y2-y1^2)^3"), R(1), 2);
  CHECK(b.order == 3);
  auto c = curve_vanishing_order(P("(y2-2*y1^3)^2"), R(2), 3);
  CHECK(c.order == 1);
  CHECK(c.cofactor == P("-48*y1"));
  CHECK_FALSE(order_along_curve(BivariatePoly{}, R(1), 2));
}

TEST_CASE("order of w at the axis") {
  auto a = axis_vanishing_order(P("y1^2*y2^2"));
  CHECK(a.pass());
  CHECK(a.computed_order == 2);
  CHECK(hessian_det(P("y1^2*y2^2")) == P("-12*y1^2*y2^2"));
  auto b = axis_vanishing_order(P("y1^4*(y2-y1^2)"));
  CHECK(b.pass());
  CHECK(b.computed_order == 6);
  auto c = axis_vanishing_order(P("y1*y2"));
  CHECK(c.pass());
  CHECK(c.computed_order == 0);
  CHECK(hessian_det(P("y1*y2")) == P("-1"));
}

TEST_CASE("transversal order") {
  auto a = transversal_vanishing_order(P("y2^4+y1^12"));
  CHECK(a.pass());
  CHECK(a.computed_order == 10);
  auto b = transversal_vanishing_order(P("y2^2+y1^2"));
  CHECK(b.pass());
  CHECK(b.computed_order == 0);
  CHECK(hessian_det(P("y2^2+y1^2")) == P("4"));
  auto c = transversal_vanishing_order(P("y2^3+y1^5*y2"));
  CHECK(c.pass());
  CHECK(c.computed_order == 3);
}

TEST_CASE("dyadic rescaling identity") {
  CHECK(dyadic_rescaling_identity(P("(y2-y1^2)^3"), 1, 1, 5));
  CHECK(dyadic_rescaling_identity(P("(y2-y1^2)^3"), 1, 0, 0));
  CHECK(dyadic_rescaling_identity(P("y1^2*(y2-y1^2)^2*(y2+3*y1^2)"), 2, 3, 1));
  CHECK_THROWS_AS(dyadic_rescaling_identity(P("y2^4+y1^12"), 1, 1, 1), PreconditionError);
}

TEST_CASE("j = k = 0 gives phi composed with the unit shift") {
  BivariatePoly p = P("(y2-y1^2)^3*(y2+y1^2)");
  auto k = detect_kappa(p);
  auto f = factorize(p, k);
  CHECK(rescaled_piece(f, 2, R(1), 0, 0) == compose_shift(p, R(1), 2));
}

TEST_CASE("seeded suites pass") {
  for (const auto& rep : {curve_order_suite(7, 100), axis_order_suite(7, 100), transversal_order_suite(7, 100),
                          hessian_nonzero_suite(7, 100), homogeneous_control_suite(7, 100),
                          dyadic_identity_suite(7, 20), structural_suite(7, 100), region_suite(7, 100)}) {
    CAPTURE(rep.name);
    CHECK(rep.instances > 0);
    CHECK(rep.ok());
  }
  CHECK_THROWS_AS(hessian_nonzero_suite(7, 0), PreconditionError);
}

TEST_CASE("random generator is reproducible") {
  std::mt19937_64 a(3), b(3);
  RandomPolyConfig cfg;
  for (int i = 0; i < 20; ++i) CHECK(random_mixed_homogeneous(a, cfg) == random_mixed_homogeneous(b, cfg));
}
