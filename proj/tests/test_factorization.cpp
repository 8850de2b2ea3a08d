#include <doctest.h>

#include "helpers.hpp"
#include "mhlab/factorization.hpp"

using namespace mhlab;

namespace {

UnivariatePoly U(std::vector<Rat> c) { return UnivariatePoly(std::move(c)); }

CanonicalFactorization fac(const char* text) {
  BivariatePoly p = P(text);
  return factorize(p, detect_kappa(p));
}

}  // namespace

TEST_CASE("reduce to univariate") {
  Reduction a = reduce_to_univariate(P("y2^4+y1^12"), {1, 3, 12, false});
  CHECK(a.nu1 == 0);
  CHECK(a.nu2 == 0);
  CHECK(a.g == U({R(1), R(0), R(0), R(0), R(1)}));

  Reduction b = reduce_to_univariate(P("(y2-y1^2)^2"), {1, 2, 4, false});
  CHECK(b.nu1 == 0);
  CHECK(b.nu2 == 0);
  CHECK(b.g == U({R(1), R(-2), R(1)}));

  Reduction c = reduce_to_univariate(P("y1^5+y2*y1^3+9/40*y2^2*y1"), {1, 2, 5, false});
  CHECK(c.nu1 == 1);
  CHECK(c.nu2 == 0);
  CHECK(c.g == U({R(1), R(1), R(9, 40)}));
}

TEST_CASE("real root multiplicity N") {
  CHECK(real_root_multiplicity_N(fac("y2^4+y1^12")) == 0);
  CHECK(real_root_multiplicity_N(fac("(y2-y1^2)^2")) == 2);
  CHECK(real_root_multiplicity_N(fac("(y2-y1^2)^3*(y2^2+y1^4)")) == 3);
}

TEST_CASE("factorization reconstructs the input") {
  for (const char* text : {"y2^4+y1^12", "(y2-y1^2)^3*(y2^2+y1^4)", "y1^4*(y2-y1^2)", "y1^5+y2*y1^3+9/40*y2^2*y1",
                           "-3*y1^2*y2*(y2^2-2*y1^3)^2*(y2^2+5*y1^3)", "y1^4+y2^12"}) {
    BivariatePoly p = P(text);
    auto k = detect_kappa(p);
    auto f = factorize(p, k);
    CAPTURE(text);
    CHECK(reconstruct(f, k) == normalized(p, k));
    CHECK(f.nu1 * k.s + f.nu2 * k.r + f.n * k.r * k.s == k.m);
  }
}

TEST_CASE("real root counts follow the parity of s and r") {
  // y2^2 - lambda y1^3 has real zeros for either sign of lambda; y2^2 + y1^4 has none.
  auto f = fac("(y2^2-2*y1^3)*(y2^2+3*y1^3)");
  int real = 0;
  for (const auto& rf : f.factors) real += rf.real_root_count;
  CHECK(real == 2);
  auto g = fac("(y2-y1^2)*(y2+y1^2)");
  real = 0;
  for (const auto& rf : g.factors) real += rf.real_root_count;
  CHECK(real == 2);
}

TEST_CASE("height") {
  CHECK(height(fac("y2^4+y1^12"), R(3)) == 3);
  CHECK(height(fac("(y2-y1^2)^3"), R(2)) == 3);
  CHECK(height(fac("y1^4*(y2-y1^2)"), R(2)) == 4);
}

TEST_CASE("homogeneity of the Hessian") {
  auto w3 = kappa_of_hessian({1, 3, 12, false});
  REQUIRE(w3);
  CHECK(homogeneous_distance(*w3) == 4);
  CHECK_FALSE(kappa_of_hessian({1, 3, 4, false}));
  auto w2 = kappa_of_hessian({1, 2, 6, false});
  REQUIRE(w2);
  CHECK(homogeneous_distance(*w2) == 2);
}

TEST_CASE("Hessian root data") {
  auto run = [](const char* text) {
    BivariatePoly p = P(text);
    auto k = detect_kappa(p);
    return hessian_root_data(p, k, factorize(p, k));
  };
  auto a = run("y2^4+y1^12");
  CHECK(a.w == P("1584*y1^10*y2^2"));
  CHECK(a.T == 10);
  CHECK(a.max_root_location == RootLocation::Axis1);

  CHECK(run("y2^4+y2^2*y1^6-y2*y1^9+y1^12").T == 4);

  auto c = run("(y2-y1^2)^2");
  CHECK(c.w == P("-8*(y2-y1^2)"));
  CHECK(c.T == 1);
  CHECK(c.max_root_location == RootLocation::OffAxisCoincident);

  auto d = run("y1*y2+y1^4");
  CHECK(d.T == 0);
  CHECK(d.max_root_location == RootLocation::NoRealRoots);
  CHECK(d.h_w == 0);
}
