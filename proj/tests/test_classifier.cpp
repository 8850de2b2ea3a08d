#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "mhlab/classifier.hpp"

using namespace mhlab;

namespace {

bool has(const std::vector<HalfPlane>& hs, const HalfPlane& want) {
  return std::any_of(hs.begin(), hs.end(), [&](const HalfPlane& h) { return equivalent(h, want); });
}

}  // namespace

TEST_CASE("classify the worked examples") {
  auto c = classify(P("y2^4+y1^12"));
  CHECK(c.kase == Case::C);
  CHECK(c.N == 0);
  CHECK(c.T == 10);
  CHECK(c.d_h == 3);

  auto c2 = classify(P("y2^4+y2^2*y1^6-y2*y1^9+y1^12"));
  CHECK(c2.kase == Case::C);
  CHECK(c2.T == 4);
  CHECK(c2.d_h == 3);
  CHECK(c2.redundancy_flag);

  auto c3 = classify(P("y1^5+y2*y1^3+9/40*y2^2*y1"));
  CHECK(c3.T == 2);
  CHECK(c3.d_h == R(5, 3));
}

TEST_CASE("case A and case B") {
  auto a = classify(P("(y2-y1^2)^3"));
  CHECK(a.kase == Case::A);
  CHECK(a.N == 3);
  CHECK(a.d_h == 2);

  auto b = classify(P("y1^4*(y2-y1^2)"));
  CHECK(b.kase == Case::B);
  CHECK(b.nu1 == 4);
  CHECK(b.d_h == 2);
  CHECK(b.N == 1);
}

TEST_CASE("exclusions come back as values") {
  auto m = classify(P("y1^2*y2^2"));
  CHECK_FALSE(m.admitted());
  REQUIRE(m.reason);
  CHECK(*m.reason == ExclusionReason::Monomial);
  auto g = classify(P("y1+y2^2"));
  REQUIRE(g.reason);
  CHECK(*g.reason == ExclusionReason::GradientNonzero);
  CHECK_THROWS_AS(theorem_inequalities(m), PreconditionError);
}

TEST_CASE("theorem inequalities") {
  auto c = theorem_inequalities(classify(P("y2^4+y1^12")));
  CHECK(has(c, above_line(R(25, 13), R(-1), true, "")));
  CHECK(has(c, above_line(R(13, 25), R(-1, 25), true, "")));

  auto a = theorem_inequalities(classify(P("(y2-y1^2)^3")));
  CHECK(has(a, above_line(R(1), R(-1, 3), true, "")));
  CHECK(has(a, above_line(R(5, 4), R(-1, 2), true, "")));
  CHECK(has(a, above_line(R(4, 5), R(-1, 5), true, "")));

  auto b = theorem_inequalities(classify(P("y1^4*(y2-y1^2)")));
  CHECK(has(b, above_line(R(1), R(-1, 5), true, "")));
}

TEST_CASE("redundant case conditions are marked") {
  auto hs = theorem_inequalities(classify(P("y2^4+y2^2*y1^6-y2*y1^9+y1^12")));
  for (const auto& h : hs)
    if (h.label == "c9" || h.label == "c10") CHECK(h.dominated_by == "cdh");
}

TEST_CASE("summability endpoints") {
  Endpoint a = summability_endpoint(classify(P("(y2-y1^2)^3")));
  CHECK(a.u == R(2, 3));
  CHECK(a.v == R(1, 3));
  CHECK(a.theta_max == 1);

  Endpoint c = summability_endpoint(classify(P("y2^4+y1^12")));
  CHECK(c.u == R(13, 16));
  CHECK(c.v == R(9, 16));

  Endpoint b = summability_endpoint(classify(P("y1^4*(y2-y1^2)")));
  CHECK(b.u == R(9, 10));
  CHECK(b.v == R(7, 10));
}

TEST_CASE("Gressman endpoint") {
  Endpoint g = gressman_endpoint(R(3));
  CHECK(g.u == R(6, 7));
  CHECK(g.v == R(4, 7));
  CHECK(g.theta_max == R(4, 7));
  Endpoint z = gressman_endpoint(R(0));
  CHECK(z.u == R(3, 4));
  CHECK(z.v == R(1, 4));
}

TEST_CASE("height relations") {
  auto a = height_relation_check(classify(P("(y2-y1^2)^3")));
  CHECK(a.status == RelationStatus::Pass);
  CHECK(a.h_w == 3);
  auto b = height_relation_check(classify(P("y1^4*(y2-y1^2)")));
  CHECK(b.status == RelationStatus::Pass);
  CHECK(b.h_w == 6);
  auto c = height_relation_check(classify(P("y2^4+y1^12")));
  CHECK(c.status == RelationStatus::Pass);
  CHECK(c.h_w == 10);
  CHECK(c.expected == 10);
}

TEST_CASE("numeric classification with an irrational root") {
  NumericPoly p = parse_numeric_poly("y1*(y2+y1^3)*(y2+(5+sqrt(21))/2*y1^3)");
  auto c = classify_numeric(p);
  CHECK(c.advisory);
  CHECK(c.kase == Case::D);
  CHECK(c.d_h == R(7, 4));
  CHECK(c.T == 2);
}

TEST_CASE("numeric classification agrees with exact on rational input") {
  for (const char* text : {"y2^4+y1^12", "(y2-y1^2)^3", "y1^4*(y2-y1^2)", "y1^5+y2*y1^3+9/40*y2^2*y1"}) {
    CAPTURE(text);
    auto e = classify(P(text));
    auto n = classify_numeric(to_numeric(P(text)));
    CHECK(n.kase == e.kase);
    CHECK(n.T == e.T);
    CHECK(n.N == e.N);
    CHECK(n.d_h == e.d_h);
  }
}

TEST_CASE("numeric classification clusters a split double root") {
  NumericPoly split = parse_numeric_poly("(y2-y1^2)*(y2-1.0000000000001*y1^2)*y1^2");
  auto c = classify_numeric(split, 1e-9);
  auto e = classify(P("(y2-y1^2)^2*y1^2"));
  CHECK(c.kase == e.kase);
  CHECK(c.N == e.N);
}

TEST_CASE("case D search") {
  CHECK_THROWS_AS(search_case_d(1, 0), PreconditionError);
  auto found = search_case_d(1, 400);
  REQUIRE_FALSE(found.empty());
  for (const auto& inst : found) CHECK(classify(inst.phi).kase == Case::D);
  auto again = search_case_d(1, 400);
  REQUIRE(again.size() == found.size());
  for (std::size_t i = 0; i < found.size(); ++i) CHECK(again[i].phi == found[i].phi);
}
