#include "mhlab/poly.hpp"

namespace mhlab {

BivariatePoly exact_divide(const BivariatePoly& p, const BivariatePoly& q) {
  if (q.is_zero()) throw PreconditionError("exact_divide: divisor is zero");
  // Leading terms in a monomial order multiply, so an exact quotient is
  // peeled off one leading term at a time; any failure means q does not divide p.
  const auto [lq, cq] = q.leading();
  BivariatePoly rem = p, quot;
  while (!rem.is_zero()) {
    const auto [lr, cr] = rem.leading();
    if (lr.i < lq.i || lr.j < lq.j) throw NotDivisible();
    Rat c = cr / cq;
    auto t = BivariatePoly::monomial(c, lr.i - lq.i, lr.j - lq.j);
    quot += t;
    rem -= t * q;
  }
  return quot;
}

BivariatePoly compose_shift(const BivariatePoly& p, const Rat& lambda, int r) {
  if (r < 1) throw PreconditionError("compose_shift: r must be at least 1");
  auto shifted = BivariatePoly::y2() + BivariatePoly::monomial(lambda, r, 0);
  return substitute(p, BivariatePoly::y1(), shifted);
}

NumericPoly to_numeric(const BivariatePoly& p) {
  NumericPoly out;
  for (const auto& [e, c] : p.terms()) out.add_term(e, c.get_d());
  return out;
}

}  // namespace mhlab
