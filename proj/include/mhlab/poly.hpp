#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mhlab/errors.hpp"
#include "mhlab/rational.hpp"

namespace mhlab {

/// Exponent pair of y1^i * y2^j.
struct Exponent {
  int i = 0;
  int j = 0;
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Graded lexicographic order, largest monomial first.
struct GrlexDesc {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = a.i + a.j, db = b.i + b.j;
    if (da != db) return da > db;
    return a.i > b.i;
  }
};

inline double as_double(const Rat& c) { return c.get_d(); }
inline double as_double(double c) { return c; }

inline std::string coeff_text(const Rat& c) { return to_display(c); }
inline std::string coeff_text(double c) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", c);
  return buf;
}

/// Sparse bivariate polynomial in y1, y2. Zero coefficients are never stored.
template <class K>
class BasicPoly {
 public:
  using Coeff = K;
  using TermMap = std::map<Exponent, K, GrlexDesc>;

  BasicPoly() = default;

  static BasicPoly constant(const K& c) { return monomial(c, 0, 0); }
  static BasicPoly monomial(const K& c, int i, int j) {
    BasicPoly p;
    p.add_term({i, j}, c);
    return p;
  }
  static BasicPoly y1() { return monomial(K(1), 1, 0); }
  static BasicPoly y2() { return monomial(K(1), 0, 1); }

  void add_term(Exponent e, const K& c) {
    if (e.i < 0 || e.j < 0) throw PreconditionError("negative exponent in polynomial term");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  K coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? K(0) : it->second;
  }

  /// Largest monomial in graded lex order. Requires nonzero.
  std::pair<Exponent, K> leading() const { return *terms_.begin(); }

  int degree_y1() const { return fold_max([](Exponent e) { return e.i; }); }
  int degree_y2() const { return fold_max([](Exponent e) { return e.j; }); }
  int total_degree() const { return fold_max([](Exponent e) { return e.i + e.j; }); }

  /// Largest power of y1 (resp. y2) dividing the polynomial; 0 for the zero polynomial.
  int order_y1() const { return fold_min([](Exponent e) { return e.i; }); }
  int order_y2() const { return fold_min([](Exponent e) { return e.j; }); }

  BasicPoly operator-() const {
    BasicPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }
  BasicPoly& operator+=(const BasicPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, K(-c));
    return *this;
  }
  BasicPoly& operator*=(const K& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator*(BasicPoly a, const K& s) { return a *= s; }
  friend BasicPoly operator*(const K& s, BasicPoly a) { return a *= s; }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    BasicPoly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term({ea.i + eb.i, ea.j + eb.j}, K(ca * cb));
    return out;
  }
  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }
  friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.terms_ == b.terms_; }

  BasicPoly pow(unsigned n) const {
    BasicPoly result = constant(K(1)), base = *this;
    while (n) {
      if (n & 1u) result *= base;
      n >>= 1u;
      if (n) base *= base;
    }
    return result;
  }

  /// y1 <-> y2.
  BasicPoly swapped() const {
    BasicPoly out;
    for (const auto& [e, c] : terms_) out.add_term({e.j, e.i}, c);
    return out;
  }

  /// Divide by y1^a y2^b; every term must be divisible.
  BasicPoly shift_down(int a, int b) const {
    BasicPoly out;
    for (const auto& [e, c] : terms_) out.add_term({e.i - a, e.j - b}, c);
    return out;
  }

  double eval(double y1, double y2) const {
    double s = 0.0;
    for (const auto& [e, c] : terms_) s += as_double(c) * std::pow(y1, e.i) * std::pow(y2, e.j);
    return s;
  }

  K eval_exact(const K& y1, const K& y2) const {
    K s(0);
    for (const auto& [e, c] : terms_) s += c * power(y1, e.i) * power(y2, e.j);
    return s;
  }

  /// Deterministic text form in graded lex order; re-parsable by parse_poly.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      bool negative = c < 0;
      K mag = negative ? K(-c) : c;
      if (first)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      first = false;
      std::string mono;
      if (e.i > 0) mono += e.i == 1 ? "y1" : "y1^" + std::to_string(e.i);
      if (e.j > 0) mono += (mono.empty() ? "" : "*") + (e.j == 1 ? std::string("y2") : "y2^" + std::to_string(e.j));
      if (mono.empty())
        out += coeff_text(mag);
      else if (mag == 1)
        out += mono;
      else
        out += coeff_text(mag) + "*" + mono;
    }
    return out;
  }

 private:
  static K power(const K& x, int n) {
    K r(1);
    for (int k = 0; k < n; ++k) r *= x;
    return r;
  }
  template <class F>
  int fold_max(F f) const {
    int m = 0;
    for (const auto& kv : terms_) m = std::max(m, f(kv.first));
    return m;
  }
  template <class F>
  int fold_min(F f) const {
    if (terms_.empty()) return 0;
    int m = f(terms_.begin()->first);
    for (const auto& kv : terms_) m = std::min(m, f(kv.first));
    return m;
  }

  TermMap terms_;
};

using BivariatePoly = BasicPoly<Rat>;
using NumericPoly = BasicPoly<double>;

template <class K>
BasicPoly<K> partial(const BasicPoly<K>& p, int var) {
  if (var != 1 && var != 2) throw PreconditionError("partial: variable index must be 1 or 2");
  BasicPoly<K> out;
  for (const auto& [e, c] : p.terms()) {
    int k = var == 1 ? e.i : e.j;
    if (k == 0) continue;
    Exponent d = var == 1 ? Exponent{e.i - 1, e.j} : Exponent{e.i, e.j - 1};
    out.add_term(d, K(c * k));
  }
  return out;
}

/// p11 * p22 - p12^2.
template <class K>
BasicPoly<K> hessian_det(const BasicPoly<K>& p) {
  auto p1 = partial(p, 1), p2 = partial(p, 2);
  auto p11 = partial(p1, 1), p22 = partial(p2, 2), p12 = partial(p1, 2);
  return p11 * p22 - p12 * p12;
}

/// Substitute y1 -> a, y2 -> b.
template <class K>
BasicPoly<K> substitute(const BasicPoly<K>& p, const BasicPoly<K>& a, const BasicPoly<K>& b) {
  std::vector<BasicPoly<K>> pa{BasicPoly<K>::constant(K(1))}, pb{BasicPoly<K>::constant(K(1))};
  BasicPoly<K> out;
  for (const auto& [e, c] : p.terms()) {
    while (static_cast<int>(pa.size()) <= e.i) pa.push_back(pa.back() * a);
    while (static_cast<int>(pb.size()) <= e.j) pb.push_back(pb.back() * b);
    out += (pa[e.i] * pb[e.j]) * c;
  }
  return out;
}

/// Quotient p / q; throws NotDivisible unless q divides p exactly.
BivariatePoly exact_divide(const BivariatePoly& p, const BivariatePoly& q);

/// p(y1, y2 + lambda * y1^r).
BivariatePoly compose_shift(const BivariatePoly& p, const Rat& lambda, int r);

NumericPoly to_numeric(const BivariatePoly& p);

}  // namespace mhlab
