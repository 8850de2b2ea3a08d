#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhlab/rational.hpp"

namespace mhlab {

/// Dense univariate polynomial over Rat, lowest degree first, trailing zeros trimmed.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<Rat> coeffs);

  static UnivariatePoly constant(const Rat& c);
  static UnivariatePoly monomial(const Rat& c, int degree);
  /// u - a
  static UnivariatePoly linear_root(const Rat& a);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int k) const;
  const Rat& lead() const { return c_.back(); }

  Rat eval(const Rat& x) const;
  double eval(double x) const;

  UnivariatePoly derivative() const;
  UnivariatePoly monic() const;
  UnivariatePoly pow(unsigned n) const;

  UnivariatePoly operator-() const;
  friend UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator*(const UnivariatePoly& a, const Rat& s);
  friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) { return a.c_ == b.c_; }

  /// Descending powers, e.g. "9/40*u^2 + u + 1".
  std::string to_string(const std::string& var = "u") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

struct DivMod {
  UnivariatePoly quotient;
  UnivariatePoly remainder;
};

DivMod divmod(const UnivariatePoly& a, const UnivariatePoly& b);

/// Throws NotDivisible when b does not divide a.
UnivariatePoly exact_quotient(const UnivariatePoly& a, const UnivariatePoly& b);

/// Integer coefficients with unit content and positive leading coefficient.
UnivariatePoly primitive_part(const UnivariatePoly& a);

/// Monic gcd via a primitive remainder sequence; gcd(0, 0) = 0.
UnivariatePoly gcd(const UnivariatePoly& a, const UnivariatePoly& b);

struct SquarefreeFactor {
  UnivariatePoly factor;  // monic, squarefree
  int multiplicity = 0;
};

/// Yun's algorithm. Factors are pairwise coprime; product of factor^multiplicity is g / lead(g).
std::vector<SquarefreeFactor> squarefree_decomposition(const UnivariatePoly& g);

/// Open interval; an empty bound means infinite.
struct Interval {
  std::optional<Rat> lo;
  std::optional<Rat> hi;
};

std::vector<UnivariatePoly> sturm_sequence(const UnivariatePoly& g);

/// Distinct real roots of squarefree g strictly inside the interval.
int sturm_real_root_count(const UnivariatePoly& g, const Interval& interval);

/// Every real root has absolute value strictly below this bound.
Rat cauchy_bound(const UnivariatePoly& g);

struct IsolatedRoot {
  Rat lo;  // lo == hi means the root is known exactly
  Rat hi;
};

/// Disjoint isolating intervals (open, or exact points) for the real roots of squarefree g, ascending.
std::vector<IsolatedRoot> isolate_real_roots(const UnivariatePoly& g);

/// Shrink an isolating interval of squarefree g until hi - lo <= width.
IsolatedRoot refine_root(const UnivariatePoly& g, IsolatedRoot root, const Rat& width);

/// Real roots of squarefree g to within 1e-12, ascending. Reporting only.
std::vector<double> real_root_approximations(const UnivariatePoly& g);

/// All rational roots of g (any g != 0), ascending, without multiplicity.
std::vector<Rat> rational_roots(const UnivariatePoly& g);

/// Rational with the smallest denominator in the closed interval [a, b].
Rat simplest_rational(const Rat& a, const Rat& b);

}  // namespace mhlab
