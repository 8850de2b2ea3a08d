#include "mhlab/upoly.hpp"

#include <algorithm>
#include <cmath>

#include "mhlab/errors.hpp"

namespace mhlab {

UnivariatePoly::UnivariatePoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void UnivariatePoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UnivariatePoly UnivariatePoly::constant(const Rat& c) { return UnivariatePoly({c}); }

UnivariatePoly UnivariatePoly::monomial(const Rat& c, int degree) {
  std::vector<Rat> v(static_cast<std::size_t>(degree) + 1, Rat(0));
  v.back() = c;
  return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::linear_root(const Rat& a) { return UnivariatePoly({Rat(-a), Rat(1)}); }

Rat UnivariatePoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
  return c_[static_cast<std::size_t>(k)];
}

Rat UnivariatePoly::eval(const Rat& x) const {
  Rat s(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
  return s;
}

double UnivariatePoly::eval(double x) const {
  double s = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + it->get_d();
  return s;
}

UnivariatePoly UnivariatePoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return UnivariatePoly(std::move(d));
}

UnivariatePoly UnivariatePoly::monic() const {
  if (is_zero()) return {};
  Rat l = lead();
  std::vector<Rat> v = c_;
  for (auto& x : v) x /= l;
  return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::pow(unsigned n) const {
  UnivariatePoly r = constant(1), b = *this;
  while (n) {
    if (n & 1u) r = r * b;
    n >>= 1u;
    if (n) b = b * b;
  }
  return r;
}

UnivariatePoly UnivariatePoly::operator-() const {
  std::vector<Rat> v = c_;
  for (auto& x : v) x = -x;
  return UnivariatePoly(std::move(v));
}

UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return UnivariatePoly(std::move(v));
}

UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b) { return a + (-b); }

UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return UnivariatePoly(std::move(v));
}

UnivariatePoly operator*(const UnivariatePoly& a, const Rat& s) {
  std::vector<Rat> v = a.c_;
  for (auto& x : v) x *= s;
  return UnivariatePoly(std::move(v));
}

std::string UnivariatePoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rat& c = c_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    bool negative = c < 0;
    Rat mag = abs(c);
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (mono.empty())
      out += to_display(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_display(mag) + "*" + mono;
  }
  return out;
}

DivMod divmod(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<Rat> rem = a.coeffs();
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {UnivariatePoly(), a};
  std::vector<Rat> q(static_cast<std::size_t>(dq) + 1, Rat(0));
  const Rat& lb = b.lead();
  for (int k = dq; k >= 0; --k) {
    Rat t = rem[static_cast<std::size_t>(k + db)] / lb;
    q[static_cast<std::size_t>(k)] = t;
    if (t == 0) continue;
    for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k + i)] -= t * b.coeffs()[static_cast<std::size_t>(i)];
  }
  return {UnivariatePoly(std::move(q)), UnivariatePoly(std::move(rem))};
}

UnivariatePoly exact_quotient(const UnivariatePoly& a, const UnivariatePoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw NotDivisible();
  return q;
}

UnivariatePoly primitive_part(const UnivariatePoly& a) {
  if (a.is_zero()) return {};
  BigInt den_lcm = 1, num_gcd = 0;
  for (const auto& c : a.coeffs()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  std::vector<Rat> v;
  v.reserve(a.coeffs().size());
  for (const auto& c : a.coeffs()) {
    BigInt n = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    v.emplace_back(n);
  }
  if (a.lead() < 0) num_gcd = -num_gcd;
  for (auto& c : v) c /= Rat(num_gcd);
  return UnivariatePoly(std::move(v));
}

UnivariatePoly gcd(const UnivariatePoly& a, const UnivariatePoly& b) {
  UnivariatePoly x = primitive_part(a), y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    UnivariatePoly r = primitive_part(divmod(x, y).remainder);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const UnivariatePoly& g) {
  if (g.is_zero()) throw PreconditionError("squarefree decomposition of the zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (g.degree() == 0) return out;
  UnivariatePoly f = g.monic();
  UnivariatePoly fp = f.derivative();
  UnivariatePoly a0 = gcd(f, fp);
  UnivariatePoly b = exact_quotient(f, a0);
  UnivariatePoly c = exact_quotient(fp, a0);
  UnivariatePoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    UnivariatePoly ai = gcd(b, d);
    b = exact_quotient(b, ai);
    c = exact_quotient(d, ai);
    d = c - b.derivative();
    if (ai.degree() > 0) out.push_back({ai.monic(), i});
  }
  return out;
}

std::vector<UnivariatePoly> sturm_sequence(const UnivariatePoly& g) {
  std::vector<UnivariatePoly> seq;
  if (g.is_zero()) return seq;
  seq.push_back(g);
  UnivariatePoly d = g.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    UnivariatePoly r = divmod(seq[seq.size() - 2], seq.back()).remainder;
    if (r.is_zero()) break;
    // positive rescaling keeps sign patterns while taming coefficient growth
    UnivariatePoly pr = primitive_part(r);
    seq.push_back(r.lead() < 0 ? pr : -pr);
  }
  return seq;
}

namespace {

int sign_at_infinity(const UnivariatePoly& p, bool positive) {
  int s = sgn(p.lead());
  if (!positive && p.degree() % 2 == 1) s = -s;
  return s;
}

int variations(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int variations_at(const std::vector<UnivariatePoly>& seq, const std::optional<Rat>& x, bool positive_infinity) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& p : seq) signs.push_back(x ? sgn(p.eval(*x)) : sign_at_infinity(p, positive_infinity));
  return variations(signs);
}

int count_with(const std::vector<UnivariatePoly>& seq, const UnivariatePoly& g, const Interval& iv) {
  // V(a) - V(b) counts roots in (a, b]; drop b itself when it is a root.
  int va = variations_at(seq, iv.lo, false);
  int vb = variations_at(seq, iv.hi, true);
  int n = va - vb;
  if (iv.hi && g.eval(*iv.hi) == 0) --n;
  return n;
}

}  // namespace

int sturm_real_root_count(const UnivariatePoly& g, const Interval& interval) {
  if (g.is_zero()) throw PreconditionError("Sturm count of the zero polynomial");
  if (interval.lo && interval.hi && *interval.hi <= *interval.lo) return 0;
  if (g.degree() == 0) return 0;
  return count_with(sturm_sequence(g), g, interval);
}

Rat cauchy_bound(const UnivariatePoly& g) {
  Rat m(0);
  for (int k = 0; k < g.degree(); ++k) m = max(m, abs(g.coeff(k) / g.lead()));
  return m + 1;
}

std::vector<IsolatedRoot> isolate_real_roots(const UnivariatePoly& g) {
  std::vector<IsolatedRoot> out;
  if (g.degree() <= 0) return out;
  auto seq = sturm_sequence(g);
  Rat b = cauchy_bound(g);
  struct Job {
    Rat lo, hi;
    int count;
  };
  std::vector<Job> stack;
  int total = count_with(seq, g, {Rat(-b), b});
  if (total > 0) stack.push_back({Rat(-b), b, total});
  while (!stack.empty()) {
    Job job = stack.back();
    stack.pop_back();
    if (job.count == 1) {
      out.push_back({job.lo, job.hi});
      continue;
    }
    Rat mid = (job.lo + job.hi) / 2;
    if (g.eval(mid) == 0) out.push_back({mid, mid});
    int left = count_with(seq, g, {job.lo, mid});
    int right = count_with(seq, g, {mid, job.hi});
    if (left > 0) stack.push_back({job.lo, mid, left});
    if (right > 0) stack.push_back({mid, job.hi, right});
  }
  std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
  return out;
}

IsolatedRoot refine_root(const UnivariatePoly& g, IsolatedRoot root, const Rat& width) {
  if (root.lo == root.hi) return root;
  auto seq = sturm_sequence(g);
  while (root.hi - root.lo > width) {
    Rat mid = (root.lo + root.hi) / 2;
    if (g.eval(mid) == 0) return {mid, mid};
    if (count_with(seq, g, {root.lo, mid}) == 1)
      root.hi = mid;
    else
      root.lo = mid;
  }
  return root;
}

std::vector<double> real_root_approximations(const UnivariatePoly& g) {
  std::vector<double> out;
  const Rat width = rat(1, 1000000000000L);
  for (const auto& iv : isolate_real_roots(g)) {
    IsolatedRoot r = refine_root(g, iv, width);
    out.push_back(Rat((r.lo + r.hi) / 2).get_d());
  }
  return out;
}

Rat simplest_rational(const Rat& a, const Rat& b) {
  if (b < a) return simplest_rational(b, a);
  if (a <= 0 && b >= 0) return Rat(0);
  if (b < 0) return -simplest_rational(-b, -a);
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  if (Rat(fl) == a) return a;
  if (Rat(fl + 1) <= b) return Rat(fl + 1);
  Rat fr(fl);
  return fr + 1 / simplest_rational(1 / (b - fr), 1 / (a - fr));
}

std::vector<Rat> rational_roots(const UnivariatePoly& g) {
  std::vector<Rat> out;
  if (g.is_zero()) throw PreconditionError("rational roots of the zero polynomial");
  if (g.degree() <= 0) return out;
  // A rational root p/q of the primitive integer form has q | lead, so once an
  // isolating interval is narrower than 1/lead^2 the simplest rational inside is the only candidate.
  UnivariatePoly sqf = exact_quotient(g.monic(), gcd(g, g.derivative()));
  UnivariatePoly prim = primitive_part(sqf);
  Rat lead = prim.lead();
  Rat width = 1 / (lead * lead * 4);
  for (const auto& iv : isolate_real_roots(sqf)) {
    IsolatedRoot r = refine_root(sqf, iv, width);
    Rat cand = r.lo == r.hi ? r.lo : simplest_rational(r.lo, r.hi);
    if (sqf.eval(cand) == 0) out.push_back(cand);
  }
  return out;
}

}  // namespace mhlab
