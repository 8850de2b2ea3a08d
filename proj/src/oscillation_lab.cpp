#include "mhlab/oscillation_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mhlab/algebra_checks.hpp"

namespace mhlab {

namespace {

double taper(double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  double a = std::exp(-1 / x), b = std::exp(-1 / (1 - x));
  return a / (a + b);
}

/// beta = 1 on [-1, 1], 0 outside [-2, 2].
double beta(double t) { return taper(2 - std::abs(t)); }

/// Dyadic bump supported in 1/2 <= |t| <= 2.
double chi(double t) { return beta(t) - beta(2 * t); }

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

GaussRule gauss_legendre(int n) {
  GaussRule g;
  g.x.resize(static_cast<std::size_t>(n));
  g.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    g.x[static_cast<std::size_t>(i)] = z;
    g.w[static_cast<std::size_t>(i)] = 2 / ((1 - z * z) * dp * dp);
  }
  return g;
}

/// Nodes and weights (with chi folded in) on [-2, -1/2] and [1/2, 2] using panels of width <= h.
void axis_nodes(double h, const GaussRule& rule, std::vector<double>& x, std::vector<double>& w) {
  x.clear();
  w.clear();
  int panels = static_cast<int>(std::ceil(1.5 / h));
  double width = 1.5 / panels;
  for (int sign : {-1, 1}) {
    for (int p = 0; p < panels; ++p) {
      double a = 0.5 + p * width;
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        double t = sign * (a + width * (rule.x[i] + 1) / 2);
        double c = chi(t);
        if (c == 0) continue;
        x.push_back(t);
        w.push_back(rule.w[i] * width / 2 * c);
      }
    }
  }
}

/// Coefficients in y2 for fixed y1, ascending.
std::vector<double> slice(const NumericPoly& p, double y1) {
  int dy2 = p.is_zero() ? 0 : p.degree_y2();
  std::vector<double> out(static_cast<std::size_t>(dy2) + 1, 0.0);
  for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(e.j)] += c * std::pow(y1, e.i);
  return out;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

NumericPoly phase_poly(const DyadicPiece& piece, const Vec3& xi) {
  NumericPoly out = NumericPoly::monomial(xi[0], 1, 0);
  out += to_numeric(piece.second) * xi[1];
  out += to_numeric(piece.phi_jk) * xi[2];
  return out;
}

/// Upper bound for |d phase / d y_axis| on the annulus, sampled with a safety factor.
double max_derivative(const NumericPoly& phase, bool first_axis) {
  NumericPoly d = partial(phase, first_axis ? 1 : 2);
  double best = 0;
  const int n = 48;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      double y1 = 0.5 + 1.5 * a / n, y2 = 0.5 + 1.5 * b / n;
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) best = std::max(best, std::abs(d.eval(s1 * y1, s2 * y2)));
    }
  return 1.25 * best;
}

}  // namespace

std::vector<std::pair<double, std::optional<Rat>>> real_roots_of(const UnivariatePoly& g) {
  std::vector<std::pair<double, std::optional<Rat>>> out;
  if (g.degree() < 1) return out;
  UnivariatePoly sf = UnivariatePoly::constant(Rat(1));
  for (const auto& f : squarefree_decomposition(g)) sf = sf * f.factor;
  std::vector<Rat> rational = rational_roots(g);
  for (const auto& iv : isolate_real_roots(sf)) {
    std::optional<Rat> exact;
    for (const auto& q : rational)
      if ((iv.lo == iv.hi && q == iv.lo) || (iv.lo < q && q < iv.hi)) exact = q;
    if (exact) {
      out.emplace_back(to_double(*exact), exact);
    } else {
      IsolatedRoot fine = refine_root(sf, iv, rat(1, 1000000000000L));
      out.emplace_back(to_double(Rat((fine.lo + fine.hi) / 2)), exact);
    }
  }
  return out;
}

DyadicPiece build_piece_at(const CanonicalFactorization& f, int r, const Rat& lambda, int j, int k) {
  if (j < 0 || k < 0) throw PreconditionError("build_piece: j and k must be nonnegative");
  if (r < 2) throw PreconditionError("build_piece: requires r >= 2");
  if (k - static_cast<long>(j) * r < 3)
    throw PreconditionError("build_piece: need k - j r >= 3 so that delta_jk <= 1/8 (j << k/r)");
  DyadicPiece piece;
  piece.j = j;
  piece.k = k;
  piece.r = r;
  piece.lambda = lambda;
  piece.n_l = root_multiplicity(f.g, lambda);
  piece.delta = pow2(static_cast<long>(j) * r - k);
  piece.scale_exponent = -static_cast<long>(j) * f.nu1 - static_cast<long>(k) * piece.n_l -
                         static_cast<long>(j) * r * f.nu2 - static_cast<long>(j) * r * (f.n - piece.n_l);
  piece.second = BivariatePoly::monomial(piece.delta, 0, 1) + BivariatePoly::monomial(lambda, r, 0);
  piece.phi_jk = rescaled_piece(f, r, lambda, j, k);
  if (piece.n_l > 0) piece.blowups.push_back({"weighted L^{4/3}->L^4 on the root piece", Rat(-1, 4)});
  return piece;
}

DyadicPiece build_piece(const CanonicalFactorization& f, int r, int l, int j, int k) {
  auto roots = real_roots_of(f.g);
  if (l < 1 || l > static_cast<int>(roots.size()))
    throw PreconditionError("build_piece: no real root with index " + std::to_string(l));
  const auto& root = roots[static_cast<std::size_t>(l - 1)];
  if (!root.second) {
    std::ostringstream os;
    os.precision(12);
    os << "build_piece: root " << l << " (~" << root.first << ") is irrational; use the floating-point construction";
    throw IrrationalRoot(os.str());
  }
  return build_piece_at(f, r, *root.second, j, k);
}

Vec3 parse_ray(const std::string& text) {
  if (text == "e1") return {1, 0, 0};
  if (text == "e2") return {0, 1, 0};
  if (text == "e3") return {0, 0, 1};
  Vec3 v{};
  std::istringstream is(text);
  std::string part;
  int i = 0;
  while (std::getline(is, part, ',')) {
    if (i >= 3) throw PreconditionError("ray '" + text + "' has more than three components");
    try {
      v[static_cast<std::size_t>(i++)] = std::stod(part);
    } catch (const std::exception&) {
      throw PreconditionError("ray '" + text + "' is not e1, e2, e3 or a,b,c");
    }
  }
  double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (i != 3 || n == 0) throw PreconditionError("ray '" + text + "' is not e1, e2, e3 or a nonzero a,b,c");
  for (auto& c : v) c /= n;
  return v;
}

std::string ray_name(const Vec3& ray) {
  if (ray == Vec3{1, 0, 0}) return "e1";
  if (ray == Vec3{0, 1, 0}) return "e2";
  if (ray == Vec3{0, 0, 1}) return "e3";
  std::ostringstream os;
  os.precision(6);
  os << ray[0] << "," << ray[1] << "," << ray[2];
  return os.str();
}

double cutoff_mass() { return 9.0 / 4.0; }

double fourier_magnitude(const DyadicPiece& piece, const Vec3& xi, const DecayOptions& opt, long* evaluations) {
  NumericPoly phase = phase_poly(piece, xi);
  double norm = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  double base = 1.0 / std::max(8.0, norm / 4);
  // One panel of nodes_per_panel Gauss points per local oscillation at most.
  double h1 = std::min(base, 2 * std::numbers::pi / std::max(1e-300, max_derivative(phase, true)));
  double h2 = std::min(base, 2 * std::numbers::pi / std::max(1e-300, max_derivative(phase, false)));
  GaussRule rule = gauss_legendre(opt.nodes_per_panel);
  std::vector<double> x1, w1, x2, w2;
  axis_nodes(h1, rule, x1, w1);
  axis_nodes(h2, rule, x2, w2);
  long count = static_cast<long>(x1.size()) * static_cast<long>(x2.size());
  if (count > opt.max_evaluations)
    throw OscillationBudgetExceeded("quadrature needs " + std::to_string(count) + " evaluations at |xi| = " +
                                    std::to_string(norm) + " (budget " + std::to_string(opt.max_evaluations) + ")");
  if (evaluations) *evaluations += count;
  long double re = 0, im = 0;
  for (std::size_t a = 0; a < x1.size(); ++a) {
    std::vector<double> c = slice(phase, x1[a]);
    long double sre = 0, sim = 0;
    for (std::size_t b = 0; b < x2.size(); ++b) {
      double ph = horner(c, x2[b]);
      sre += w2[b] * std::cos(ph);
      sim -= w2[b] * std::sin(ph);
    }
    re += w1[a] * sre;
    im += w1[a] * sim;
  }
  return static_cast<double>(std::sqrt(re * re + im * im));
}

std::vector<double> dyadic_schedule(double lo, double hi) {
  if (!(lo > 0) || hi < lo) throw PreconditionError("dyadic_schedule: need 0 < lo <= hi");
  std::vector<double> out;
  for (double x = lo; x <= hi * (1 + 1e-12); x *= 2) out.push_back(x);
  return out;
}

DecayFit estimate_fourier_decay(const DyadicPiece& piece, const Vec3& ray, const std::vector<double>& schedule,
                                const DecayOptions& opt) {
  if (schedule.size() < 5) throw PreconditionError("estimate_fourier_decay: schedule needs at least 5 points");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (!(schedule[i] > schedule[i - 1])) throw PreconditionError("estimate_fourier_decay: schedule must increase");
  if (schedule.back() > opt.max_xi)
    throw OscillationBudgetExceeded("|xi| = " + std::to_string(schedule.back()) + " exceeds the cap " +
                                    std::to_string(opt.max_xi));
  DecayFit fit;
  fit.ray = ray;
  fit.schedule = schedule;
  double floor = opt.noise_floor * cutoff_mass();
  for (double R : schedule) {
    double m = fourier_magnitude(piece, {R * ray[0], R * ray[1], R * ray[2]}, opt, &fit.evaluations);
    fit.magnitude.push_back(m);
    fit.resolved.push_back(m > floor);
  }
  // Least squares on the top octaves; unresolved points enter at the floor, so rho is then a lower bound.
  double top = schedule.back() / std::pow(2.0, opt.fit_octaves) * (1 - 1e-12);
  std::vector<double> lx, ly;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < top) continue;
    lx.push_back(std::log(schedule[i]));
    ly.push_back(std::log(std::max(fit.magnitude[i], floor)));
    idx.push_back(i);
    if (!fit.resolved[i]) fit.floor_limited = true;
  }
  if (lx.size() < 2) throw PreconditionError("estimate_fourier_decay: fewer than two points in the fit window");
  double n = static_cast<double>(lx.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double icept = (sy - slope * sx) / n;
  fit.rho = -slope;
  fit.fit_points = static_cast<int>(lx.size());
  fit.residual.assign(schedule.size(), 0.0);
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double res = ly[i] - (icept + slope * lx[i]);
    fit.residual[idx[i]] = res;
    fit.max_residual = std::max(fit.max_residual, std::abs(res));
  }
  return fit;
}

std::pair<Rat, Rat> decay_to_pq(const Rat& rho) {
  if (rho <= 0) throw PreconditionError("decay_to_pq: rho must be positive");
  Rat u = (1 + rho / (rho + 1)) / 2;
  return {u, 1 - u};
}

Rat interpolation_exponent(int N, const Rat& d_h) {
  Rat gap = Rat(N) - d_h;
  if (gap <= 0) throw PreconditionError("interpolation_exponent: requires N > d_h");
  return (gap + 1) / (2 * gap + 1);
}

}  // namespace mhlab
