#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>

#include "mhlab/classifier.hpp"

namespace mhlab {

void assign_case(Classification& c);

namespace {

using cd = std::complex<double>;

struct Cluster {
  cd center;
  int multiplicity = 0;
};

struct NumericReduction {
  int nu1 = 0;
  int nu2 = 0;
  std::vector<double> g;  // ascending powers of u
  std::vector<Cluster> roots;
};

double radius(double tol, cd z) { return std::sqrt(tol) * (1.0 + std::abs(z)); }

/// Drop coefficients below tol relative to the largest one.
NumericPoly pruned(const NumericPoly& p, double tol) {
  double big = 0.0;
  for (const auto& kv : p.terms()) big = std::max(big, std::abs(kv.second));
  NumericPoly out;
  for (const auto& [e, c] : p.terms())
    if (std::abs(c) > tol * big) out.add_term(e, c);
  return out;
}

BivariatePoly support_pattern(const NumericPoly& p) {
  BivariatePoly out;
  for (const auto& kv : p.terms()) out.add_term(kv.first, Rat(1));
  return out;
}

std::vector<Cluster> cluster_roots(const std::vector<double>& g, double tol) {
  int n = static_cast<int>(g.size()) - 1;
  std::vector<cd> z;
  if (n >= 1) {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -g[static_cast<std::size_t>(i)] / g.back();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < n; ++i) z.push_back(es.eigenvalues()[i]);
  }
  std::sort(z.begin(), z.end(), [](cd a, cd b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  // Single-linkage clustering at radius rho; pairs at distance in (rho, 100 rho) are ambiguous.
  std::vector<int> label(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) label[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) { return label[static_cast<std::size_t>(x)] == x ? x : label[static_cast<std::size_t>(x)] = find(label[static_cast<std::size_t>(x)]); };
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      double rho = std::max(radius(tol, z[i]), radius(tol, z[j]));
      double d = std::abs(z[i] - z[j]);
      if (d <= rho)
        label[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(static_cast<int>(j));
      else if (d < 100 * rho)
        throw IllConditioned("roots at distance " + std::to_string(d) + " cannot be separated or merged at tol");
    }
  }
  std::vector<Cluster> out;
  std::vector<int> index(z.size(), -1);
  for (std::size_t i = 0; i < z.size(); ++i) {
    int root = find(static_cast<int>(i));
    if (index[static_cast<std::size_t>(root)] < 0) {
      index[static_cast<std::size_t>(root)] = static_cast<int>(out.size());
      out.push_back({});
    }
    auto& cl = out[static_cast<std::size_t>(index[static_cast<std::size_t>(root)])];
    cl.center += z[i];
    cl.multiplicity += 1;
  }
  for (auto& cl : out) cl.center /= static_cast<double>(cl.multiplicity);
  return out;
}

bool is_real(const Cluster& c, double tol) {
  double rho = radius(tol, c.center);
  double im = std::abs(c.center.imag());
  if (im <= rho) return true;
  if (im < 100 * rho) throw IllConditioned("root too close to the real axis to decide realness");
  return false;
}

NumericReduction reduce(const NumericPoly& p, const MixedHomogeneity& k, double tol) {
  NumericPoly q = k.swapped ? p.swapped() : p;
  NumericReduction red;
  red.nu1 = q.order_y1();
  red.nu2 = q.order_y2();
  int n = 0;
  for (const auto& kv : q.terms()) n = std::max(n, (kv.first.j - red.nu2) / k.s);
  red.g.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (const auto& [e, c] : q.terms()) {
    if (k.s * e.i + k.r * e.j != k.m) throw IllConditioned("support drifted off the weighted line");
    red.g[static_cast<std::size_t>((e.j - red.nu2) / k.s)] = c;
  }
  red.roots = cluster_roots(red.g, tol);
  return red;
}

}  // namespace

Classification classify_numeric(const NumericPoly& input, double tol) {
  Classification c;
  c.advisory = true;
  NumericPoly p = pruned(input, tol);
  if (p.is_zero()) {
    c.reason = ExclusionReason::Zero;
    c.detail = "the zero polynomial";
    return c;
  }
  try {
    c.kappa = detect_kappa(support_pattern(p));
  } catch (const NotAdmitted& e) {
    c.reason = e.reason;
    c.detail = e.what();
    return c;
  }
  if (p.coeff(1, 0) != 0 || p.coeff(0, 1) != 0) {
    c.reason = ExclusionReason::GradientNonzero;
    c.detail = "gradient at the origin is nonzero";
    return c;
  }
  c.d_h = homogeneous_distance(c.kappa);
  NumericReduction rp = reduce(p, c.kappa, tol);
  c.nu1 = rp.nu1;
  c.nu2 = rp.nu2;
  c.factorization.nu1 = rp.nu1;
  c.factorization.nu2 = rp.nu2;
  c.factorization.n = static_cast<int>(rp.g.size()) - 1;
  std::vector<Cluster> phi_real;
  for (const auto& cl : rp.roots)
    if (is_real(cl, tol)) {
      phi_real.push_back(cl);
      c.N = std::max(c.N, cl.multiplicity);
    }
  c.h_phi = max(max(Rat(c.nu1), Rat(c.nu2)), max(c.d_h, Rat(c.N)));

  auto& h = c.hessian;
  NumericPoly w = pruned(hessian_det(p), tol);
  if (w.is_zero()) throw IllConditioned("Hessian determinant numerically zero");
  h.kappa_w = kappa_of_hessian(c.kappa);
  if (!h.kappa_w) {
    h.h_w = 0;
  } else {
    NumericReduction rw = reduce(w, *h.kappa_w, tol);
    h.factorization_w.nu1 = rw.nu1;
    h.factorization_w.nu2 = rw.nu2;
    h.factorization_w.n = static_cast<int>(rw.g.size()) - 1;
    int T = std::max(rw.nu1, rw.nu2), Nw = 0;
    for (const auto& cl : rw.roots)
      if (is_real(cl, tol)) {
        T = std::max(T, cl.multiplicity);
        Nw = std::max(Nw, cl.multiplicity);
      }
    h.T = T;
    if (T > 0) {
      if (rw.nu1 == T) h.attaining.push_back(RootLocation::Axis1);
      if (rw.nu2 == T) h.attaining.push_back(RootLocation::Axis2);
      for (const auto& cl : rw.roots) {
        if (cl.multiplicity != T || !is_real(cl, tol)) continue;
        bool shared = false;
        for (const auto& pc : phi_real) {
          double d = std::abs(cl.center.real() - pc.center.real());
          double rho = std::max(radius(tol, cl.center), radius(tol, pc.center));
          if (d <= rho) shared = true;
          else if (d < 100 * rho) throw IllConditioned("cannot decide whether a Hessian root coincides with a root of phi");
        }
        (shared ? h.coincident_roots_at_T : h.new_roots_at_T) += 1;
      }
      if (h.coincident_roots_at_T > 0) h.attaining.push_back(RootLocation::OffAxisCoincident);
      if (h.new_roots_at_T > 0) h.attaining.push_back(RootLocation::OffAxisNew);
    }
    bool c_type = false, d_type = false;
    for (auto loc : h.attaining) (loc == RootLocation::OffAxisNew ? d_type : c_type) = true;
    h.tie = c_type && d_type;
    h.max_root_location = h.attaining.empty() ? RootLocation::NoRealRoots
                          : d_type          ? RootLocation::OffAxisNew
                                            : h.attaining.front();
    int nw = h.factorization_w.n;
    Rat dw = homogeneous_distance(*h.kappa_w);
    h.h_w = nw == 0 ? max(Rat(rw.nu1), Rat(rw.nu2)) : max(max(Rat(rw.nu1), Rat(rw.nu2)), max(dw, Rat(Nw)));
  }
  c.T = h.T;
  c.h_w = h.h_w;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tol);
  c.diagnostics.push_back(std::string("advisory: floating-point root clustering at tol ") + buf);
  assign_case(c);
  return c;
}

}  // namespace mhlab
