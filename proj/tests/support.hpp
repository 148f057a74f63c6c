#pragma once

// Seeded random generators and fixture builders shared by the test suites.
// Everything is deterministic given the Rng state.

#include <random>
#include <vector>

#include "hypick/hypick.hpp"

namespace hytest {

using namespace hypick;
using Rng = std::mt19937_64;

inline double uni(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

inline int uni_int(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

inline Complex unit_complex(Rng& rng) { return std::polar(1.0, uni(rng, -pi, pi)); }

inline Complex cbox(Rng& rng, double r) { return Complex(uni(rng, -r, r), uni(rng, -r, r)); }

inline Complex cgauss(Rng& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  return Complex(d(rng), d(rng));
}

inline Vector random_ball_point(Rng& rng, int d, double rmax) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = cgauss(rng);
  double nr = v.norm();
  if (nr < 1e-9) {
    v.setZero();
    v(0) = Complex(1.0, 0.0);
    nr = 1.0;
  }
  return v * (uni(rng, 0.0, rmax) / nr);
}

// Pairwise-separated points; separation measured in the pseudo-hyperbolic
// metric so no two points nearly coincide after automorphisms.
inline PointSet random_pointset(Rng& rng, int n, int d, double rmax = 0.8,
                                double min_sep = 0.15) {
  std::vector<Vector> pts;
  int guard = 0;
  while (static_cast<int>(pts.size()) < n) {
    Vector cand = random_ball_point(rng, d, rmax);
    bool ok = true;
    for (const auto& p : pts)
      if (rho(p, cand) < min_sep) ok = false;
    if (ok) pts.push_back(std::move(cand));
    if (++guard > 10000) throw std::runtime_error("random_pointset: separation too strict");
  }
  return PointSet::validated(std::move(pts), d, {});
}

// Staircase configuration: x_0 = 0 and x_i supported on the first i
// coordinates with a real pivot on coordinate i-1.  Already in normal form.
// Off-pivot entries stay below the pivots in modulus, which bounds the
// inverse of the staircase matrix; the configuration is then determined by
// its Gram matrix to far better than 1e-8 per coordinate, and embed(gram(X))
// must reproduce X at that accuracy.
inline PointSet random_normal_form_points(Rng& rng, int n) {
  const int d = std::max(1, n - 1);
  std::vector<Vector> pts;
  pts.push_back(Vector::Zero(d));
  for (int i = 1; i < n; ++i) {
    Vector v = Vector::Zero(d);
    for (int j = 0; j + 1 < i; ++j) v(j) = cbox(rng, 0.10);
    v(i - 1) = Complex(uni(rng, 0.15, 0.35), 0.0);
    double u_max = std::min(1.45, 0.8 / v.norm());
    v *= uni(rng, 0.9, std::max(1.0, u_max));
    pts.push_back(std::move(v));
  }
  return PointSet::validated(std::move(pts), d, {});
}

inline std::vector<Complex> random_gamma(Rng& rng, int n) {
  std::vector<Complex> g(n);
  for (auto& z : g) z = std::polar(uni(rng, 0.5, 2.0), uni(rng, -pi, pi));
  return g;
}

inline GramSpace random_cpp_gram(Rng& rng, int n, const Tolerances& tol = {}) {
  const int d = std::max(1, n - 1);
  PointSet x = random_pointset(rng, n, d, 0.8, 0.2);
  GramSpace g = gram_from_points(x, tol);
  return rescale(g, random_gamma(rng, n), {}, tol);
}

// Hermitian positive definite Gram with no structural constraint; CPP holds
// on a fraction of draws only.
inline GramSpace random_pd_gram(Rng& rng, int n, const Tolerances& tol = {}) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = cgauss(rng);
    Matrix k = b * b.adjoint();
    if (gram_issues(k, tol).empty()) return GramSpace::validated(std::move(k), tol);
  }
  throw std::runtime_error("random_pd_gram: could not draw a valid Gram");
}

inline Matrix random_unitary(Rng& rng, int d) {
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = cgauss(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  return q;
}

inline BallAutomorphism random_automorphism(Rng& rng, int d, double amax = 0.6) {
  return BallAutomorphism::validated(random_ball_point(rng, d, amax),
                                     random_unitary(rng, d), {});
}

inline RootedTree random_tree(Rng& rng, int n, bool unit_lengths = true) {
  std::vector<int> parent(n);
  parent[0] = -1;
  for (int v = 1; v < n; ++v) parent[v] = uni_int(rng, 0, v - 1);
  std::vector<double> len;
  if (!unit_lengths) {
    len.resize(n, 1.0);
    for (int v = 1; v < n; ++v) len[v] = uni(rng, 0.5, 1.5);
  }
  return RootedTree::validated(std::move(parent), std::move(len));
}

inline TreeWeight random_weight(Rng& rng, const RootedTree& t) {
  std::vector<double> inc(t.size(), 0.0);
  for (int v = 0; v < t.size(); ++v)
    if (v != t.root()) inc[v] = uni(rng, 0.02, 0.3);
  return TreeWeight::from_increments(t, inc);
}

inline std::vector<Complex> random_symbol(Rng& rng, int n, double r = 1.0) {
  std::vector<Complex> v(n);
  for (auto& z : v) z = cbox(rng, r);
  return v;
}

// Weighted Bergman restriction to {-r, 0, r}: the standing example of a
// non-Pick space whose middle point still separates the other two.
inline GramSpace bergman_gram(double r, const Tolerances& tol = {}) {
  const double r2 = r * r;
  Matrix k(3, 3);
  double outer = 1.0 / ((1.0 - r2) * (1.0 - r2));
  double cross = 1.0 / ((1.0 + r2) * (1.0 + r2));
  k << Complex(outer, 0), Complex(1, 0), Complex(cross, 0),
       Complex(1, 0), Complex(1, 0), Complex(1, 0),
       Complex(cross, 0), Complex(1, 0), Complex(outer, 0);
  return GramSpace::validated(std::move(k), tol);
}

// Power kernel k_ij = (1 - y_i conj(y_j))^{-lambda} on the three cube roots
// scaled to radius sqrt(r2); its angular invariant is 3 lambda arg(1 - r2 w).
inline GramSpace power_arg_gram(double lambda, double r2, const Tolerances& tol = {}) {
  const Complex w = std::polar(1.0, 2.0 * pi / 3.0);
  std::vector<Complex> y(3);
  for (int j = 0; j < 3; ++j) y[j] = std::sqrt(r2) * std::pow(w, j);
  Matrix k(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      k(i, j) = std::pow(Complex(1.0, 0.0) - y[i] * std::conj(y[j]), -lambda);
  return GramSpace::validated(std::move(k), tol);
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace hytest
