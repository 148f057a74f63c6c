#pragma once

// Rescaling-invariant quantities of a finite kernel space: the projective
// metric delta, the angular invariant A (argument of a cyclic product of
// Gram entries), the footprint length LF, the MQ matrices whose joint
// positivity characterizes the complete Pick property, the strong triangle
// inequality in its three equivalent forms, and the two-point/one-point
// separation quantity Delta(x; y, z).
//
// Index arguments are 0-based throughout.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hypick/gram.hpp"
#include "hypick/types.hpp"

namespace hypick {

// delta(x,y)^2 = 1 - |khat_xy|^2.  Symmetric, zero on the diagonal,
// values in [0, 1).
inline double delta(const GramSpace& g, int i, int j) {
  if (i == j) return 0.0;
  double h = std::abs(g.khat(i, j));
  return std::sqrt(std::max(0.0, 1.0 - h * h));
}

inline RealMatrix delta_matrix(const GramSpace& g) {
  const int n = g.n();
  RealMatrix d = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = delta(g, i, j);
  return d;
}

// Independent route to delta: the operator norm of the difference of the
// orthogonal projections onto the two kernel lines, computed in an
// orthonormalizing coordinate system obtained from a Cholesky factor.
inline double delta_operator_norm(const GramSpace& g, int i, int j) {
  const int n = g.n();
  Matrix kbar = g.K().conjugate();
  Eigen::LLT<Matrix> llt(kbar);
  if (llt.info() != Eigen::Success)
    throw NumericError("delta_operator_norm: Cholesky factorization failed");
  Matrix lh = Matrix(llt.matrixL()).adjoint();
  Vector u = lh.col(i) / lh.col(i).norm();
  Vector v = lh.col(j) / lh.col(j).norm();
  Matrix diff = u * u.adjoint() - v * v.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  double lo = std::abs(es.eigenvalues()(0));
  double hi = std::abs(es.eigenvalues()(n - 1));
  return std::max(lo, hi);
}

// A(x,y,z) = arg(k_xy k_yz k_zx) on the principal branch (-pi, pi].
// Invariant under rescaling and cyclic index rotation; changes sign under a
// transposition and under conjugation of the space.
inline double angular_invariant(const GramSpace& g, int i, int j, int k) {
  Complex p = g.k(i, j) * g.k(j, k) * g.k(k, i);
  return std::arg(p);
}

// Distance of A_ijk - A_ijl + A_ikl - A_jkl from 2 pi Z; vanishes identically.
inline double cocycle_defect(const GramSpace& g, int i, int j, int k, int l) {
  double s = angular_invariant(g, i, j, k) - angular_invariant(g, i, j, l) +
             angular_invariant(g, i, k, l) - angular_invariant(g, j, k, l);
  return std::abs(principal_angle(s));
}

// LF_ijk = (1/delta_ij) |1 - k_ji k_ik / (k_jk k_ii)|; for ball
// configurations in normal position this is the length |w| of the footprint
// of the third point on the complex geodesic through the first two.
inline double lf(const GramSpace& g, int i, int j, int k) {
  double dij = delta(g, i, j);
  if (!(dij > 0)) throw DomainError("lf: first two indices must be distinct");
  Complex q = Complex(1.0, 0.0) - g.k(j, i) * g.k(i, k) / (g.k(j, k) * g.k(i, i));
  return std::abs(q) / dij;
}

struct MqMatrix {
  int r = 0;                 // distinguished index
  std::vector<int> points;   // original indices of the rows/columns, in order
  Matrix m;                  // (n-1) x (n-1) Hermitian block
};

// MQ_r = ( 1 - k_ir k_rj / (k_ij k_rr) )_{i,j != r}.  Every entry is
// rescaling-invariant; joint positive semidefiniteness over all r is the
// complete Pick property.
inline MqMatrix mq_matrix(const GramSpace& g, int r) {
  const int n = g.n();
  if (r < 0 || r >= n) throw DomainError("mq_matrix: index out of range");
  MqMatrix out;
  out.r = r;
  for (int i = 0; i < n; ++i)
    if (i != r) out.points.push_back(i);
  const int m = n - 1;
  out.m.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int i = out.points[a], j = out.points[b];
      out.m(a, b) = Complex(1.0, 0.0) - g.k(i, r) * g.k(r, j) / (g.k(i, j) * g.k(r, r));
    }
  out.m = Matrix(0.5 * (out.m + out.m.adjoint()));
  return out;
}

struct CppReport {
  bool cpp = true;
  int worst_r = -1;           // block with the most negative normalized eigenvalue
  double worst_eigenvalue = 0.0;
  double worst_scale = 1.0;   // max(1, lambda_max) of that block
};

// Complete Pick property: lambda_min(MQ_r) >= -tol.psd * max(1, lambda_max)
// for every r.
inline CppReport has_cpp(const GramSpace& g, const Tolerances& tol = {}) {
  CppReport rep;
  double worst = 0.0;
  for (int r = 0; r < g.n(); ++r) {
    if (g.n() == 1) break;
    MqMatrix mq = mq_matrix(g, r);
    double lmax = 0.0;
    double lmin = detail::hermitian_min_eigenvalue(mq.m, &lmax);
    double scale = std::max(1.0, lmax);
    if (lmin < -tol.psd * scale) rep.cpp = false;
    if (lmin / scale < worst) {
      worst = lmin / scale;
      rep.worst_r = r;
      rep.worst_eigenvalue = lmin;
      rep.worst_scale = scale;
    }
  }
  return rep;
}

namespace detail {

struct StiMargins {
  double two_sided;   // min slack in the Mobius-addition bounds on delta_jk
  double product;     // delta_ij delta_ik - | 1 - |k_ji k_ik / (k_jk k_ii)| |
  double symmetric;   // slack in the symmetric reciprocal form
};

inline StiMargins sti_margins(const GramSpace& g, int i, int j, int k) {
  double dij = delta(g, i, j), dik = delta(g, i, k), djk = delta(g, j, k);
  double ub = (dij + dik) / (1.0 + dij * dik);
  double lb = std::abs(dij - dik) / (1.0 - dij * dik);
  StiMargins m{};
  m.two_sided = std::min(ub - djk, djk - lb);
  double q = std::abs(g.k(j, i) * g.k(i, k) / (g.k(j, k) * g.k(i, i)));
  m.product = dij * dik - std::abs(1.0 - q);
  double h12 = std::abs(g.khat(i, j)), h23 = std::abs(g.khat(j, k)),
         h13 = std::abs(g.khat(i, k));
  m.symmetric = 2.0 / (h12 * h23 * h13) -
                (1.0 / (h12 * h12) + 1.0 / (h23 * h23) + 1.0 / (h13 * h13) - 1.0);
  return m;
}

}  // namespace detail

// Strong triangle inequality for the triple (i, j, k), evaluated in all three
// equivalent forms; the forms must agree up to boundary tolerance.
inline bool sti_holds(const GramSpace& g, int i, int j, int k,
                      const Tolerances& tol = {}) {
  if (i == j || i == k || j == k)
    throw DomainError("sti_holds: indices must be distinct");
  auto m = detail::sti_margins(g, i, j, k);
  const double eps = tol.eq;
  bool v1 = m.two_sided >= -eps;
  bool v2 = m.product >= -eps;
  bool v3 = m.symmetric >= -eps * (1.0 + std::abs(m.symmetric));
  auto boundary = [&](double x) { return std::abs(x) <= 100.0 * eps * (1.0 + std::abs(x)); };
  if ((v1 != v2 && !boundary(m.two_sided) && !boundary(m.product)) ||
      (v1 != v3 && !boundary(m.two_sided) && !boundary(m.symmetric)))
    throw NumericError("sti_holds: the equivalent forms disagree beyond tolerance");
  return v1;
}

// Slack in the three-point solvability inequality: nonnegative iff the
// 3 x 3 space on (i, j, k) has the complete Pick property.  Same shape as the
// symmetric STI form but with cos A in place of 1 on the dominating side.
inline double solvability_margin(const GramSpace& g, int i, int j, int k) {
  double h12 = std::abs(g.khat(i, j)), h23 = std::abs(g.khat(j, k)),
         h13 = std::abs(g.khat(i, k));
  double a = angular_invariant(g, i, j, k);
  return 2.0 * std::cos(a) / (h12 * h23 * h13) -
         (1.0 / (h12 * h12) + 1.0 / (h23 * h23) + 1.0 / (h13 * h13) - 1.0);
}

// Delta(x; y, z) by Cramer's rule on the 3 x 3 subspace: the distance from
// the normalized kernel at x to the span of the kernels at y and z, through
// the norm of the interpolating element.
inline double capital_delta(const GramSpace& g, int x, int y, int z,
                            const Tolerances& tol = {}) {
  if (x == y || x == z || y == z)
    throw DomainError("capital_delta: indices must be distinct");
  Matrix k3(3, 3);
  const int idx[3] = {x, y, z};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) k3(a, b) = g.k(idx[a], idx[b]);
  double num = k3.determinant().real();
  // Column x replaced by the indicator of x: the determinant reduces to the
  // (y, z) principal 2 x 2 minor.
  double den = (k3(1, 1) * k3(2, 2) - k3(1, 2) * k3(2, 1)).real();
  double scale = std::abs(k3(1, 1) * k3(2, 2));
  if (std::abs(den) <= tol.zero * std::max(1.0, scale))
    throw NumericError("capital_delta: singular interpolation system");
  double d2 = num / (g.diag(x) * den);
  return std::sqrt(std::max(0.0, d2));
}

// Closed form: delta_yz^2 Delta^2 = delta_yz^2 + delta_xy^2 + delta_xz^2 - 2
//                                   + 2 Re khat_xy khat_yz khat_zx.
// Agrees with the Cramer route on complete Pick spaces.
inline double capital_delta_closed(const GramSpace& g, int x, int y, int z) {
  double dyz = delta(g, y, z), dxy = delta(g, x, y), dxz = delta(g, x, z);
  if (!(dyz > 0)) throw DomainError("capital_delta_closed: y and z must be distinct");
  double re = (g.khat(x, y) * g.khat(y, z) * g.khat(z, x)).real();
  double num = dyz * dyz + dxy * dxy + dxz * dxz - 2.0 + 2.0 * re;
  return std::sqrt(std::max(0.0, num)) / dyz;
}

// Direct route: Delta = 1 / (||k_x|| ||v||) where v is the element of the
// 3-dimensional span interpolating 1 at x and 0 at y, z.
inline double capital_delta_interpolation(const GramSpace& g, int x, int y, int z) {
  Matrix k3(3, 3);
  const int idx[3] = {x, y, z};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) k3(a, b) = g.k(idx[a], idx[b]);
  Vector target(3);
  target << 1.0, 0.0, 0.0;
  // Value of sum_j b_j k_j at point s is sum_j b_j k_js, so solve K^T b = e_1.
  Vector b = Matrix(k3.transpose()).fullPivLu().solve(target);
  double vnorm2 = gram_quadratic_form(k3, b);
  if (!(vnorm2 > 0))
    throw NumericError("capital_delta_interpolation: degenerate interpolation system");
  return 1.0 / (std::sqrt(g.diag(x)) * std::sqrt(vnorm2));
}

// Complete list of basepointed invariants: all pairwise deltas together with
// the angular invariants A_{0rs} for 0 < r < s.  These (n-1)^2 real numbers
// determine the basepoint-rescaled Gram matrix.
struct InvariantData {
  int n = 0;
  RealMatrix deltas;    // symmetric, zero diagonal
  RealMatrix angulars;  // entry (r, s), 0 < r < s; antisymmetric, zero elsewhere
};

inline InvariantData invariant_data(const GramSpace& g) {
  InvariantData out;
  out.n = g.n();
  out.deltas = delta_matrix(g);
  out.angulars = RealMatrix::Zero(out.n, out.n);
  for (int r = 1; r < out.n; ++r)
    for (int s = r + 1; s < out.n; ++s) {
      out.angulars(r, s) = angular_invariant(g, 0, r, s);
      out.angulars(s, r) = -out.angulars(r, s);
    }
  return out;
}

// Conjugation-invariant data: pairwise deltas plus Delta(0; j, k).  Requires
// the complete Pick property (the Delta dictionary presumes it).
struct SeparationData {
  int n = 0;
  RealMatrix deltas;
  RealMatrix delta_first;  // entry (j, k), 0 < j < k: Delta(0; j, k); symmetric
};

inline SeparationData separation_data(const GramSpace& g, const Tolerances& tol = {}) {
  CppReport rep = has_cpp(g, tol);
  if (!rep.cpp) {
    NotCppCertificate cert;
    cert.mq_index = rep.worst_r;
    cert.mq_eigenvalue = rep.worst_eigenvalue;
    cert.detail = "separation_data requires the complete Pick property";
    throw NotCppError(std::move(cert));
  }
  SeparationData out;
  out.n = g.n();
  out.deltas = delta_matrix(g);
  out.delta_first = RealMatrix::Zero(out.n, out.n);
  for (int j = 1; j < out.n; ++j)
    for (int k = j + 1; k < out.n; ++k) {
      out.delta_first(j, k) = capital_delta(g, 0, j, k, tol);
      out.delta_first(k, j) = out.delta_first(j, k);
    }
  return out;
}

}  // namespace hypick
