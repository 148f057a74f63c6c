#pragma once

// Multiplier algebra of a finite kernel space.  A symbol m acts by
// pointwise multiplication; its adjoint is diagonal in the kernel basis,
// so the multiplier norm is the largest generalized singular value of that
// diagonal with respect to the Gram inner product.  On complete Pick spaces
// the extremal norm-one multiplier vanishing at y and maximally real at x
// and the corresponding extremal kernel element have closed forms, and the
// matrix of extremal-multiplier values taken against a fixed basepoint (the
// Hartz data) encodes the space up to rescaling.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hypick/gram.hpp"
#include "hypick/invariants.hpp"
#include "hypick/types.hpp"

namespace hypick {

struct MultiplierNormInfo {
  double jitter = 0.0;  // diagonal regularization added to the Gram factor, if any
};

// Operator norm of multiplication by the symbol with the given values:
// with K-bar = L L*, the norm is sigma_max(L* diag(conj m) L^{-*}).
inline double multiplier_norm(const GramSpace& g, const std::vector<Complex>& values,
                              const Tolerances& tol = {},
                              MultiplierNormInfo* info = nullptr) {
  const int n = g.n();
  if (static_cast<int>(values.size()) != n)
    throw DomainError("multiplier_norm: symbol must have one value per point");
  Matrix kbar = g.K().conjugate();
  double jitter = 0.0;
  Eigen::LLT<Matrix> llt(kbar);
  if (llt.info() != Eigen::Success) {
    jitter = tol.psd * kbar.diagonal().real().maxCoeff();
    llt.compute(kbar + jitter * Matrix::Identity(n, n));
    if (llt.info() != Eigen::Success)
      throw NumericError("multiplier_norm: Cholesky factorization failed");
  }
  if (info) info->jitter = jitter;
  Matrix l = llt.matrixL();
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = std::conj(values[i]);
  // M = L* D L^{-*}: solve L* X = (L* D)^T-style via triangular solves.
  Matrix lstar = l.adjoint();
  Matrix m = lstar * d;
  // Right-multiply by L^{-*}: solve Y L* = M  <=>  L Y* = M*.
  Matrix y = l.triangularView<Eigen::Lower>().solve(m.adjoint()).adjoint();
  Eigen::JacobiSVD<Matrix> svd(y);
  return svd.singularValues()(0);
}

struct Multiplier {
  Vector values;  // symbol values on the configuration
};

// Extremal norm-one multiplier for the ordered pair (x, y): vanishes at y,
// takes the real value delta(x, y) at x,
//   m(x_i) = (1/delta_xy) (1 - k_xy k_{y i} / (k_yy k_{x i})).
// Requires the complete Pick property (otherwise the formula need not have
// multiplier norm one).
inline Multiplier extremal_multiplier(const GramSpace& g, int x, int y,
                                      const Tolerances& tol = {}) {
  if (x == y) throw DomainError("extremal_multiplier: points must be distinct");
  CppReport rep = has_cpp(g, tol);
  if (!rep.cpp) {
    NotCppCertificate cert;
    cert.mq_index = rep.worst_r;
    cert.mq_eigenvalue = rep.worst_eigenvalue;
    cert.detail = "extremal_multiplier requires the complete Pick property";
    throw NotCppError(std::move(cert));
  }
  const int n = g.n();
  double d = delta(g, x, y);
  Multiplier out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i)
    out.values(i) =
        (Complex(1.0, 0.0) - g.k(x, y) * g.k(y, i) / (g.k(y, y) * g.k(x, i))) / d;
  return out;
}

struct KernelElement {
  Vector coefficients;  // expansion in the kernel basis
  Vector values;        // resulting function values
  double norm = 0.0;
};

// Extremal kernel element for (x, y): the normalized projection of k_x away
// from k_y,  h = (k_x - (k_xy / k_yy) k_y) / (||k_x|| delta_xy).
// Unit norm; vanishes at y; h(x) = ||k_x|| delta_xy.
inline KernelElement extremal_kernel(const GramSpace& g, int x, int y) {
  if (x == y) throw DomainError("extremal_kernel: points must be distinct");
  const int n = g.n();
  double d = delta(g, x, y);
  if (!(d > 0)) throw DomainError("extremal_kernel: coincident kernels");
  double nx = std::sqrt(g.diag(x));
  KernelElement out;
  out.coefficients = Vector::Zero(n);
  out.coefficients(x) = 1.0 / (nx * d);
  out.coefficients(y) = -g.k(x, y) / (g.k(y, y) * nx * d);
  out.values.resize(n);
  for (int i = 0; i < n; ++i)
    out.values(i) = (g.k(x, i) - g.k(x, y) * g.k(y, i) / g.k(y, y)) / (nx * d);
  out.norm = std::sqrt(std::max(0.0, gram_quadratic_form(g.K(), out.coefficients)));
  return out;
}

// Hartz data: after rescaling to the basepoint, row j (j = 1..n-1) lists the
// values of the extremal multiplier for (x_j, x_0) at x_1..x_{n-1}:
//   e_{jk} = (1 - 1/k_jj)^{-1/2} (1 - 1/k_jk).
// The diagonal is real: e_jj = delta_0j.  All moduli are at most one.
inline Matrix hartz_data(const GramSpace& g, const Tolerances& tol = {}) {
  CppReport rep = has_cpp(g, tol);
  if (!rep.cpp) {
    NotCppCertificate cert;
    cert.mq_index = rep.worst_r;
    cert.mq_eigenvalue = rep.worst_eigenvalue;
    cert.detail = "hartz_data requires the complete Pick property";
    throw NotCppError(std::move(cert));
  }
  const int n = g.n();
  if (n < 2) throw DomainError("hartz_data: need at least two points");
  Matrix b = basepoint_rescale(g, 0, tol).K();
  Matrix e(n - 1, n - 1);
  for (int j = 1; j < n; ++j) {
    double djj = std::sqrt((Complex(1.0, 0.0) - 1.0 / b(j, j)).real());
    for (int k = 1; k < n; ++k)
      e(j - 1, k - 1) = (Complex(1.0, 0.0) - 1.0 / b(j, k)) / djj;
  }
  return e;
}

// Inverse of hartz_data up to rescaling: k_0* = 1, k_jj = 1/(1 - e_jj^2),
// k_jk = 1/(1 - e_jj e_jk).  The reconstructed matrix is validated, so
// inconsistent data (non-Hermitian or non-positive) is rejected.
inline GramSpace reconstruct_from_hartz(const Matrix& e, const Tolerances& tol = {}) {
  const int m = static_cast<int>(e.rows());
  if (m == 0 || e.cols() != m)
    throw ValidationError({"DimensionMismatch: Hartz data must be square and nonempty"});
  const int n = m + 1;
  Matrix k = Matrix::Ones(n, n);
  for (int j = 1; j < n; ++j) {
    Complex ejj = e(j - 1, j - 1);
    if (std::abs(ejj.imag()) > tol.eq || !(ejj.real() > 0.0) || !(ejj.real() < 1.0))
      throw InfeasibleError("reconstruct_from_hartz: e_jj must be real in (0, 1)");
    for (int kk = 1; kk < n; ++kk)
      k(j, kk) = 1.0 / (Complex(1.0, 0.0) - ejj.real() * e(j - 1, kk - 1));
  }
  try {
    return GramSpace::validated(std::move(k), tol);
  } catch (const ValidationError& err) {
    throw InfeasibleError(std::string("reconstruct_from_hartz: ") + err.what());
  }
}

// Upper bound 2^((n^2 - 3n)/2) for the number of congruence classes (up to
// global conjugation) sharing the same delta / Delta separation data.
inline double ambiguity_bound(int n) {
  if (n < 3) throw DomainError("ambiguity_bound: need at least three points");
  return std::ldexp(1.0, (n * n - 3 * n) / 2);
}

}  // namespace hypick
