#pragma once

// Orthogonal spaces and the Blaschke rescaling.  A space is orthogonal when
// K^t K = I, i.e. the conjugated kernel basis is biorthogonal to the kernel
// basis itself; for disk configurations the rescaling by conjugated inverse
// square roots of the derivative of the Blaschke product vanishing on the
// configuration always produces an orthogonal Gram matrix.  A space is
// r-orthogonal when some rescaling of it is orthogonal; for three points
// this is decided by a single determinant, equivalently by LF_123 = delta_13.

#include <cmath>
#include <string>
#include <vector>

#include "hypick/gram.hpp"
#include "hypick/invariants.hpp"
#include "hypick/types.hpp"

namespace hypick {

struct OrthogonalityReport {
  bool orthogonal = false;
  double residual_tk = 0.0;  // ||K^t K - I||_F
  double residual_kt = 0.0;  // ||K K^t - I||_F, the biorthogonality form
};

inline OrthogonalityReport is_orthogonal(const GramSpace& g, const Tolerances& tol = {}) {
  const int n = g.n();
  Matrix id = Matrix::Identity(n, n);
  OrthogonalityReport rep;
  rep.residual_tk = (g.K().transpose() * g.K() - id).norm();
  rep.residual_kt = (g.K() * g.K().transpose() - id).norm();
  double bound = tol.eq * n * (1.0 + g.K().norm());
  rep.orthogonal = rep.residual_tk <= bound && rep.residual_kt <= bound;
  return rep;
}

// Finite Blaschke product with the given zeros (unimodular front factor
// fixed to one): the factor for zero a is (z - a) / (1 - conj(a) z).
struct BlaschkeProduct {
  std::vector<Complex> zeros;
};

inline Complex blaschke_eval(const BlaschkeProduct& b, Complex z) {
  Complex v(1.0, 0.0);
  for (Complex a : b.zeros) v *= (z - a) / (Complex(1.0, 0.0) - std::conj(a) * z);
  return v;
}

// Derivative at the i-th zero in closed form:
//   theta'(x_i) = (1 - |x_i|^2)^{-1} prod_{j != i} (x_i - x_j) / (1 - conj(x_j) x_i).
inline Complex blaschke_derivative(const BlaschkeProduct& b, int i) {
  const int n = static_cast<int>(b.zeros.size());
  if (i < 0 || i >= n) throw DomainError("blaschke_derivative: index out of range");
  Complex x = b.zeros[i];
  if (!(std::abs(x) < 1.0)) throw DomainError("blaschke_derivative: zero outside the disk");
  Complex v = 1.0 / Complex(1.0 - std::norm(x), 0.0);
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    Complex y = b.zeros[j];
    v *= (x - y) / (Complex(1.0, 0.0) - std::conj(y) * x);
  }
  return v;
}

// Rescale the Szego Gram matrix of a disk configuration by
// gamma_i = conj(theta'(x_i)^{-1/2}); the result is always orthogonal.
inline GramSpace orthogonal_rescaling(const std::vector<Complex>& points,
                                      const Tolerances& tol = {}) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw DomainError("orthogonal_rescaling: need at least one point");
  for (int i = 0; i < n; ++i) {
    if (!(std::abs(points[i]) < 1.0 - tol.zero))
      throw DomainError("orthogonal_rescaling: points must lie in the open disk");
    for (int j = i + 1; j < n; ++j)
      if (std::abs(points[i] - points[j]) <= tol.zero)
        throw DomainError("orthogonal_rescaling: points must be distinct");
  }
  BlaschkeProduct theta{points};
  std::vector<Complex> gamma(n);
  for (int i = 0; i < n; ++i) {
    Complex der = blaschke_derivative(theta, i);
    gamma[i] = std::conj(Complex(1.0, 0.0) / std::sqrt(der));
  }
  Matrix k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      k(i, j) = gamma[i] * std::conj(gamma[j]) /
                (Complex(1.0, 0.0) - points[j] * std::conj(points[i]));
  return GramSpace::validated(std::move(k), tol);
}

// Three-point r-orthogonality: after basepoint rescaling the existence of an
// orthogonalizing rescaling reduces to the vanishing of a single 3 x 3
// determinant, equivalently to LF_123 = delta_13.  Both routes are computed
// and must agree.
inline bool is_r_orthogonal_3d(const GramSpace& g, const Tolerances& tol = {}) {
  if (g.n() != 3) throw DomainError("is_r_orthogonal_3d: need a 3-point space");
  GramSpace b = basepoint_rescale(g, 0, tol);
  Complex k22 = b.k(1, 1), k23 = b.k(1, 2), k32 = b.k(2, 1), k33 = b.k(2, 2);
  Matrix m(3, 3);
  m << Complex(1, 0), k22, k23,
       Complex(1, 0), k32, k33,
       Complex(1, 0), k22 * k32, k23 * k33;
  double scale = 1.0;
  for (int r = 0; r < 3; ++r) scale = std::max(scale, m.row(r).norm());
  double det_resid = std::abs(m.determinant()) / (scale * scale * scale);
  bool by_det = det_resid <= tol.eq;

  double gap = std::abs(lf(g, 0, 1, 2) - delta(g, 0, 2));
  bool by_lf = gap <= std::sqrt(tol.eq);

  if (by_det != by_lf) {
    // The two certificates are equivalent; tolerate only boundary scatter.
    bool det_boundary = det_resid <= 100.0 * tol.eq;
    bool lf_boundary = gap <= 100.0 * std::sqrt(tol.eq);
    if (!(det_boundary || lf_boundary))
      throw NumericError("is_r_orthogonal_3d: determinant and footprint criteria disagree");
  }
  return by_det;
}

}  // namespace hypick
