#pragma once

// Realization of an abstract Gram space as a configuration in complex
// hyperbolic space.  After rescaling the basepoint row and column to one,
// points are placed inductively: each new point splits into its footprint w
// on the span of the previous points, determined by the linear system
// <w, z_j> = 1 - 1/k_jm, and a height c >= 0 in a fresh coordinate with
// c^2 = (1 - 1/k_mm) - |w|^2.  The construction succeeds exactly when the
// space has the complete Pick property; a negative radicand (the Schur
// margin) or an inconsistent footprint system certifies the failure.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hypick/gram.hpp"
#include "hypick/hyperbolic.hpp"
#include "hypick/invariants.hpp"
#include "hypick/types.hpp"

namespace hypick {

struct EmbedResult {
  PointSet points;
  double residual = 0.0;  // relative defect of the reproduced Gram matrix
};

inline EmbedResult embed(const GramSpace& g, const Tolerances& tol = {}) {
  const int n = g.n();
  const Matrix b = basepoint_rescale(g, 0, tol).K();

  auto fail = [&](int step, double margin, const std::string& what) -> NotCppError {
    NotCppCertificate cert;
    cert.step = step;
    cert.height_margin = margin;
    cert.detail = what;
    CppReport rep = has_cpp(g, tol);
    if (!rep.cpp) {
      cert.mq_index = rep.worst_r;
      cert.mq_eigenvalue = rep.worst_eigenvalue;
    }
    return NotCppError(std::move(cert));
  };

  std::vector<Vector> pts;
  pts.emplace_back(Vector::Zero(0));
  int dim = 0;
  for (int m = 1; m < n; ++m) {
    // Footprint on the span of the points placed so far.  The first point is
    // the origin and contributes no constraint.
    Matrix a(m - 1, dim);
    Vector rhs(m - 1);
    for (int j = 1; j < m; ++j) {
      a.row(j - 1) = pts[j].adjoint();
      rhs(j - 1) = Complex(1.0, 0.0) - 1.0 / b(j, m);
    }
    Vector w;
    if (m == 1 || dim == 0) {
      w = Vector::Zero(dim);
    } else {
      Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
      cod.setThreshold(tol.rank);
      w = cod.solve(rhs);
    }
    if (m > 1) {
      double res = (a * w - rhs).norm();
      if (res > std::sqrt(tol.eq) * (1.0 + rhs.norm()))
        throw fail(m, -res, "inconsistent footprint system at step " + std::to_string(m + 1));
    }
    double radicand = (Complex(1.0, 0.0) - 1.0 / b(m, m)).real() - w.squaredNorm();
    if (radicand < -tol.eq)
      throw fail(m, radicand, "negative height radicand at step " + std::to_string(m + 1));
    double c = (radicand > tol.eq) ? std::sqrt(radicand) : 0.0;
    if (c > 0.0) {
      ++dim;
      for (auto& p : pts) {
        p.conservativeResize(dim);
        p(dim - 1) = 0.0;
      }
      Vector z(dim);
      z.head(dim - 1) = w;
      z(dim - 1) = c;
      pts.push_back(std::move(z));
    } else {
      pts.push_back(w);
    }
  }
  for (auto& p : pts)
    if (p.size() < dim) {
      auto old = p.size();
      p.conservativeResize(dim);
      p.tail(dim - old).setZero();
    }

  PointSet out = PointSet::validated(std::move(pts), dim, tol);
  double residual = 0.0;
  try {
    residual = matrix_rel_residual(b, gram_from_points(out, tol).K());
  } catch (const ValidationError& e) {
    throw NumericError(std::string("embed: nearly coincident points defeat the "
                                   "height threshold: ") + e.what());
  }
  if (residual > 100.0 * std::sqrt(tol.eq))
    throw NumericError("embed: reproduced Gram matrix deviates from input (residual " +
                       std::to_string(residual) + ")");
  return EmbedResult{std::move(out), residual};
}

// Reconstruct the basepoint-rescaled Gram matrix from the (n-1)^2 invariants
// { delta_ij } and { A_{0rs} } and realize it in the ball.  Throws
// Infeasible when the data is not realizable.
inline EmbedResult embed_from_invariants(const InvariantData& j, const Tolerances& tol = {}) {
  const int n = j.n;
  if (n < 1 || j.deltas.rows() != n || j.deltas.cols() != n ||
      j.angulars.rows() != n || j.angulars.cols() != n)
    throw ValidationError({"DimensionMismatch: invariant tables must be n x n"});
  for (int a = 0; a < n; ++a)
    for (int bdx = a + 1; bdx < n; ++bdx) {
      double d = j.deltas(a, bdx);
      if (!(d > 0.0) || !(d < 1.0))
        throw InfeasibleError("embed_from_invariants: deltas must lie in (0, 1)");
    }
  Matrix k = Matrix::Ones(n, n);
  for (int r = 1; r < n; ++r) {
    double d = j.deltas(0, r);
    k(r, r) = 1.0 / (1.0 - d * d);
  }
  for (int r = 1; r < n; ++r)
    for (int s = r + 1; s < n; ++s) {
      double drs = j.deltas(r, s);
      double mod = std::sqrt((1.0 - drs * drs) * k(r, r).real() * k(s, s).real());
      k(r, s) = std::polar(mod, j.angulars(r, s));
      k(s, r) = std::conj(k(r, s));
    }
  GramSpace g = [&]() {
    try {
      return GramSpace::validated(std::move(k), tol);
    } catch (const ValidationError& e) {
      throw InfeasibleError(std::string("embed_from_invariants: ") + e.what());
    }
  }();
  try {
    return embed(g, tol);
  } catch (const NotCppError& e) {
    throw InfeasibleError(std::string("embed_from_invariants: ") + e.what());
  }
}

}  // namespace hypick
