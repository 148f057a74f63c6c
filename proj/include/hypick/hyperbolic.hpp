#pragma once

// Finite configurations in the open unit ball of C^d with its pseudo-
// hyperbolic metric rho(z, w) = |phi_z(w)|, where phi_a is the standard
// involutive automorphism exchanging a and 0.  Every automorphism of the
// ball factors as a unitary following an involution, and the kernel
// k_z(w) = (1 - <w, z>)^{-1} transforms under automorphisms by a rescaling,
// so all Gram invariants are automorphism invariants of configurations.
//
// Inner product convention: <z, w> = sum_l z_l conj(w_l), and the Gram
// matrix of a configuration is k_ij = (1 - <x_j, x_i>)^{-1}.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hypick/gram.hpp"
#include "hypick/types.hpp"

namespace hypick {

inline Complex ball_inner(const Vector& z, const Vector& w) {
  // <z, w>; Eigen's dot conjugates its first argument.
  return w.dot(z);
}

// An ordered list of points in the open unit ball of C^d.  d = 0 is allowed
// and describes the one-point ball.
class PointSet {
 public:
  static PointSet validated(std::vector<Vector> pts, int d, const Tolerances& tol = {}) {
    for (const auto& p : pts) {
      if (p.size() != d)
        throw ValidationError({"DimensionMismatch: point size differs from d"});
      if (!(p.norm() < 1.0 - tol.zero))
        throw ValidationError({"OutOfBall: point norm must be < 1"});
    }
    if (pts.empty()) throw ValidationError({"Empty: need at least one point"});
    return PointSet(std::move(pts), d);
  }

  int d() const { return d_; }
  int size() const { return static_cast<int>(pts_.size()); }
  const Vector& point(int i) const { return pts_.at(i); }
  const std::vector<Vector>& points() const { return pts_; }

 private:
  PointSet(std::vector<Vector> pts, int d) : pts_(std::move(pts)), d_(d) {}
  std::vector<Vector> pts_;
  int d_ = 0;
};

// phi_a: the involution of the ball exchanging 0 and a,
//   phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>),
// with P_a the projection onto C a, Q_a = I - P_a, s_a = sqrt(1 - |a|^2).
// For a = 0 the identity is returned.
inline Vector mobius_involution_apply(const Vector& a, const Vector& z) {
  if (a.size() != z.size())
    throw DomainError("involution: dimension mismatch");
  double a2 = a.squaredNorm();
  if (a2 == 0.0) return z;
  if (!(a2 < 1.0)) throw DomainError("involution: center must lie in the open ball");
  Complex za = ball_inner(z, a);
  Vector pz = (za / a2) * a;
  Vector qz = z - pz;
  double s = std::sqrt(1.0 - a2);
  Complex denom = Complex(1.0, 0.0) - za;
  return (a - pz - s * qz) / denom;
}

// rho(z, w) = |phi_z(w)|, the pseudohyperbolic metric on the ball.
inline double rho(const Vector& z, const Vector& w) {
  if (z.size() != w.size()) throw DomainError("rho: dimension mismatch");
  if (!(z.norm() < 1.0) || !(w.norm() < 1.0))
    throw DomainError("rho: points must lie in the open ball");
  if (z.size() == 0) return 0.0;
  if (z.squaredNorm() == 0.0) return w.norm();
  return mobius_involution_apply(z, w).norm();
}

// beta = atanh(rho), the length metric of the ball (additive along
// geodesics through the origin).
inline double beta_distance(const Vector& z, const Vector& w) {
  return std::atanh(rho(z, w));
}

// z -> U phi_a(z); every automorphism of the ball has this form.
struct BallAutomorphism {
  Vector a;   // involution center
  Matrix u;   // unitary applied after the involution

  static BallAutomorphism validated(Vector a, Matrix u, const Tolerances& tol = {}) {
    const auto d = a.size();
    if (u.rows() != d || u.cols() != d)
      throw ValidationError({"DimensionMismatch: unitary size differs from center"});
    if (!(a.norm() < 1.0 - tol.zero))
      throw ValidationError({"OutOfBall: center must lie in the open ball"});
    Matrix should_be_id = u.adjoint() * u;
    if (!matrix_close(Matrix::Identity(d, d), should_be_id, tol.eq))
      throw ValidationError({"NotUnitary: u* u differs from the identity"});
    return BallAutomorphism{std::move(a), std::move(u)};
  }
};

inline BallAutomorphism involution(Vector a, const Tolerances& tol = {}) {
  const auto d = a.size();
  return BallAutomorphism::validated(std::move(a), Matrix::Identity(d, d), tol);
}

inline Vector apply_point(const BallAutomorphism& f, const Vector& z) {
  Vector w = f.u * mobius_involution_apply(f.a, z);
  if (!(w.norm() < 1.0))
    throw NumericError("apply: image left the ball (numeric drift)");
  return w;
}

inline PointSet apply(const BallAutomorphism& f, const PointSet& x,
                      const Tolerances& tol = {}) {
  std::vector<Vector> out;
  out.reserve(x.size());
  for (const auto& p : x.points()) out.push_back(apply_point(f, p));
  return PointSet::validated(std::move(out), x.d(), tol);
}

// Gram matrix k_ij = (1 - <x_j, x_i>)^{-1} of the configuration.  Duplicate
// points are rejected by validation (proportional rows / loss of positive
// definiteness); entries can never vanish for ball points.
inline GramSpace gram_from_points(const PointSet& x, const Tolerances& tol = {}) {
  const int n = x.size();
  Matrix k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      k(i, j) = 1.0 / (Complex(1.0, 0.0) - ball_inner(x.point(j), x.point(i)));
  return GramSpace::validated(std::move(k), tol);
}

struct NormalFormResult {
  PointSet points;       // the normal form, trimmed to its span
  BallAutomorphism map;  // automorphism of the original ambient ball realizing it
  double condition;      // singular-value ratio of the coordinate stack (1-point: 1)
};

// Canonical representative of a configuration modulo automorphisms: the
// first point is moved to the origin and the remaining points are expressed
// in the orthonormal frame produced by Gram-Schmidt over their successive
// residuals, so coordinates are triangular, each new coordinate appears with
// a real positive pivot, and the ambient dimension equals the span's.
inline NormalFormResult normal_form(const PointSet& x, const Tolerances& tol = {}) {
  const int n = x.size();
  const int d = x.d();
  std::vector<Vector> y;
  y.reserve(n);
  for (const auto& p : x.points()) y.push_back(mobius_involution_apply(x.point(0), p));

  Matrix q(d, 0);  // orthonormal columns spanning the processed points
  double scale = 0.0;
  for (const auto& p : y) scale = std::max(scale, p.norm());
  for (int i = 1; i < n; ++i) {
    Vector r = y[i];
    if (q.cols() > 0) r -= q * (q.adjoint() * y[i]);
    if (r.norm() > tol.rank * std::max(1.0, scale)) {
      q.conservativeResize(Eigen::NoChange, q.cols() + 1);
      q.col(q.cols() - 1) = r / r.norm();
    }
  }
  const int rank = static_cast<int>(q.cols());

  std::vector<Vector> coords;
  coords.reserve(n);
  for (const auto& p : y) {
    Vector c = (rank > 0) ? Vector(q.adjoint() * p) : Vector(0);
    coords.push_back(std::move(c));
  }
  coords[0] = Vector::Zero(rank);

  double condition = 1.0;
  if (rank > 0 && n > 1) {
    Matrix stack(n - 1, rank);
    for (int i = 1; i < n; ++i) stack.row(i - 1) = coords[i].transpose();
    Eigen::JacobiSVD<Matrix> svd(stack);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    condition = (smin > 0) ? svd.singularValues()(0) / smin : 1.0 / tol.zero;
  }

  // Complete q to a full unitary of the original ambient dimension.
  Matrix qfull = Matrix::Identity(d, d);
  if (d > 0) {
    Matrix basis = Matrix::Identity(d, d);
    basis.leftCols(rank) = q;
    Eigen::HouseholderQR<Matrix> qr(basis);
    Matrix qq = qr.householderQ();
    // Householder may flip signs of the leading columns; restore our q.
    qq.leftCols(rank) = q;
    // Re-orthogonalize the completion against q for safety.
    for (int c = rank; c < d; ++c) {
      Vector v = qq.col(c);
      v -= qq.leftCols(c) * (qq.leftCols(c).adjoint() * v);
      double nv = v.norm();
      if (nv > 0) qq.col(c) = v / nv;
    }
    qfull = qq;
  }
  BallAutomorphism map = BallAutomorphism::validated(x.point(0), qfull.adjoint(), tol);

  PointSet pts = PointSet::validated(std::move(coords), rank, tol);
  return NormalFormResult{std::move(pts), std::move(map), condition};
}

// Configurations are congruent iff an automorphism carries one onto the
// other respecting the ordering, iff their normal forms coincide.
inline bool congruent(const PointSet& x, const PointSet& yy, const Tolerances& tol = {}) {
  if (x.size() != yy.size()) return false;
  NormalFormResult a = normal_form(x, tol);
  NormalFormResult b = normal_form(yy, tol);
  if (a.points.d() != b.points.d()) return false;
  const int n = x.size(), rank = a.points.d();
  Matrix ma(n, rank), mb(n, rank);
  for (int i = 0; i < n; ++i) {
    ma.row(i) = a.points.point(i).transpose();
    mb.row(i) = b.points.point(i).transpose();
  }
  return matrix_close(ma, mb, tol.eq);
}

}  // namespace hypick
