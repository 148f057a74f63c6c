#pragma once

// Finite reproducing-kernel spaces presented by their Gram matrix
// k_ij = <k_i, k_j>, together with the rescaling calculus: a rescaling
// multiplies each kernel by a nonzero scalar and possibly relabels the
// points, so Gram matrices transform by a diagonal congruence composed
// with a symmetric permutation.  Two canonical representatives are used
// throughout: the basepoint rescaling (row and column of the basepoint
// identically one) and the normalized rescaling (unit diagonal, first
// row real nonnegative).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hypick/types.hpp"

namespace hypick {

enum class Provenance { None, TreeKernel };

namespace detail {

inline double hermitian_min_eigenvalue(const Matrix& m, double* max_out = nullptr) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (max_out) *max_out = ev(ev.size() - 1);
  return ev(0);
}

}  // namespace detail

// Structural checks on a candidate Gram matrix.  Returns a list of issues;
// empty means the matrix is acceptable.  Irreducibility means no vanishing
// entry and no two rows proportional; the latter is also implied by strict
// positive definiteness but is reported separately for diagnostics.
inline std::vector<std::string> gram_issues(const Matrix& k, const Tolerances& tol = {},
                                            bool allow_reducible = false) {
  std::vector<std::string> issues;
  const Eigen::Index n = k.rows();
  if (n == 0 || k.cols() != n) {
    issues.push_back("NotSquare: matrix must be square and nonempty");
    return issues;
  }
  const double scale = k.cwiseAbs().maxCoeff();
  if (!(scale > 0) || !k.allFinite()) {
    issues.push_back("NotFinite: entries must be finite and not all zero");
    return issues;
  }
  if ((k - k.adjoint()).norm() > tol.eq * (1.0 + k.norm()))
    issues.push_back("NotHermitian: k differs from its conjugate transpose");
  Matrix h = 0.5 * (k + k.adjoint());
  double lmax = 0.0;
  double lmin = detail::hermitian_min_eigenvalue(h, &lmax);
  if (!(lmin > tol.psd * std::max(lmax, 0.0)))
    issues.push_back("NotPositiveDefinite: smallest eigenvalue " + std::to_string(lmin));
  if (!allow_reducible) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (std::abs(k(i, j)) <= tol.zero * std::max(1.0, scale)) {
          issues.push_back("Reducible: vanishing entry at (" + std::to_string(i + 1) +
                           "," + std::to_string(j + 1) + ")");
          i = n;
          break;
        }
    for (Eigen::Index i = 0; i < n && n > 1; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        Matrix two(2, n);
        two.row(0) = k.row(i);
        two.row(1) = k.row(j);
        Eigen::JacobiSVD<Matrix> svd(two);
        if (svd.singularValues()(1) <= tol.rank * svd.singularValues()(0)) {
          issues.push_back("Reducible: rows " + std::to_string(i + 1) + " and " +
                           std::to_string(j + 1) + " are proportional");
          i = n;
          break;
        }
      }
  }
  return issues;
}

// An irreducible finite-dimensional space of functions presented by its Gram
// matrix.  Instances are validated at construction; provenance records
// whether the matrix was produced by a tree kernel (required by the
// entrywise-power operation, which is specific to that class).
class GramSpace {
 public:
  static GramSpace validated(Matrix k, const Tolerances& tol = {},
                             std::vector<std::string> labels = {},
                             Provenance prov = Provenance::None) {
    auto issues = gram_issues(k, tol, /*allow_reducible=*/false);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return GramSpace(std::move(k), std::move(labels), prov, {});
  }

  // Same validation but a reducible (zero-entry) result is recorded as a
  // warning instead of rejected; needed for duals of orthogonal-ish spaces.
  static GramSpace validated_allow_reducible(Matrix k, const Tolerances& tol = {},
                                             std::vector<std::string> labels = {},
                                             Provenance prov = Provenance::None) {
    auto hard = gram_issues(k, tol, /*allow_reducible=*/true);
    if (!hard.empty()) throw ValidationError(std::move(hard));
    auto soft = gram_issues(k, tol, /*allow_reducible=*/false);
    return GramSpace(std::move(k), std::move(labels), prov, std::move(soft));
  }

  int n() const { return static_cast<int>(k_.rows()); }
  const Matrix& K() const { return k_; }
  Complex k(int i, int j) const { return k_(i, j); }
  double diag(int i) const { return k_(i, i).real(); }

  // Normalized entry k_ij / sqrt(k_ii k_jj); modulus at most one.
  Complex khat(int i, int j) const {
    return k_(i, j) / std::sqrt(diag(i) * diag(j));
  }

  const std::vector<std::string>& labels() const { return labels_; }
  Provenance provenance() const { return prov_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  GramSpace(Matrix k, std::vector<std::string> labels, Provenance prov,
            std::vector<std::string> warnings)
      : k_(std::move(k)), labels_(std::move(labels)), prov_(prov),
        warnings_(std::move(warnings)) {}

  Matrix k_;
  std::vector<std::string> labels_;
  Provenance prov_;
  std::vector<std::string> warnings_;
};

// Gram matrix of the rescaled space whose i-th kernel is gamma_i times the
// perm[i]-th original kernel: k'_ij = gamma_i conj(gamma_j) k_{perm[i] perm[j]}.
// An empty perm means the identity relabeling.
inline GramSpace rescale(const GramSpace& g, const std::vector<Complex>& gamma,
                         const std::vector<int>& perm = {},
                         const Tolerances& tol = {}) {
  const int n = g.n();
  if (static_cast<int>(gamma.size()) != n)
    throw ValidationError({"DimensionMismatch: gamma must have one entry per point"});
  for (const auto& c : gamma)
    if (!(std::abs(c) > 0)) throw DomainError("rescale: gamma entries must be nonzero");
  std::vector<int> p(n);
  if (perm.empty()) {
    std::iota(p.begin(), p.end(), 0);
  } else {
    if (static_cast<int>(perm.size()) != n)
      throw ValidationError({"DimensionMismatch: perm must have length n"});
    std::vector<bool> seen(n, false);
    for (int v : perm) {
      if (v < 0 || v >= n || seen[v]) throw DomainError("rescale: perm is not a permutation");
      seen[v] = true;
    }
    p = perm;
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = gamma[i] * std::conj(gamma[j]) * g.k(p[i], p[j]);
  std::vector<std::string> labels;
  if (!g.labels().empty()) {
    labels.resize(n);
    for (int i = 0; i < n; ++i) labels[i] = g.labels()[p[i]];
  }
  return GramSpace::validated(std::move(out), tol, std::move(labels), g.provenance());
}

// Canonical representative with row and column b identically one:
// k'_ij = k_ij k_bb / (k_ib k_bj).  Idempotent; fixed points of the other
// entries characterize the rescaling-equivalence class.
inline GramSpace basepoint_rescale(const GramSpace& g, int b = 0,
                                   const Tolerances& tol = {}) {
  const int n = g.n();
  if (b < 0 || b >= n) throw DomainError("basepoint_rescale: index out of range");
  Matrix out(n, n);
  const Complex kbb = g.k(b, b);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = g.k(i, j) * kbb / (g.k(i, b) * g.k(b, j));
  for (int i = 0; i < n; ++i) {
    out(i, b) = 1.0;
    out(b, i) = 1.0;
  }
  return GramSpace::validated(std::move(out), tol, g.labels(), g.provenance());
}

// Canonical representative with unit diagonal and first row real nonnegative.
inline GramSpace normalized_rescale(const GramSpace& g, const Tolerances& tol = {}) {
  const int n = g.n();
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = g.khat(i, j);
  std::vector<Complex> u(n);
  for (int j = 0; j < n; ++j) {
    Complex e = out(0, j);
    u[j] = (std::abs(e) > 0) ? e / std::abs(e) : Complex(1.0, 0.0);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = u[i] * std::conj(u[j]) * out(i, j);
  for (int j = 0; j < n; ++j) {
    out(0, j) = Complex(std::abs(out(0, j)), 0.0);
    out(j, 0) = out(0, j);
  }
  out(0, 0) = 1.0;
  return GramSpace::validated(std::move(out), tol, g.labels(), g.provenance());
}

struct EquivalenceResult {
  bool equivalent = false;
  std::vector<int> relabeling;  // perm applied to the second space; empty = identity
};

// Two spaces are rescalings of one another iff their basepoint-rescaled Gram
// matrices coincide (after matching labels).  The relabeling search is
// exhaustive and therefore restricted to n <= 8; beyond that, identity
// labeling is assumed and the caller must supply any nontrivial matching.
inline EquivalenceResult rescaling_equivalent(const GramSpace& g1, const GramSpace& g2,
                                              const Tolerances& tol = {}) {
  if (g1.n() != g2.n()) return {};
  const int n = g1.n();
  const Matrix b1 = basepoint_rescale(g1, 0, tol).K();
  if (matrix_close(b1, basepoint_rescale(g2, 0, tol).K(), tol.eq)) return {true, {}};
  if (n > 8) return {};
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    Matrix rel(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rel(i, j) = g2.k(perm[i], perm[j]);
    GramSpace relabeled = GramSpace::validated(std::move(rel), tol);
    if (matrix_close(b1, basepoint_rescale(relabeled, 0, tol).K(), tol.eq))
      return {true, perm};
  }
  return {};
}

// Entrywise conjugate (= transpose) Gram: the space of conjugated functions.
inline GramSpace conjugate_space(const GramSpace& g, const Tolerances& tol = {}) {
  Matrix out = g.K().transpose();
  return GramSpace::validated(std::move(out), tol, g.labels(), g.provenance());
}

// Inverse Gram: the dual basis { k^i } of { k_i } spans the same space with
// Gram K^{-1}.  The result can fail irreducibility (zero entries), which is
// reported as a warning rather than an error.
inline GramSpace dualized_space(const GramSpace& g, const Tolerances& tol = {}) {
  double lmax = 0.0;
  Matrix h = 0.5 * (g.K() + g.K().adjoint());
  double lmin = detail::hermitian_min_eigenvalue(h, &lmax);
  if (!(lmin > 0) || lmax / lmin > 1.0 / tol.rank)
    throw NumericError("dualized_space: Gram matrix is ill conditioned");
  Matrix inv = g.K().inverse();
  inv = Matrix(0.5 * (inv + inv.adjoint()));
  return GramSpace::validated_allow_reducible(std::move(inv), tol, {}, Provenance::None);
}

}  // namespace hypick
