#pragma once

// Kernels on rooted trees.  An increasing vertex weight Omega with
// Omega(root) = 1 induces the positive kernel K(x, y) = Omega(x meet y),
// which always has the complete Pick property; the spine embedding realizes
// it in a ball with one coordinate per vertex.  Summation by parts converts
// the double sum over the configuration into subtree sums and yields the
// two Sobolev-type norm formulas.  The Gromov kernel Lambda^{d(o, x meet y)}
// and the distance kernel Gamma^{d(x, y)} are instances up to rescaling.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hypick/gram.hpp"
#include "hypick/hyperbolic.hpp"
#include "hypick/types.hpp"

namespace hypick {

class RootedTree {
 public:
  // parent[v] is the parent of v, -1 for the root; edge_len[v] is the length
  // of the edge from v to its parent (ignored at the root, defaulted to 1).
  static RootedTree validated(std::vector<int> parent, std::vector<double> edge_len = {}) {
    const int n = static_cast<int>(parent.size());
    if (n == 0) throw ValidationError({"Empty: tree needs at least one vertex"});
    if (edge_len.empty()) edge_len.assign(n, 1.0);
    if (static_cast<int>(edge_len.size()) != n)
      throw ValidationError({"DimensionMismatch: edge_len must match vertex count"});
    int root = -1;
    for (int v = 0; v < n; ++v) {
      if (parent[v] == -1) {
        if (root != -1) throw ValidationError({"NotATree: multiple roots"});
        root = v;
      } else if (parent[v] < 0 || parent[v] >= n || parent[v] == v) {
        throw ValidationError({"NotATree: invalid parent index"});
      }
      if (parent[v] != -1 && !(edge_len[v] > 0))
        throw ValidationError({"NotATree: edge lengths must be positive"});
    }
    if (root == -1) throw ValidationError({"NotATree: no root"});
    // Acyclicity: every vertex must reach the root in at most n steps.
    for (int v = 0; v < n; ++v) {
      int u = v, steps = 0;
      while (u != root) {
        u = parent[u];
        if (++steps > n) throw ValidationError({"NotATree: cycle detected"});
      }
    }
    return RootedTree(std::move(parent), std::move(edge_len), root);
  }

  int size() const { return static_cast<int>(parent_.size()); }
  int root() const { return root_; }
  int parent(int v) const { return parent_.at(v); }
  double edge_length(int v) const { return edge_len_.at(v); }
  const std::vector<int>& parents() const { return parent_; }
  const std::vector<double>& edge_lengths() const { return edge_len_; }

  // Depth in edge count.
  int depth(int v) const {
    int d = 0;
    while (v != root_) {
      v = parent_[v];
      ++d;
    }
    return d;
  }

  // Distance to the root along edge lengths.
  double depth_length(int v) const {
    double d = 0.0;
    while (v != root_) {
      d += edge_len_[v];
      v = parent_[v];
    }
    return d;
  }

 private:
  RootedTree(std::vector<int> parent, std::vector<double> edge_len, int root)
      : parent_(std::move(parent)), edge_len_(std::move(edge_len)), root_(root) {}
  std::vector<int> parent_;
  std::vector<double> edge_len_;
  int root_;
};

// Deepest common ancestor of x and y.
inline int meet(const RootedTree& t, int x, int y) {
  if (x < 0 || x >= t.size() || y < 0 || y >= t.size())
    throw DomainError("meet: vertex out of range");
  int dx = t.depth(x), dy = t.depth(y);
  while (dx > dy) { x = t.parent(x); --dx; }
  while (dy > dx) { y = t.parent(y); --dy; }
  while (x != y) { x = t.parent(x); y = t.parent(y); }
  return x;
}

inline double tree_distance(const RootedTree& t, int x, int y) {
  return t.depth_length(x) + t.depth_length(y) - 2.0 * t.depth_length(meet(t, x, y));
}

// Increasing vertex weight with weight one at the root.
class TreeWeight {
 public:
  static TreeWeight validated(const RootedTree& t, std::vector<double> omega) {
    const int n = t.size();
    if (static_cast<int>(omega.size()) != n)
      throw ValidationError({"DimensionMismatch: weight must match vertex count"});
    if (std::abs(omega[t.root()] - 1.0) > 1e-14)
      throw ValidationError({"NotNormalized: weight at the root must be 1"});
    for (int v = 0; v < n; ++v)
      if (v != t.root() && !(omega[v] > omega[t.parent(v)]))
        throw ValidationError({"NotMonotone: weight must strictly increase away from the root"});
    return TreeWeight(std::move(omega));
  }

  // Build from positive increments (value minus parent value).
  static TreeWeight from_increments(const RootedTree& t, const std::vector<double>& inc) {
    const int n = t.size();
    if (static_cast<int>(inc.size()) != n)
      throw ValidationError({"DimensionMismatch: increment list must match vertex count"});
    std::vector<double> omega(n, 0.0);
    std::vector<int> order = top_down_order(t);
    for (int v : order) omega[v] = (v == t.root()) ? 1.0 : omega[t.parent(v)] + inc[v];
    return validated(t, std::move(omega));
  }

  double total(int v) const { return omega_.at(v); }
  const std::vector<double>& totals() const { return omega_; }

  static std::vector<int> top_down_order(const RootedTree& t) {
    std::vector<int> order(t.size());
    std::vector<int> idx(t.size());
    for (int v = 0; v < t.size(); ++v) {
      order[v] = v;
      idx[v] = t.depth(v);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return idx[a] < idx[b]; });
    return order;
  }

 private:
  explicit TreeWeight(std::vector<double> omega) : omega_(std::move(omega)) {}
  std::vector<double> omega_;
};

// K(x, y) = Omega(x meet y); flagged as a tree kernel so that entrywise
// powers are admitted.
inline GramSpace tree_kernel(const RootedTree& t, const TreeWeight& w,
                             const Tolerances& tol = {}) {
  const int n = t.size();
  if (static_cast<int>(w.totals().size()) != n)
    throw ValidationError({"DimensionMismatch: weight does not match tree"});
  Matrix k(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) k(x, y) = Complex(w.total(meet(t, x, y)), 0.0);
  return GramSpace::validated(std::move(k), tol, {}, Provenance::TreeKernel);
}

// Phi(root) = 0, Phi(z) = Phi(parent) + c(z) e_z with
// c(z)^2 = 1/Omega(parent) - 1/Omega(z); one coordinate per vertex, and
// <Phi(x), Phi(y)> = 1 - 1/Omega(x meet y), so the induced Gram matrix is
// exactly the tree kernel.
inline PointSet spine_embedding(const RootedTree& t, const TreeWeight& w,
                                const Tolerances& tol = {}) {
  const int n = t.size();
  std::vector<Vector> pts(n);
  std::vector<int> order = TreeWeight::top_down_order(t);
  for (int v : order) {
    if (v == t.root()) {
      pts[v] = Vector::Zero(n);
    } else {
      double c2 = 1.0 / w.total(t.parent(v)) - 1.0 / w.total(v);
      pts[v] = pts[t.parent(v)];
      pts[v](v) = std::sqrt(std::max(0.0, c2));
    }
  }
  return PointSet::validated(std::move(pts), n, tol);
}

// Subtree sums I* f(z) = sum over the subtree rooted at z.
inline std::vector<Complex> subtree_sums(const RootedTree& t, const std::vector<Complex>& f) {
  const int n = t.size();
  if (static_cast<int>(f.size()) != n)
    throw DomainError("subtree_sums: function must match vertex count");
  std::vector<Complex> s(f);
  std::vector<int> order = TreeWeight::top_down_order(t);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (*it != t.root()) s[t.parent(*it)] += s[*it];
  return s;
}

// Both sides of the summation-by-parts identity
//   sum_{x,y} h(x meet y) f(x) conj(f(y))
//     = h(o) |I*f(o)|^2 + sum_{z != o} (h(z) - h(z-)) |I*f(z)|^2
// for an arbitrary vertex function h.
inline std::pair<double, double> summation_by_parts(const RootedTree& t,
                                                    const std::vector<double>& h,
                                                    const std::vector<Complex>& f) {
  const int n = t.size();
  if (static_cast<int>(h.size()) != n || static_cast<int>(f.size()) != n)
    throw DomainError("summation_by_parts: vertex functions must match vertex count");
  Complex lhs(0.0, 0.0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) lhs += h[meet(t, x, y)] * f[x] * std::conj(f[y]);
  std::vector<Complex> s = subtree_sums(t, f);
  double rhs = h[t.root()] * std::norm(s[t.root()]);
  for (int z = 0; z < n; ++z)
    if (z != t.root()) rhs += (h[z] - h[t.parent(z)]) * std::norm(s[z]);
  return {lhs.real(), rhs};
}

enum class TreeNormMode { Coefficients, Values };

// Norm of an element of the tree-kernel space, via the matching Sobolev
// form.  In coefficient mode f lists the kernel-expansion coefficients:
//   ||f||^2 = |sum c|^2 + sum_{z != o} omega(z) |I*c(z)|^2.
// In value mode f lists the function values:
//   ||f||^2 = |f(o)|^2 + sum_{z != o} omega(z)^{-1} |f(z) - f(z-)|^2,
// with omega(z) = Omega(z) - Omega(z-).
inline double tree_norm(const RootedTree& t, const TreeWeight& w,
                        const std::vector<Complex>& f, TreeNormMode mode) {
  const int n = t.size();
  if (static_cast<int>(f.size()) != n)
    throw DomainError("tree_norm: input must match vertex count");
  double out = 0.0;
  if (mode == TreeNormMode::Coefficients) {
    std::vector<Complex> s = subtree_sums(t, f);
    out = std::norm(s[t.root()]);
    for (int z = 0; z < n; ++z)
      if (z != t.root())
        out += (w.total(z) - w.total(t.parent(z))) * std::norm(s[z]);
  } else {
    out = std::norm(f[t.root()]);
    for (int z = 0; z < n; ++z)
      if (z != t.root())
        out += std::norm(f[z] - f[t.parent(z)]) / (w.total(z) - w.total(t.parent(z)));
  }
  return out;
}

// Omega(z) = lambda^{d(o, z)} for lambda > 1; K(x, y) = lambda^{d(o, x meet y)}.
inline GramSpace gromov_kernel(const RootedTree& t, double lambda,
                               const Tolerances& tol = {}) {
  if (!(lambda > 1.0)) throw DomainError("gromov_kernel: lambda must exceed 1");
  const int n = t.size();
  std::vector<double> omega(n);
  for (int v = 0; v < n; ++v) omega[v] = std::pow(lambda, t.depth_length(v));
  return tree_kernel(t, TreeWeight::validated(t, std::move(omega)), tol);
}

// K(x, y) = gamma^{d(x, y)} for gamma in (0, 1); a rescaling of the Gromov
// kernel with lambda = gamma^{-2}.
inline GramSpace distance_kernel(const RootedTree& t, double gamma,
                                 const Tolerances& tol = {}) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw DomainError("distance_kernel: gamma must lie in (0, 1)");
  const int n = t.size();
  Matrix k(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) k(x, y) = Complex(std::pow(gamma, tree_distance(t, x, y)), 0.0);
  return GramSpace::validated(std::move(k), tol);
}

// Entrywise power K^(lambda); admissible exactly for tree kernels (the
// weight Omega^lambda is again an increasing weight with value 1 at the
// root), hence the provenance requirement.
inline GramSpace power_kernel(const GramSpace& g, double lambda,
                              const Tolerances& tol = {}) {
  if (g.provenance() != Provenance::TreeKernel)
    throw DomainError("power_kernel: input lacks tree-kernel provenance");
  if (!(lambda > 0.0)) throw DomainError("power_kernel: exponent must be positive");
  const int n = g.n();
  Matrix k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = Complex(std::pow(g.k(i, j).real(), lambda), 0.0);
  return GramSpace::validated(std::move(k), tol, {}, Provenance::TreeKernel);
}

// Same undirected tree re-rooted at a new vertex; labels are preserved and
// edge lengths follow the flipped edges.
inline RootedTree reroot(const RootedTree& t, int new_root) {
  const int n = t.size();
  if (new_root < 0 || new_root >= n) throw DomainError("reroot: vertex out of range");
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (int v = 0; v < n; ++v)
    if (v != t.root()) {
      adj[v].push_back({t.parent(v), t.edge_length(v)});
      adj[t.parent(v)].push_back({v, t.edge_length(v)});
    }
  std::vector<int> parent(n, -2);
  std::vector<double> edge_len(n, 1.0);
  std::vector<int> stack{new_root};
  parent[new_root] = -1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [u, len] : adj[v])
      if (parent[u] == -2) {
        parent[u] = v;
        edge_len[u] = len;
        stack.push_back(u);
      }
  }
  return RootedTree::validated(std::move(parent), std::move(edge_len));
}

}  // namespace hypick
