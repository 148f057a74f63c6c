#pragma once

// Geometric classification of configurations.  For a triple in normal
// position {0, (s,0,...), (w,t,0,...)} the invariants read off the shape
// directly: A = 0 with footprint |w| = delta_13 means a geodesic, |w| =
// delta_13 alone a complex geodesic (t = 0), A = 0 alone a real geodesic
// disk, with the two right-angle subcases visible as k_23 = 1 (angle at the
// first point) and k_22 = k_23 (angle at the second) in the basepoint
// rescaling.  Large-set membership predicates quantify the same tests over
// triples and over basepointed 4-subsets.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "hypick/embedding.hpp"
#include "hypick/gram.hpp"
#include "hypick/hyperbolic.hpp"
#include "hypick/invariants.hpp"
#include "hypick/types.hpp"

namespace hypick {

enum class ConfigClass {
  Geodesic,
  RealGeodesicDisk,
  RightAngleAtFirst,
  RightAngleAtSecond,
  ComplexGeodesic,
  Generic,
};

inline const char* to_string(ConfigClass c) {
  switch (c) {
    case ConfigClass::Geodesic: return "Geodesic";
    case ConfigClass::RealGeodesicDisk: return "RealGeodesicDisk";
    case ConfigClass::RightAngleAtFirst: return "RightAngleAtFirst";
    case ConfigClass::RightAngleAtSecond: return "RightAngleAtSecond";
    case ConfigClass::ComplexGeodesic: return "ComplexGeodesic";
    case ConfigClass::Generic: return "Generic";
  }
  return "Generic";
}

struct ClassifyResult {
  ConfigClass tag = ConfigClass::Generic;
  std::map<std::string, double> witnesses;
};

// Decision order (most specific first): Geodesic when A = 0 and LF = delta_13;
// ComplexGeodesic when LF = delta_13; then within A = 0, RightAngleAtFirst
// when k_23 = 1 after basepoint rescaling, RightAngleAtSecond when
// k_22 = k_23, else RealGeodesicDisk; otherwise Generic.
inline ClassifyResult classify_triple(const PointSet& x, double tol_class = 1e-7,
                                      const Tolerances& tol = {}) {
  if (x.size() != 3) throw DomainError("classify_triple: need exactly three points");
  GramSpace g = gram_from_points(x, tol);
  GramSpace b = basepoint_rescale(g, 0, tol);
  double a = angular_invariant(g, 0, 1, 2);
  double lf13 = lf(g, 0, 1, 2);
  double d13 = delta(g, 0, 2);
  Complex k23 = b.k(1, 2);
  Complex k22 = b.k(1, 1);

  ClassifyResult out;
  out.witnesses["angular"] = a;
  out.witnesses["lf_minus_delta13"] = lf13 - d13;
  out.witnesses["k23_minus_one"] = std::abs(k23 - Complex(1.0, 0.0));
  out.witnesses["k22_minus_k23"] = std::abs(k22 - k23);

  bool flat_angle = std::abs(a) <= tol_class;
  bool footprint_full = std::abs(lf13 - d13) <= tol_class;
  if (flat_angle && footprint_full) {
    out.tag = ConfigClass::Geodesic;
  } else if (footprint_full) {
    out.tag = ConfigClass::ComplexGeodesic;
  } else if (flat_angle) {
    if (std::abs(k23 - Complex(1.0, 0.0)) <= tol_class * (1.0 + std::abs(k23)))
      out.tag = ConfigClass::RightAngleAtFirst;
    else if (std::abs(k22 - k23) <= tol_class * (1.0 + std::abs(k22)))
      out.tag = ConfigClass::RightAngleAtSecond;
    else
      out.tag = ConfigClass::RealGeodesicDisk;
  } else {
    out.tag = ConfigClass::Generic;
  }
  return out;
}

// The whole set lies in a single geodesic iff every triple does.
inline bool lies_in_geodesic(const PointSet& x, double tol_class = 1e-7,
                             const Tolerances& tol = {}) {
  if (x.size() < 3) return true;
  GramSpace g = gram_from_points(x, tol);
  const int n = x.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        if (std::abs(angular_invariant(g, i, j, k)) > tol_class) return false;
        if (std::abs(lf(g, i, j, k) - delta(g, i, k)) > tol_class) return false;
      }
  return true;
}

// Containment in a totally real submanifold: every angular invariant vanishes.
inline bool lies_in_totally_real(const PointSet& x, double tol_class = 1e-7,
                                 const Tolerances& tol = {}) {
  if (x.size() < 3) return true;
  GramSpace g = gram_from_points(x, tol);
  const int n = x.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (std::abs(angular_invariant(g, i, j, k)) > tol_class) return false;
  return true;
}

// Containment in a real geodesic disk (a totally real 2-flat): all angular
// invariants vanish and every basepointed 4-subset has rank-deficient MQ
// block at the basepoint.
inline bool lies_in_real_disk(const PointSet& x, double tol_class = 1e-7,
                              const Tolerances& tol = {}) {
  if (!lies_in_totally_real(x, tol_class, tol)) return false;
  const int n = x.size();
  if (n < 4) return true;
  GramSpace g = gram_from_points(x, tol);
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Matrix sub(4, 4);
        const int idx[4] = {0, i, j, k};
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) sub(a, b) = g.k(idx[a], idx[b]);
        GramSpace gs = GramSpace::validated(std::move(sub), tol);
        Matrix mq = mq_matrix(gs, 0).m;
        double scale = 1.0;
        for (int r = 0; r < 3; ++r) scale = std::max(scale, mq.row(r).norm());
        if (std::abs(mq.determinant()) > tol.rank * scale * scale * scale) return false;
      }
  return true;
}

// r-model property: under the hypothesis that every 4-point subspace has the
// complete Pick property, the set lies in an r-model iff LF_ijk = delta_ik
// for all ordered triples i < j < k.
inline bool is_r_pick(const GramSpace& g, double tol_class = 1e-7,
                      const Tolerances& tol = {}) {
  const int n = g.n();
  if (n <= 3) {
    CppReport rep = has_cpp(g, tol);
    if (!rep.cpp) throw DomainError("is_r_pick: hypothesis failed (space lacks CPP)");
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            Matrix sub(4, 4);
            const int idx[4] = {a, b, c, d};
            for (int p = 0; p < 4; ++p)
              for (int q = 0; q < 4; ++q) sub(p, q) = g.k(idx[p], idx[q]);
            GramSpace gs = GramSpace::validated(std::move(sub), tol);
            CppReport rep = has_cpp(gs, tol);
            if (!rep.cpp)
              throw DomainError("is_r_pick: hypothesis failed (4-point subspace lacks CPP)");
          }
  }
  if (n < 3) return true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (std::abs(lf(g, i, j, k) - delta(g, i, k)) > tol_class) return false;
  return true;
}

// Area of the Euclidean projection of a triangle onto the complex geodesic
// through its first two vertices: move that side onto the first-coordinate
// axis disk, drop the other coordinates, and measure the hyperbolic area of
// the resulting disk triangle through its angular invariant.  Equals
// |A_123| of the original triple.
inline double projected_area(const PointSet& x, const Tolerances& tol = {}) {
  if (x.size() != 3) throw DomainError("projected_area: need exactly three points");
  // Partial normal position: first point to the origin, second to the
  // positive first-coordinate axis.
  Vector y2 = mobius_involution_apply(x.point(0), x.point(1));
  Vector y3 = mobius_involution_apply(x.point(0), x.point(2));
  double s = y2.norm();
  if (!(s > tol.zero))
    throw DomainError("projected_area: first two points must be distinct");
  Complex p2(s, 0.0);
  Complex p3 = ball_inner(y3, y2) / s;  // first coordinate of y3 in the rotated frame
  // Angular invariant of the projected disk triple {0, p2, p3}; computed
  // directly from the three pairwise kernels so degenerate projections
  // (coincident projected points) are handled.
  Complex prod = (1.0 / (Complex(1.0, 0.0) - Complex(0.0, 0.0))) *
                 (1.0 / (Complex(1.0, 0.0) - p3 * std::conj(p2))) *
                 (1.0 / (Complex(1.0, 0.0) - Complex(0.0, 0.0) * std::conj(p3)));
  return std::abs(std::arg(prod));
}

}  // namespace hypick
