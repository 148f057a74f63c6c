#pragma once

// JSON wire formats.  Complex numbers are two-element arrays [re, im];
// matrices are row-major nested arrays; index keys inside invariant tables
// are 1-based comma-joined strings ("1,2,3").  Serialization relies on the
// shortest round-trip representation of doubles, so emitted files are
// byte-deterministic and lossless.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hypick/classify.hpp"
#include "hypick/embedding.hpp"
#include "hypick/gram.hpp"
#include "hypick/hyperbolic.hpp"
#include "hypick/invariants.hpp"
#include "hypick/multalg.hpp"
#include "hypick/trees.hpp"
#include "hypick/types.hpp"

namespace hypick {

using Json = nlohmann::json;

inline Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError({"BadComplex: expected [re, im]"});
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError({"BadMatrix: expected nested arrays"});
  const auto rows = j.size();
  const auto cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ValidationError({"BadMatrix: ragged rows"});
    for (size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

inline std::string index_key(std::initializer_list<int> idx0) {
  std::string s;
  for (int v : idx0) {
    if (!s.empty()) s += ",";
    s += std::to_string(v + 1);  // external indices are 1-based
  }
  return s;
}

// ---- Gram space ----

inline Json gram_to_json(const GramSpace& g) {
  Json j;
  j["n"] = g.n();
  j["K"] = matrix_to_json(g.K());
  if (!g.labels().empty()) j["labels"] = g.labels();
  j["provenance"] = g.provenance() == Provenance::TreeKernel ? "tree" : "none";
  return j;
}

inline GramSpace gram_from_json(const Json& j, const Tolerances& tol = {}) {
  if (!j.contains("K")) throw ValidationError({"BadGram: missing K"});
  Matrix k = matrix_from_json(j["K"]);
  if (j.contains("n") && j["n"].get<int>() != k.rows())
    throw ValidationError({"BadGram: n disagrees with K"});
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  Provenance prov = Provenance::None;
  if (j.contains("provenance") && j["provenance"].get<std::string>() == "tree")
    prov = Provenance::TreeKernel;
  return GramSpace::validated(std::move(k), tol, std::move(labels), prov);
}

// ---- Point sets ----

inline Json points_to_json(const PointSet& x) {
  Json j;
  j["d"] = x.d();
  Json pts = Json::array();
  for (const auto& p : x.points()) {
    Json q = Json::array();
    for (Eigen::Index c = 0; c < p.size(); ++c) q.push_back(complex_to_json(p(c)));
    pts.push_back(std::move(q));
  }
  j["points"] = std::move(pts);
  return j;
}

inline PointSet points_from_json(const Json& j, const Tolerances& tol = {}) {
  if (!j.contains("d") || !j.contains("points"))
    throw ValidationError({"BadPoints: missing d or points"});
  const int d = j["d"].get<int>();
  if (d < 0) throw ValidationError({"BadPoints: negative dimension"});
  std::vector<Vector> pts;
  for (const auto& q : j["points"]) {
    if (!q.is_array() || static_cast<int>(q.size()) != d)
      throw ValidationError({"BadPoints: point arity differs from d"});
    Vector p(d);
    for (int c = 0; c < d; ++c) p(c) = complex_from_json(q[c]);
    pts.push_back(std::move(p));
  }
  return PointSet::validated(std::move(pts), d, tol);
}

// ---- Trees ----

inline Json tree_to_json(const RootedTree& t, const TreeWeight* w = nullptr) {
  Json j;
  j["parent"] = t.parents();
  j["edge_len"] = t.edge_lengths();
  if (w) j["omega"] = w->totals();
  return j;
}

struct TreeInput {
  RootedTree tree;
  std::vector<double> omega;  // empty if absent
};

inline TreeInput tree_from_json(const Json& j) {
  if (!j.contains("parent")) throw ValidationError({"BadTree: missing parent"});
  std::vector<int> parent = j["parent"].get<std::vector<int>>();
  std::vector<double> edge_len;
  if (j.contains("edge_len")) edge_len = j["edge_len"].get<std::vector<double>>();
  RootedTree t = RootedTree::validated(std::move(parent), std::move(edge_len));
  std::vector<double> omega;
  if (j.contains("omega")) omega = j["omega"].get<std::vector<double>>();
  return TreeInput{std::move(t), std::move(omega)};
}

// ---- Invariant data ----

inline Json invariants_to_json(const InvariantData& v) {
  Json j;
  j["n"] = v.n;
  Json d = Json::object();
  for (int a = 0; a < v.n; ++a)
    for (int b = a + 1; b < v.n; ++b) d[index_key({a, b})] = v.deltas(a, b);
  j["deltas"] = std::move(d);
  Json ang = Json::object();
  for (int r = 1; r < v.n; ++r)
    for (int s = r + 1; s < v.n; ++s) ang[index_key({0, r, s})] = v.angulars(r, s);
  j["angulars"] = std::move(ang);
  return j;
}

inline InvariantData invariants_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("deltas") || !j.contains("angulars"))
    throw ValidationError({"BadInvariants: missing n, deltas or angulars"});
  InvariantData v;
  v.n = j["n"].get<int>();
  if (v.n < 1) throw ValidationError({"BadInvariants: n must be positive"});
  v.deltas = RealMatrix::Zero(v.n, v.n);
  v.angulars = RealMatrix::Zero(v.n, v.n);
  for (int a = 0; a < v.n; ++a)
    for (int b = a + 1; b < v.n; ++b) {
      std::string key = index_key({a, b});
      if (!j["deltas"].contains(key))
        throw ValidationError({"BadInvariants: missing delta " + key});
      v.deltas(a, b) = v.deltas(b, a) = j["deltas"][key].get<double>();
    }
  for (int r = 1; r < v.n; ++r)
    for (int s = r + 1; s < v.n; ++s) {
      std::string key = index_key({0, r, s});
      if (!j["angulars"].contains(key))
        throw ValidationError({"BadInvariants: missing angular " + key});
      v.angulars(r, s) = j["angulars"][key].get<double>();
      v.angulars(s, r) = -v.angulars(r, s);
    }
  return v;
}

// ---- Hartz data ----

inline Json hartz_to_json(const Matrix& e) {
  Json j;
  j["n"] = static_cast<int>(e.rows()) + 1;
  j["E"] = matrix_to_json(e);
  return j;
}

inline Matrix hartz_from_json(const Json& j) {
  if (!j.contains("E")) throw ValidationError({"BadHartz: missing E"});
  Matrix e = matrix_from_json(j["E"]);
  if (j.contains("n") && j["n"].get<int>() != e.rows() + 1)
    throw ValidationError({"BadHartz: n disagrees with E"});
  return e;
}

// ---- Symbols ----

inline std::vector<Complex> symbol_from_json(const Json& j) {
  if (!j.contains("values")) throw ValidationError({"BadSymbol: missing values"});
  std::vector<Complex> v;
  for (const auto& e : j["values"]) v.push_back(complex_from_json(e));
  return v;
}

inline Json symbol_to_json(const std::vector<Complex>& v) {
  Json arr = Json::array();
  for (const auto& z : v) arr.push_back(complex_to_json(z));
  Json j;
  j["values"] = std::move(arr);
  return j;
}

// ---- Reports ----

inline Json not_cpp_to_json(const NotCppCertificate& c) {
  Json j;
  if (c.mq_index >= 0) {
    j["mq_index"] = c.mq_index + 1;
    j["mq_eigenvalue"] = c.mq_eigenvalue;
  }
  if (c.step >= 0) {
    j["step"] = c.step + 1;
    j["height_margin"] = c.height_margin;
  }
  j["detail"] = c.detail;
  return j;
}

// Full invariant report of a space: deltas, angular invariants, footprint
// lengths, MQ spectra, STI verdicts, and (on complete Pick spaces) the
// Delta table; optionally the embedded configuration.
inline Json analyze_report(const GramSpace& g, const Tolerances& tol = {},
                           bool emit_points = false, int basepoint = 0) {
  const int n = g.n();
  Json j;
  j["n"] = n;
  j["tolerances"] = {{"eq", tol.eq}, {"psd", tol.psd}, {"zero", tol.zero}, {"rank", tol.rank}};
  if (!g.warnings().empty()) j["warnings"] = g.warnings();

  Json deltas = Json::object();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) deltas[index_key({a, b})] = delta(g, a, b);
  j["deltas"] = std::move(deltas);

  Json ang = Json::object(), lfs = Json::object();
  Json sti_failures = Json::array();
  bool sti_all = true;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        ang[index_key({a, b, c})] = angular_invariant(g, a, b, c);
        lfs[index_key({a, b, c})] = lf(g, a, b, c);
        if (!sti_holds(g, a, b, c, tol)) {
          sti_all = false;
          sti_failures.push_back(index_key({a, b, c}));
        }
      }
  j["angulars"] = std::move(ang);
  j["lf"] = std::move(lfs);
  j["sti"] = {{"all_hold", sti_all}, {"failures", std::move(sti_failures)}};

  Json mq = Json::object();
  for (int r = 0; r < n && n > 1; ++r) {
    MqMatrix m = mq_matrix(g, r);
    double lmax = 0.0;
    double lmin = detail::hermitian_min_eigenvalue(m.m, &lmax);
    mq[std::to_string(r + 1)] = {{"min_eigenvalue", lmin},
                                 {"max_eigenvalue", lmax},
                                 {"psd", lmin >= -tol.psd * std::max(1.0, lmax)}};
  }
  j["mq"] = std::move(mq);

  CppReport rep = has_cpp(g, tol);
  j["cpp"] = rep.cpp;
  if (!rep.cpp)
    j["cpp_certificate"] = {{"mq_index", rep.worst_r + 1},
                            {"mq_eigenvalue", rep.worst_eigenvalue}};

  if (basepoint < 0 || basepoint >= n)
    throw DomainError("analyze: basepoint index out of range");
  if (rep.cpp && n >= 3) {
    Json dd = Json::object();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (a == basepoint || b == basepoint) continue;
        dd[index_key({basepoint, a, b})] = capital_delta(g, basepoint, a, b, tol);
      }
    j["Delta"] = std::move(dd);
  }

  j["basepoint"] = basepoint + 1;
  if (emit_points && rep.cpp) {
    EmbedResult er = embed(basepoint == 0 ? g : basepoint_rescale(g, basepoint, tol), tol);
    j["points"] = points_to_json(er.points);
    j["embed_residual"] = er.residual;
  }
  return j;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hypick
