// Acceptance runner: executes the eleven release criteria end to end and
// prints one PASS/FAIL line per criterion with the measured quantities.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace hypick;
using hytest::Rng;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_spread(std::initializer_list<double> vals) {
  double lo = *std::min_element(vals.begin(), vals.end());
  double hi = *std::max_element(vals.begin(), vals.end());
  return (hi - lo) / std::max(1e-300, std::abs(hi));
}

Outcome embedding_round_trip() {
  Rng rng(901);
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = hytest::uni_int(rng, 2, 10);
    PointSet x = hytest::random_normal_form_points(rng, n);
    EmbedResult er = embed(gram_from_points(x));
    if (er.points.size() != n || er.points.d() != x.d())
      return {false, "reconstructed configuration has the wrong shape"};
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < x.d(); ++c)
        worst = std::max(worst, std::abs(er.points.point(i)(c) - x.point(i)(c)));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = worst <= 1e-8 && secs < 10.0;
  return {pass, "200 normal-form sets, n <= 10: max coordinate deviation " + fmt(worst) +
                    " (allowed 1e-8), " + fmt(secs) + " s (allowed 10 s)"};
}

Outcome three_point_equivalence() {
  Rng rng(902);
  int used = 0, skipped = 0, pick = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    GramSpace g = hytest::random_pd_gram(rng, 3);
    double l = lf(g, 0, 1, 2), d13 = delta(g, 0, 2);
    if (std::abs(l - d13) < 1e-9) {
      ++skipped;
      continue;
    }
    bool v_lf = l <= d13;
    bool v_cpp = has_cpp(g).cpp;
    bool v_margin = solvability_margin(g, 0, 1, 2) >= 0.0;
    bool v_embed = true;
    try {
      embed(g);
    } catch (const NotCppError&) {
      v_embed = false;
    }
    if (v_lf != v_cpp || v_cpp != v_margin || v_margin != v_embed)
      return {false, "verdicts split on instance " + std::to_string(trial) + ": lf " +
                         std::to_string(v_lf) + " cpp " + std::to_string(v_cpp) +
                         " margin " + std::to_string(v_margin) + " embed " +
                         std::to_string(v_embed)};
    ++used;
    if (v_cpp) ++pick;
  }
  return {true, "1000 random 3x3 Grams: all four verdicts agree on " + std::to_string(used) +
                    " off-boundary instances (" + std::to_string(skipped) + " skipped, " +
                    std::to_string(pick) + " with the Pick property, " +
                    std::to_string(used - pick) + " without)"};
}

Outcome bergman_series() {
  const double r = 0.1;
  GramSpace g = hytest::bergman_gram(r);
  double d12 = delta(g, 0, 1), d23 = delta(g, 1, 2), d13 = delta(g, 0, 2);
  double series = 2.0 * std::sqrt(2.0) * r - 4.0 * std::sqrt(2.0) * r * r * r;
  double diff = std::abs(d13 - series);
  bool clause1 = diff <= 5e-6;
  double bound = (d12 + d23) / (1.0 + d12 * d23);
  double excess = d13 - bound;
  double ratio = excess / (0.5 * std::sqrt(2.0) * r * r * r);
  bool clause2 = excess > 0.0 && ratio >= 0.8 && ratio <= 1.2;
  return {clause1 && clause2,
          "Bergman {-r, 0, r}, r = 0.1: |delta_13 - (2*sqrt(2)r - 4*sqrt(2)r^3)| = " +
              fmt(diff) + " (allowed 5e-6" + (clause1 ? "" : ", exceeded") +
              "); excess over the two-point bound / (0.5*sqrt(2)r^3) = " + fmt(ratio) +
              " (allowed 0.8..1.2)"};
}

Outcome arg_power_example() {
  GramSpace g = hytest::power_arg_gram(2.0, 0.9);
  double a = angular_invariant(g, 0, 1, 2);
  Complex omega = std::polar(1.0, 2.0 * pi / 3.0);
  double expected = 6.0 * std::arg(Complex(1.0, 0.0) - 0.9 * omega);
  double dev = std::abs(a - expected);
  bool negative_cos = std::cos(a) < 0.0;
  bool no_cpp = !has_cpp(g).cpp;
  bool embed_rejects = false;
  try {
    embed(g);
  } catch (const NotCppError&) {
    embed_rejects = true;
  }
  return {dev <= 1e-10 && negative_cos && no_cpp && embed_rejects,
          "power kernel, lambda = 2, r^2 = 0.9: |A - 6 arg(1 - 0.9 w)| = " + fmt(dev) +
              ", cos A = " + fmt(std::cos(a)) + ", Pick verdict " +
              (no_cpp ? "negative" : "positive") + ", embed " +
              (embed_rejects ? "rejects" : "accepts")};
}

Outcome delta_three_routes() {
  Rng rng(905);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = hytest::uni_int(rng, 3, 6);
    GramSpace g = hytest::random_cpp_gram(rng, n);
    int x = hytest::uni_int(rng, 0, n - 1);
    int y = (x + 1 + hytest::uni_int(rng, 0, n - 2)) % n;
    int z = y;
    while (z == x || z == y) z = hytest::uni_int(rng, 0, n - 1);
    double a = capital_delta(g, x, y, z);
    double b = capital_delta_closed(g, x, y, z);
    double c = capital_delta_interpolation(g, x, y, z);
    worst = std::max(worst, rel_spread({a, b, c}));
  }
  return {worst <= 1e-9, "500 Pick Grams: max relative spread across the three "
                         "Delta computations = " + fmt(worst) + " (allowed 1e-9)"};
}

Outcome classification_dictionary() {
  double worst = 0.0;
  std::string bad_tag;
  for (double s : {0.3, 0.5, 0.7})
    for (double t : {0.2, 0.4}) {
      auto run = [&](std::vector<Vector> pts, int d, ConfigClass want,
                     std::function<double(const GramSpace&)> predicted) {
        PointSet x = PointSet::validated(std::move(pts), d);
        GramSpace g = gram_from_points(x);
        worst = std::max(worst, std::abs(capital_delta(g, 0, 1, 2) - predicted(g)));
        ConfigClass got = classify_triple(x).tag;
        if (got != want && bad_tag.empty())
          bad_tag = std::string("expected ") + to_string(want) + ", got " + to_string(got) +
                    " at s = " + fmt(s) + ", t = " + fmt(t);
      };
      Vector o = Vector::Zero(2), e1 = Vector::Zero(2), e2 = Vector::Zero(2), mix = Vector::Zero(2);
      e1(0) = s;
      e2(1) = t;
      mix(0) = s;
      mix(1) = t;
      run({o, e1, e2}, 2, ConfigClass::RightAngleAtFirst, [](const GramSpace& g) {
        return delta(g, 0, 1) * delta(g, 0, 2) / delta(g, 1, 2);
      });
      run({o, e1, mix}, 2, ConfigClass::RightAngleAtSecond,
          [](const GramSpace& g) { return delta(g, 0, 1); });
      Vector zo(1), z1(1), z2(1);
      zo(0) = Complex(0, 0);
      z1(0) = Complex(s, 0);
      z2(0) = std::polar(t, 0.8);
      run({zo, z1, z2}, 1, ConfigClass::ComplexGeodesic,
          [](const GramSpace& g) { return delta(g, 0, 1) * delta(g, 0, 2); });
    }
  if (!bad_tag.empty()) return {false, bad_tag};
  return {worst <= 1e-8, "right-angle and disk triples: max |Delta - predicted| = " +
                             fmt(worst) + " (allowed 1e-8), all tags match"};
}

Outcome orthogonal_rescalings() {
  Rng rng(907);
  double worst = 0.0;
  int triples = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = hytest::uni_int(rng, 2, 8);
    PointSet x = hytest::random_pointset(rng, n, 1, 0.8, 0.15);
    std::vector<Complex> zs(n);
    for (int i = 0; i < n; ++i) zs[i] = x.point(i)(0);
    GramSpace g = orthogonal_rescaling(zs);
    double resid = (g.K().transpose() * g.K() - Matrix::Identity(n, n)).norm();
    worst = std::max(worst, resid / n);
    if (resid > 1e-7 * n)
      return {false, "orthogonality residual " + fmt(resid) + " at n = " + std::to_string(n)};
    if (n == 3) {
      GramSpace disk = gram_from_points(x);
      bool by_det = is_r_orthogonal_3d(disk);
      bool by_lf = std::abs(lf(disk, 0, 1, 2) - delta(disk, 0, 2)) <= 1e-8;
      if (by_det != by_lf) return {false, "determinant and footprint criteria disagree"};
      ++triples;
    }
  }
  return {true, "100 disk sets, n <= 8: max ||K^t K - I||_F / n = " + fmt(worst) +
                    " (allowed 1e-7); determinant and footprint criteria agree on all " +
                    std::to_string(triples) + " triples"};
}

Outcome tree_identities() {
  Rng rng(908);
  double worst_gram = 0.0, worst_parts = 0.0, worst_norms = 0.0, worst_ident = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = hytest::uni_int(rng, 2, 64);
    RootedTree t = hytest::random_tree(rng, n, trial % 2 == 0);
    TreeWeight w = hytest::random_weight(rng, t);
    GramSpace g = tree_kernel(t, w);

    GramSpace realized = gram_from_points(spine_embedding(t, w));
    worst_gram = std::max(worst_gram, matrix_rel_residual(g.K(), realized.K()));

    std::vector<double> h(n);
    for (double& v : h) v = hytest::uni(rng, -2.0, 2.0);
    std::vector<Complex> f = hytest::random_symbol(rng, n);
    auto [lhs, rhs] = summation_by_parts(t, h, f);
    worst_parts = std::max(worst_parts, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));

    std::vector<Complex> coef = hytest::random_symbol(rng, n);
    Eigen::Map<const Vector> c(coef.data(), n);
    Vector vals = g.K() * c;
    std::vector<Complex> values(vals.data(), vals.data() + n);
    double nc = tree_norm(t, w, coef, TreeNormMode::Coefficients);
    double nv = tree_norm(t, w, values, TreeNormMode::Values);
    worst_norms = std::max(worst_norms, std::abs(nc - nv) / (1.0 + nc));

    int nr = hytest::uni_int(rng, 0, n - 1);
    RootedTree rt = reroot(t, nr);
    if (!rescaling_equivalent(gromov_kernel(t, 1.04), gromov_kernel(rt, 1.04)).equivalent)
      return {false, "re-rooted growth kernels are not rescalings of each other"};
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        double lhs2 = rt.depth_length(meet(rt, x, y));
        double rhs2 = t.depth_length(meet(t, x, y)) + t.depth_length(nr) -
                      t.depth_length(meet(t, x, nr)) - t.depth_length(meet(t, nr, y));
        worst_ident = std::max(worst_ident, std::abs(lhs2 - rhs2));
      }
  }
  bool pass = worst_gram <= 1e-12 && worst_parts <= 1e-10 && worst_norms <= 1e-10 &&
              worst_ident <= 1e-12;
  return {pass, "100 trees, n <= 64: spine Gram residual " + fmt(worst_gram) +
                    " (1e-12), summation by parts " + fmt(worst_parts) +
                    " (1e-10), norm forms " + fmt(worst_norms) +
                    " (1e-10), root-change identity " + fmt(worst_ident) +
                    " (1e-12), all re-rooted Grams equivalent"};
}

Outcome hartz_round_trip() {
  Rng rng(909);
  Tolerances strict;
  strict.eq = 1e-9;
  for (int trial = 0; trial < 200; ++trial) {
    int n = hytest::uni_int(rng, 2, 8);
    GramSpace g = hytest::random_cpp_gram(rng, n);
    GramSpace back = reconstruct_from_hartz(hartz_data(g));
    if (!rescaling_equivalent(g, back, strict).equivalent)
      return {false, "round trip broke rescaling equivalence at n = " + std::to_string(n) +
                         ", instance " + std::to_string(trial)};
  }
  return {true, "200 Pick Grams, n <= 8: every reconstruction is rescaling-equivalent "
                "to its source at 1e-9"};
}

Outcome projected_areas() {
  Rng rng(910);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    PointSet x = hytest::random_pointset(rng, 3, 2, 0.75, 0.15);
    double area = projected_area(x);
    double a = angular_invariant(gram_from_points(x), 0, 1, 2);
    worst = std::max(worst, std::abs(area - std::abs(a)));
  }
  return {worst <= 1e-8, "300 plane triples: max |projected area - |A|| = " + fmt(worst) +
                             " (allowed 1e-8)"};
}

Outcome invariance_suite() {
  Rng rng(911);
  double worst = 0.0, worst_cocycle = 0.0;

  auto battery = [&](const GramSpace& a, const GramSpace& b, const std::vector<Complex>& sym) {
    const int n = a.n();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        worst = std::max(worst, std::abs(delta(a, i, j) - delta(b, i, j)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          worst = std::max(worst, std::abs(angular_invariant(a, i, j, k) -
                                           angular_invariant(b, i, j, k)));
          worst = std::max(worst, std::abs(lf(a, i, j, k) - lf(b, i, j, k)));
          worst = std::max(worst, std::abs(capital_delta(a, i, j, k) -
                                           capital_delta(b, i, j, k)));
        }
    worst = std::max(worst, std::abs(multiplier_norm(a, sym) - multiplier_norm(b, sym)));
    return has_cpp(a).cpp == has_cpp(b).cpp;
  };

  for (int trial = 0; trial < 30; ++trial) {
    int n = hytest::uni_int(rng, 3, 6);
    GramSpace g = (trial % 3 == 0) ? hytest::random_pd_gram(rng, n)
                                   : hytest::random_cpp_gram(rng, n);
    if (trial == 10) g = hytest::bergman_gram(0.1);
    if (trial == 20) g = hytest::power_arg_gram(2.0, 0.9);
    GramSpace h = rescale(g, hytest::random_gamma(rng, g.n()));
    if (!battery(g, h, hytest::random_symbol(rng, g.n())))
      return {false, "Pick verdict changed under a rescaling"};
  }

  for (int trial = 0; trial < 20; ++trial) {
    int d = hytest::uni_int(rng, 1, 3);
    int n = hytest::uni_int(rng, 3, 5);
    PointSet x = hytest::random_pointset(rng, n, d, 0.7, 0.2);
    PointSet y = apply(hytest::random_automorphism(rng, d), x);
    if (!battery(gram_from_points(x), gram_from_points(y), hytest::random_symbol(rng, n)))
      return {false, "Pick verdict changed under a ball automorphism"};
  }

  for (int trial = 0; trial < 20; ++trial) {
    int n = hytest::uni_int(rng, 4, 7);
    GramSpace g = (trial % 2 == 0) ? hytest::random_cpp_gram(rng, n)
                                   : hytest::random_pd_gram(rng, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          for (int l = k + 1; l < n; ++l)
            worst_cocycle = std::max(worst_cocycle, cocycle_defect(g, i, j, k, l));
  }

  bool pass = worst <= 1e-8 && worst_cocycle <= 1e-10;
  return {pass, "rescaling and automorphism invariance of delta, A, LF, Delta, "
                "multiplier norm: max drift " + fmt(worst) +
                " (allowed 1e-8); max cocycle defect over 4-subsets " + fmt(worst_cocycle) +
                " (allowed 1e-10)"};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria = {
      {1, "embedding round trip", embedding_round_trip},
      {2, "three-point equivalence", three_point_equivalence},
      {3, "separation expansion numbers", bergman_series},
      {4, "obstructed symmetric example", arg_power_example},
      {5, "Delta three-way agreement", delta_three_routes},
      {6, "classification dictionary", classification_dictionary},
      {7, "orthogonal rescalings", orthogonal_rescalings},
      {8, "tree identities", tree_identities},
      {9, "value-table round trip", hartz_round_trip},
      {10, "projected area", projected_areas},
      {11, "invariance suite", invariance_suite},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome oc;
    try {
      oc = c.run();
    } catch (const std::exception& e) {
      oc = {false, std::string("unexpected exception: ") + e.what()};
    }
    if (!oc.pass) ++failures;
    std::printf("%s criterion %2d (%s): %s\n", oc.pass ? "PASS" : "FAIL", c.id, c.name,
                oc.detail.c_str());
  }
  if (failures == 0)
    std::printf("all %zu criteria passed\n", criteria.size());
  else
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
