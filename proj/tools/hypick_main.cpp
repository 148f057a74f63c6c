// hypick: Gram-space / hyperbolic-configuration toolkit CLI.
//
// Verbs:
//   analyze    full invariant report of a Gram space (--batch for directories)
//   embed      Gram or invariant data -> ball configuration + certificate
//   classify   triple classification / large-set predicates
//   congruent  two point sets -> congruence verdict + normal forms
//   tree       tree + weight -> kernel, spine embedding, norm checks
//   hartz      Gram -> multiplier column data, or the reverse
//   multnorm   Gram + symbol values -> multiplier norm
//
// Exit codes: 0 success, 1 validation/domain error, 2 not-CPP/infeasible,
// 3 numerical failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypick/hypick.hpp"

namespace {

using namespace hypick;
namespace fs = std::filesystem;

Json read_json(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw ValidationError({"CannotOpen: " + path});
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError({std::string("BadJson: ") + e.what()});
  }
}

void write_output(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << dump_json(j);
  } else {
    std::ofstream o(out);
    if (!o) throw ValidationError({"CannotWrite: " + out});
    o << dump_json(j);
  }
}

struct Outcome {
  Json report;
  int code = 0;
};

Outcome guarded(const std::function<Json()>& body) {
  try {
    return {body(), 0};
  } catch (const ValidationError& e) {
    return {Json{{"error", "validation"}, {"issues", e.issues}}, 1};
  } catch (const DomainError& e) {
    return {Json{{"error", "domain"}, {"detail", e.what()}}, 1};
  } catch (const NotCppError& e) {
    return {Json{{"error", "not_cpp"},
                 {"cpp", false},
                 {"certificate", not_cpp_to_json(e.certificate)}},
            2};
  } catch (const InfeasibleError& e) {
    return {Json{{"error", "infeasible"}, {"detail", e.what()}}, 2};
  } catch (const NumericError& e) {
    return {Json{{"error", "numeric"}, {"detail", e.what()}}, 3};
  } catch (const std::exception& e) {
    return {Json{{"error", "internal"}, {"detail", e.what()}}, 3};
  }
}

Json run_embed(const Json& in, const Tolerances& tol) {
  EmbedResult er = in.contains("deltas")
                       ? embed_from_invariants(invariants_from_json(in), tol)
                       : embed(gram_from_json(in, tol), tol);
  Json j = points_to_json(er.points);
  j["cpp"] = true;
  j["residual"] = er.residual;
  return j;
}

Json run_classify(const Json& in, double tol_class, const Tolerances& tol) {
  if (in.contains("K")) {
    GramSpace g = gram_from_json(in, tol);
    Json j;
    j["n"] = g.n();
    j["cpp"] = has_cpp(g, tol).cpp;
    j["r_pick"] = is_r_pick(g, tol_class, tol);
    return j;
  }
  PointSet x = points_from_json(in, tol);
  Json j;
  j["n"] = x.size();
  if (x.size() == 3) {
    ClassifyResult r = classify_triple(x, tol_class, tol);
    j["tag"] = to_string(r.tag);
    Json w = Json::object();
    for (const auto& [key, val] : r.witnesses) w[key] = val;
    j["witnesses"] = std::move(w);
  } else {
    j["geodesic"] = lies_in_geodesic(x, tol_class, tol);
    j["totally_real"] = lies_in_totally_real(x, tol_class, tol);
    j["real_disk"] = lies_in_real_disk(x, tol_class, tol);
    j["complex_geodesic"] = is_r_pick(gram_from_points(x, tol), tol_class, tol);
  }
  return j;
}

Json run_congruent(const Json& ina, const Json& inb, const Tolerances& tol) {
  PointSet a = points_from_json(ina, tol);
  PointSet b = points_from_json(inb, tol);
  NormalFormResult na = normal_form(a, tol);
  NormalFormResult nb = normal_form(b, tol);
  Json j;
  j["congruent"] = congruent(a, b, tol);
  j["normal_form_a"] = points_to_json(na.points);
  j["normal_form_b"] = points_to_json(nb.points);
  j["condition_a"] = na.condition;
  j["condition_b"] = nb.condition;
  return j;
}

Json tree_checks(const RootedTree& t, const TreeWeight& w, const GramSpace& g,
                 const Tolerances& tol) {
  const int n = t.size();
  Json j;
  PointSet sp = spine_embedding(t, w, tol);
  GramSpace gs = gram_from_points(sp, tol);
  j["points"] = points_to_json(sp);
  j["gram_residual"] = matrix_rel_residual(g.K(), gs.K());

  // Deterministic probe data for the identities.
  std::vector<Complex> c(n);
  for (int v = 0; v < n; ++v) c[v] = Complex(1.0 / (1.0 + v), 0.0);
  auto [lhs, rhs] = summation_by_parts(t, w.totals(), c);
  j["summation_by_parts"] = {{"lhs", lhs},
                             {"rhs", rhs},
                             {"agree", scalar_close(lhs, rhs, tol.eq)}};
  std::vector<Complex> values(n);
  for (int x = 0; x < n; ++x) {
    Complex s(0.0, 0.0);
    for (int y = 0; y < n; ++y) s += g.K()(x, y) * c[y];
    values[x] = s;
  }
  double nc = tree_norm(t, w, c, TreeNormMode::Coefficients);
  double nv = tree_norm(t, w, values, TreeNormMode::Values);
  j["norm_coefficients"] = nc;
  j["norm_values"] = nv;
  j["norms_agree"] = scalar_close(nc, nv, tol.eq);
  return j;
}

Json run_tree(const Json& in, double lambda, double gamma, const Tolerances& tol) {
  TreeInput ti = tree_from_json(in);
  const RootedTree& t = ti.tree;
  if (gamma > 0.0) {
    GramSpace g = distance_kernel(t, gamma, tol);
    GramSpace grm = gromov_kernel(t, 1.0 / (gamma * gamma), tol);
    Json j;
    j["n"] = t.size();
    j["kind"] = "distance";
    j["gram"] = gram_to_json(g);
    j["matches_gromov_rescaling"] =
        matrix_close(normalized_rescale(grm, tol).K(), g.K(), tol.eq);
    return j;
  }
  Json j;
  j["n"] = t.size();
  TreeWeight w = [&] {
    if (lambda > 0.0) {
      j["kind"] = "gromov";
      std::vector<double> totals(t.size());
      for (int v = 0; v < t.size(); ++v)
        totals[v] = std::pow(lambda, t.depth_length(v));
      return TreeWeight::validated(t, std::move(totals));
    }
    if (ti.omega.empty())
      throw ValidationError({"BadTree: omega required unless --lambda/--gamma given"});
    j["kind"] = "weighted";
    return TreeWeight::validated(t, ti.omega);
  }();
  GramSpace g = tree_kernel(t, w, tol);
  j["gram"] = gram_to_json(g);
  j.update(tree_checks(t, w, g, tol));
  return j;
}

Json run_hartz(const Json& in, const Tolerances& tol) {
  if (in.contains("E")) return gram_to_json(reconstruct_from_hartz(hartz_from_json(in), tol));
  return hartz_to_json(hartz_data(gram_from_json(in, tol), tol));
}

Json run_multnorm(const Json& ing, const Json& ins, const Tolerances& tol) {
  GramSpace g = gram_from_json(ing, tol);
  std::vector<Complex> values = symbol_from_json(ins);
  MultiplierNormInfo info;
  double nrm = multiplier_norm(g, values, tol, &info);
  Json j;
  j["n"] = g.n();
  j["norm"] = nrm;
  if (info.jitter > 0.0) j["jitter"] = info.jitter;
  return j;
}

int run_batch(const std::string& dir, const Tolerances& tol, bool emit_points,
              int basepoint) {
  if (!fs::is_directory(dir)) {
    write_output(Json{{"error", "validation"},
                      {"issues", {"CannotOpen: " + dir + " is not a directory"}}},
                 "");
    return 1;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const fs::path& p = entry.path();
    if (p.extension() != ".json") continue;
    if (p.stem().string().ends_with(".analysis")) continue;
    files.push_back(p);
  }
  std::sort(files.begin(), files.end());
  int worst = 0;
  Json index = Json::object();
  for (const auto& p : files) {
    Outcome oc = guarded([&] {
      return analyze_report(gram_from_json(read_json(p.string()), tol), tol,
                            emit_points, basepoint);
    });
    fs::path out = p;
    out.replace_extension(".analysis.json");
    std::ofstream o(out);
    o << dump_json(oc.report);
    index[p.filename().string()] = oc.code;
    worst = std::max(worst, oc.code);
  }
  write_output(Json{{"batch", dir}, {"processed", index}}, "");
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gram spaces with the complete Pick property and their "
               "hyperbolic point configurations"};
  app.require_subcommand(1);

  Tolerances tol;
  std::string output;
  app.add_option("--tol-eq", tol.eq, "relative equality tolerance");
  app.add_option("--tol-psd", tol.psd, "semidefiniteness slack");
  app.add_option("--tol-zero", tol.zero, "vanishing threshold");
  app.add_option("--tol-rank", tol.rank, "rank decision threshold");
  app.add_option("-o,--output", output, "output path ('-' for stdout)");

  std::string in_a, in_b, batch_dir;
  bool emit_points = false;
  int basepoint = 1;
  double tol_class = 1e-7, lambda = 0.0, gamma = 0.0;

  CLI::App* analyze = app.add_subcommand("analyze", "full invariant report of a Gram space");
  analyze->add_option("input", in_a, "Gram JSON ('-' for stdin)");
  analyze->add_option("--batch", batch_dir, "process every *.json in a directory");
  analyze->add_flag("--emit-points", emit_points, "append embedding coordinates");
  analyze->add_option("--basepoint", basepoint, "1-based basepoint index")
      ->check(CLI::PositiveNumber);

  CLI::App* embed_cmd = app.add_subcommand("embed", "realize a Gram space or invariant data in the ball");
  embed_cmd->add_option("input", in_a, "Gram or invariant JSON")->required();

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a configuration");
  classify_cmd->add_option("input", in_a, "PointSet or Gram JSON")->required();
  classify_cmd->add_option("--tol-class", tol_class, "classification tolerance");

  CLI::App* congruent_cmd = app.add_subcommand("congruent", "test two point sets for congruence");
  congruent_cmd->add_option("a", in_a, "first PointSet JSON")->required();
  congruent_cmd->add_option("b", in_b, "second PointSet JSON")->required();

  CLI::App* tree_cmd = app.add_subcommand("tree", "tree-kernel space from a rooted tree");
  tree_cmd->add_option("input", in_a, "Tree JSON")->required();
  tree_cmd->add_option("--lambda", lambda, "Gromov kernel base (> 1)");
  tree_cmd->add_option("--gamma", gamma, "distance kernel base in (0, 1)");

  CLI::App* hartz_cmd = app.add_subcommand("hartz", "multiplier column data of a Gram space, or its inverse");
  hartz_cmd->add_option("input", in_a, "Gram JSON or {n, E} JSON")->required();

  CLI::App* multnorm_cmd = app.add_subcommand("multnorm", "multiplier norm of a symbol");
  multnorm_cmd->add_option("gram", in_a, "Gram JSON")->required();
  multnorm_cmd->add_option("symbol", in_b, "symbol JSON {values: [[re,im],...]}")->required();

  for (CLI::App* sub : {analyze, embed_cmd, classify_cmd, congruent_cmd, tree_cmd,
                        hartz_cmd, multnorm_cmd})
    sub->fallthrough();
  CLI11_PARSE(app, argc, argv);

  if (!tol.valid()) {
    write_output(Json{{"error", "validation"},
                      {"issues", {"BadTolerances: must lie in (0, 1e-2)"}}},
                 output);
    return 1;
  }

  if (analyze->parsed() && !batch_dir.empty())
    return run_batch(batch_dir, tol, emit_points, basepoint - 1);

  Outcome oc = guarded([&]() -> Json {
    if (analyze->parsed()) {
      if (in_a.empty()) throw ValidationError({"MissingInput: analyze needs a file or --batch"});
      return analyze_report(gram_from_json(read_json(in_a), tol), tol, emit_points,
                            basepoint - 1);
    }
    if (embed_cmd->parsed()) return run_embed(read_json(in_a), tol);
    if (classify_cmd->parsed()) return run_classify(read_json(in_a), tol_class, tol);
    if (congruent_cmd->parsed()) return run_congruent(read_json(in_a), read_json(in_b), tol);
    if (tree_cmd->parsed()) return run_tree(read_json(in_a), lambda, gamma, tol);
    if (hartz_cmd->parsed()) return run_hartz(read_json(in_a), tol);
    if (multnorm_cmd->parsed()) return run_multnorm(read_json(in_a), read_json(in_b), tol);
    throw DomainError("unrecognized verb");
  });
  try {
    write_output(oc.report, output);
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return oc.code;
}
