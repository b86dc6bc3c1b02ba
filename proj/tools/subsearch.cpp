// Copyright 2026 The subsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: validation, density, solving, decomposition, the
// search game, scheduling adapters, and fixture generation. All solver
// commands are deterministic; reports are emitted as text or JSON.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "subsearch/density.hpp"
#include "subsearch/errors.hpp"
#include "subsearch/game.hpp"
#include "subsearch/generators.hpp"
#include "subsearch/io.hpp"
#include "subsearch/sidney.hpp"
#include "subsearch/spd.hpp"

namespace {

using json = nlohmann::json;
using namespace subsearch;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNotDecomposable = 4;

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReportSink {
  bool as_json = false;
  json report;
  std::vector<std::string> lines;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void meta(const std::string& command, const std::string& digest,
            json options) {
    report["command"] = command;
    report["digest"] = digest;
    report["options"] = std::move(options);
  }
  void line(const std::string& text) { lines.push_back(text); }
  void flush() {
    auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    if (as_json) {
      report["wall_ms"] = wall.count();
      std::cout << report.dump(2) << "\n";
    } else {
      for (const std::string& text : lines) std::cout << text << "\n";
    }
  }
};

json value_json(const Value& v) {
  if (v.is_rational()) return v.str();
  return v.to_double();
}

json order_json(const GroundSet& ground, const SearchOrder& order) {
  json out = json::array();
  for (int j : order.perm) out.push_back(ground.label(j));
  return out;
}

std::string order_text(const GroundSet& ground, const SearchOrder& order) {
  std::string out;
  for (size_t i = 0; i < order.perm.size(); ++i) {
    if (i) out += " ";
    out += ground.label(order.perm[i]);
  }
  return out;
}

json witness_json(const GroundSet& ground,
                  const std::optional<StructureWitness>& w) {
  if (!w) return nullptr;
  json out;
  out["set"] = ground.subset_to_string(w->a);
  if (w->s >= 0) out["s"] = ground.label(w->s);
  if (w->t >= 0) out["t"] = ground.label(w->t);
  return out;
}

void ensure_valid(const SearchInstance& instance, bool skip, ReportSink& sink) {
  if (skip) return;
  ValidationReport report = validate_instance(instance);
  if (report.ok) return;
  json issues = json::array();
  std::string text;
  for (const ValidationIssue& issue : report.issues) {
    issues.push_back({{"what", issue.what},
                      {"witness", witness_json(instance.ground(), issue.witness)}});
    if (!text.empty()) text += "; ";
    text += issue.what;
  }
  sink.report["validation"] = {{"ok", false}, {"issues", issues}};
  throw ValidationFailure("instance failed validation: " + text);
}

int cmd_validate(const std::string& path, ReportSink& sink) {
  LoadedInstance loaded = load_instance_file(path);
  sink.meta("validate", loaded.digest, json::object());
  ValidationReport report = validate_instance(loaded.instance);
  const GroundSet& ground = loaded.instance.ground();

  json issues = json::array();
  for (const ValidationIssue& issue : report.issues) {
    issues.push_back(
        {{"what", issue.what}, {"witness", witness_json(ground, issue.witness)}});
    sink.line("violation: " + issue.what);
  }
  sink.report["result"] = {
      {"ok", report.ok},
      {"issues", issues},
      {"f_flags", json{{"normalized", report.f_structure.flags.normalized},
                       {"nondecreasing", report.f_structure.flags.nondecreasing},
                       {"submodular", report.f_structure.flags.submodular},
                       {"supermodular", report.f_structure.flags.supermodular},
                       {"modular", report.f_structure.flags.modular}}},
      {"g_flags", json{{"normalized", report.g_structure.flags.normalized},
                       {"nondecreasing", report.g_structure.flags.nondecreasing},
                       {"submodular", report.g_structure.flags.submodular},
                       {"supermodular", report.g_structure.flags.supermodular},
                       {"modular", report.g_structure.flags.modular}}}};
  sink.line(report.ok ? "ok" : "validation failed");
  sink.flush();
  return report.ok ? kExitOk : kExitValidation;
}

int cmd_density(const std::string& path, bool no_validate, ReportSink& sink) {
  LoadedInstance loaded = load_instance_file(path);
  sink.meta("density", loaded.digest, json{{"no_validate", no_validate}});
  ensure_valid(loaded.instance, no_validate, sink);
  DensityResult result = max_density_subset(loaded.instance);
  const GroundSet& ground = loaded.instance.ground();
  sink.report["result"] = {{"set", ground.subset_to_string(result.set)},
                           {"rho", value_json(result.rho)},
                           {"maximal", result.maximal}};
  sink.line("M = " + ground.subset_to_string(result.set));
  sink.line("rho* = " + result.rho.str());
  sink.flush();
  return kExitOk;
}

int cmd_solve(const std::string& path, const std::string& method,
              bool no_validate, ReportSink& sink) {
  LoadedInstance loaded = load_instance_file(path);
  sink.meta("solve", loaded.digest,
            json{{"method", method}, {"no_validate", no_validate}});
  ensure_valid(loaded.instance, no_validate, sink);
  const SearchInstance& instance = loaded.instance;
  const GroundSet& ground = instance.ground();

  CostReport report;
  if (method == "sidney") {
    report = two_approx_search(instance);
  } else if (method == "brute") {
    auto [order, cost] = brute_force_optimal(instance);
    report = CostReport{order, cost, cost, Value::from_int(1, instance.mode())};
  } else if (method == "spd") {
    auto solved = spd_optimal_search(instance);
    if (!solved)
      throw NotDecomposableError(
          "instance is not series-parallel decomposable; try --method sidney "
          "or brute");
    report = CostReport{solved->first, solved->second, solved->second,
                        Value::from_int(1, instance.mode())};
  } else {
    throw CLI::ValidationError("--method must be sidney, spd or brute");
  }

  json certification = {{"lower_bound", value_json(report.lower_bound)},
                        {"ratio_bound", value_json(report.ratio_bound)}};
  try {
    CurvatureReport curv = curvature_report(instance);
    certification["kappa_f"] = value_json(curv.kappa_f);
    certification["kappa_gsharp"] = value_json(curv.kappa_gsharp);
    certification["theta"] = value_json(curv.theta);
    certification["curvature_ratio_bound"] =
        value_json(curvature_ratio_bound(instance));
  } catch (const std::domain_error&) {
    // Curvature is undefined when some singleton carries zero cost or the
    // dual weight degenerates; the solve result stands on its own.
  }
  sink.report["result"] = {{"order", order_json(ground, report.order)},
                           {"cost", value_json(report.cost)}};
  sink.report["certification"] = certification;
  sink.line("order: " + order_text(ground, report.order));
  sink.line("cost = " + report.cost.str());
  sink.line("lower_bound = " + report.lower_bound.str());
  sink.line("ratio_bound = " + report.ratio_bound.str());
  sink.flush();
  return kExitOk;
}

json tree_json(const GroundSet& ground, const SPDTree& node) {
  json out;
  out["subset"] = ground.subset_to_string(node.subset);
  switch (node.kind) {
    case SPDTree::Kind::kLeaf:
      out["kind"] = "leaf";
      out["element"] = ground.label(node.element);
      break;
    case SPDTree::Kind::kSeries:
      out["kind"] = "series";
      out["origin"] = node.origin == SeriesOrigin::kFInitial ? "f_initial"
                                                             : "gsharp_initial";
      out["first"] = tree_json(ground, *node.first);
      out["rest"] = tree_json(ground, *node.second);
      break;
    case SPDTree::Kind::kParallel:
      out["kind"] = "parallel";
      out["left"] = tree_json(ground, *node.first);
      out["right"] = tree_json(ground, *node.second);
      break;
  }
  return out;
}

int cmd_decompose(const std::string& path, bool no_validate,
                  ReportSink& sink) {
  LoadedInstance loaded = load_instance_file(path);
  sink.meta("decompose", loaded.digest, json{{"no_validate", no_validate}});
  ensure_valid(loaded.instance, no_validate, sink);
  auto tree = spd_decompose(loaded.instance);
  if (!tree) {
    sink.report["result"] = {{"decomposable", false}};
    sink.line("not series-parallel decomposable");
  } else {
    sink.report["result"] = {
        {"decomposable", true},
        {"tree", tree_json(loaded.instance.ground(), *tree)}};
    sink.line("decomposable");
    sink.line(tree_json(loaded.instance.ground(), *tree).dump());
  }
  sink.flush();
  return kExitOk;
}

json sampler_json(const GroundSet& ground, const SearcherStrategy& node) {
  json out;
  out["subset"] = ground.subset_to_string(node.subset);
  switch (node.kind) {
    case SearcherStrategy::Kind::kLeafOrder: {
      out["kind"] = "leaf_order";
      json order = json::array();
      for (int j : node.order) order.push_back(ground.label(j));
      out["order"] = order;
      break;
    }
    case SearcherStrategy::Kind::kSeries: {
      out["kind"] = "series";
      json prefix = json::array();
      for (int j : node.prefix) prefix.push_back(ground.label(j));
      out["prefix"] = prefix;
      out["rest"] = sampler_json(ground, *node.rest);
      break;
    }
    case SearcherStrategy::Kind::kParallel:
      out["kind"] = "parallel";
      out["q"] = value_json(node.q);
      out["first"] = sampler_json(ground, *node.first_side);
      out["second"] = sampler_json(ground, *node.second_side);
      break;
    case SearcherStrategy::Kind::kFirstThenUniform: {
      out["kind"] = "first_then_uniform";
      json probs = json::object();
      for (const auto& [j, prob] : node.first_prob)
        probs[ground.label(j)] = value_json(prob);
      out["first_prob"] = probs;
      break;
    }
  }
  return out;
}

json hider_json(const GroundSet& ground, const HiderStrategy& x) {
  json out = json::object();
  for (int s = 0; s < ground.size(); ++s)
    out[ground.label(s)] = value_json(x.x[s]);
  return out;
}

int cmd_game(const std::string& path, const std::string& method,
             const std::string& oracle_method, long iters, double tol,
             ReportSink& sink) {
  LoadedCostFunction loaded = load_cost_function_file(path);
  sink.meta("game", loaded.digest,
            json{{"method", method},
                 {"oracle_method", oracle_method},
                 {"iters", iters},
                 {"tol", tol}});
  const SetFunction& f = *loaded.f;
  const GroundSet& ground = f.ground();

  if (method == "oracle") {
    MatrixGameOptions options;
    options.method = oracle_method == "fp" ? MatrixGameMethod::kFictitiousPlay
                                           : MatrixGameMethod::kExactLp;
    options.iterations = iters;
    options.tol = tol;
    MatrixGameResult result = matrix_game_solve(f, options);
    HiderStrategy hider{result.hider};
    auto [in_poly, witness] = in_scaled_base_polyhedron(
        f, hider, options.method == MatrixGameMethod::kExactLp ? 0.0 : tol);
    json searcher = json::array();
    for (const auto& [order, prob] : result.searcher)
      searcher.push_back(
          {{"order", order_json(ground, order)}, {"p", value_json(prob)}});
    sink.report["result"] = {{"value", value_json(result.value)},
                             {"lower", value_json(result.lower)},
                             {"upper", value_json(result.upper)},
                             {"iterations", result.iterations},
                             {"hider", hider_json(ground, hider)},
                             {"searcher", searcher}};
    sink.report["certification"] = {{"hider_in_scaled_base_polyhedron", in_poly}};
    sink.line("value = " + result.value.str() + "  (bounds [" +
              result.lower.str() + ", " + result.upper.str() + "])");
    sink.flush();
    return kExitOk;
  }

  if (method == "approx") {
    CurvatureStrategies approx = curvature_approx_strategies(f);
    auto [in_poly, witness] = in_scaled_base_polyhedron(f, approx.hider);
    sink.report["result"] = {
        {"factor", value_json(approx.factor)},
        {"hider", hider_json(ground, approx.hider)},
        {"searcher", sampler_json(ground, *approx.searcher)}};
    sink.report["certification"] = {{"hider_in_scaled_base_polyhedron", in_poly}};
    sink.line("factor = " + approx.factor.str());
    sink.flush();
    return kExitOk;
  }

  GameSolution solution;
  if (method == "modular") {
    solution = modular_game_solution(f);
  } else if (method == "spd") {
    auto solved = game_value_spd(f);
    if (!solved)
      throw NotDecomposableError(
          "cost function is not series-parallel decomposable; try --method "
          "oracle");
    solution = std::move(*solved);
  } else {
    throw CLI::ValidationError("--method must be spd, modular, approx or oracle");
  }

  auto [in_poly, witness] = in_scaled_base_polyhedron(f, solution.hider);
  std::vector<Value> costs = expected_cost_vector(f, *solution.searcher);
  bool equalized = true;
  json cost_vec = json::object();
  for (int s = 0; s < ground.size(); ++s) {
    cost_vec[ground.label(s)] = value_json(costs[s]);
    if (!costs[s].approx_eq(solution.value, 1e-9)) equalized = false;
  }
  sink.report["result"] = {{"value", value_json(solution.value)},
                           {"phi", value_json(solution.phi)},
                           {"hider", hider_json(ground, solution.hider)},
                           {"searcher", sampler_json(ground, *solution.searcher)}};
  sink.report["certification"] = {
      {"hider_in_scaled_base_polyhedron", in_poly},
      {"expected_cost_vector", cost_vec},
      {"equalized", equalized}};
  sink.line("value = " + solution.value.str());
  sink.line("phi = " + solution.phi.str());
  sink.flush();
  return kExitOk;
}

int cmd_sched(const std::string& path, const std::string& method,
              bool no_validate, ReportSink& sink) {
  LoadedSchedule loaded = load_schedule_file(path);
  sink.meta("sched", loaded.digest,
            json{{"method", method}, {"no_validate", no_validate}});
  const PrecedenceInstance& inst = loaded.instance;
  GroundSet ground{inst.jobs};

  if (method == "smith") {
    if (!inst.edges.empty())
      throw ValidationFailure("smith's rule applies without precedence only");
    if (inst.weights.empty())
      throw ValidationFailure("smith's rule needs per-job weights");
    SearchOrder order = smith_rule(inst.p, inst.weights);
    SearchInstance search(cost_oracle(inst), weight_oracle(inst));
    Value cost = expected_cost(search, order);
    sink.report["result"] = {{"order", order_json(ground, order)},
                             {"cost", value_json(cost)}};
    sink.line("order: " + order_text(ground, order));
    sink.line("cost = " + cost.str());
    sink.flush();
    return kExitOk;
  }

  SearchInstance search(cost_oracle(inst), weight_oracle(inst));
  ensure_valid(search, no_validate, sink);
  SolveMethod solve_method;
  if (method == "sidney")
    solve_method = SolveMethod::kSidney;
  else if (method == "spd")
    solve_method = SolveMethod::kSpd;
  else if (method == "brute")
    solve_method = SolveMethod::kBrute;
  else
    throw CLI::ValidationError("--method must be sidney, spd, brute or smith");

  CostReport report = schedule(inst, solve_method);
  sink.report["result"] = {{"order", order_json(ground, report.order)},
                           {"cost", value_json(report.cost)}};
  sink.report["certification"] = {
      {"lower_bound", value_json(report.lower_bound)},
      {"ratio_bound", value_json(report.ratio_bound)}};
  sink.line("order: " + order_text(ground, report.order));
  sink.line("cost = " + report.cost.str());
  sink.flush();
  return kExitOk;
}

int cmd_gen(const GenRequest& request, const std::string& out_path,
            ReportSink& sink) {
  std::string text = generate_instance_json(request);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text << "\n";
    sink.line("wrote " + out_path);
    sink.meta("gen", sha256_hex(text),
              json{{"family", request.family},
                   {"n", request.n},
                   {"k", request.k},
                   {"seed", request.seed}});
    sink.report["result"] = {{"path", out_path}};
    sink.flush();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"submodular search: solvers, games and scheduling adapters"};
  app.require_subcommand(1);

  std::string file, method = "sidney", oracle_method = "lp", out_path;
  bool no_validate = false, as_json = false;
  long iters = 200000;
  double tol = 1e-3;
  GenRequest gen_request;

  auto add_common = [&](CLI::App* cmd, bool with_method = false) {
    cmd->add_option("file", file, "instance file")->required();
    cmd->add_flag("--json", as_json, "emit a JSON report");
    cmd->add_flag("--no-validate", no_validate, "skip instance validation");
    if (with_method) cmd->add_option("--method", method, "solver method");
  };

  CLI::App* validate = app.add_subcommand("validate", "check an instance");
  validate->add_option("file", file, "instance file")->required();
  validate->add_flag("--json", as_json, "emit a JSON report");

  CLI::App* density = app.add_subcommand("density", "maximum density subset");
  add_common(density);

  CLI::App* solve = app.add_subcommand("solve", "search for a cheap order");
  add_common(solve, true);

  CLI::App* decompose =
      app.add_subcommand("decompose", "series/parallel decomposition");
  add_common(decompose);

  CLI::App* game = app.add_subcommand("game", "zero-sum search game");
  game->add_option("file", file, "cost function file")->required();
  game->add_flag("--json", as_json, "emit a JSON report");
  game->add_option("--method", method, "spd | modular | approx | oracle");
  game->add_option("--oracle-method", oracle_method, "lp | fp");
  game->add_option("--iters", iters, "fictitious play iteration cap");
  game->add_option("--tol", tol, "fictitious play stopping gap");

  CLI::App* sched = app.add_subcommand("sched", "scheduling adapter");
  add_common(sched, true);

  CLI::App* gen = app.add_subcommand("gen", "generate a fixture instance");
  gen->add_option("family", gen_request.family,
                  "coverage | concave_modular | modular | tree | gsp | kuniform")
      ->required();
  gen->add_option("--n", gen_request.n, "ground set size")->required();
  gen->add_option("--seed", gen_request.seed, "rng seed");
  gen->add_option("--k", gen_request.k, "subset size for kuniform");
  gen->add_option("-o,--out", out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  ReportSink sink;
  sink.as_json = as_json;
  try {
    if (validate->parsed()) return cmd_validate(file, sink);
    if (density->parsed()) return cmd_density(file, no_validate, sink);
    if (solve->parsed()) return cmd_solve(file, method, no_validate, sink);
    if (decompose->parsed()) return cmd_decompose(file, no_validate, sink);
    if (game->parsed())
      return cmd_game(file, method == "sidney" ? "spd" : method, oracle_method,
                      iters, tol, sink);
    if (sched->parsed()) return cmd_sched(file, method, no_validate, sink);
    if (gen->parsed()) return cmd_gen(gen_request, out_path, sink);
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const NotDecomposableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotDecomposable;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
