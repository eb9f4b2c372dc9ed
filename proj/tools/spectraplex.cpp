#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spectraplex/centrality.hpp"
#include "spectraplex/embedding.hpp"
#include "spectraplex/errors.hpp"
#include "spectraplex/generators.hpp"
#include "spectraplex/io.hpp"
#include "spectraplex/optimizer.hpp"
#include "spectraplex/oracle.hpp"
#include "spectraplex/spectral.hpp"
#include "spectraplex/sweep.hpp"

using namespace spectraplex;

namespace {

struct Global {
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::string out;
  std::string format = "json";
};

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(g.out, text);
  }
}

ObjectiveKind objective_or_throw(const std::string& name) {
  auto k = parse_objective(name);
  if (!k) throw InputError("unknown objective '" + name + "' (lambda2, lambdan, width)");
  return *k;
}

SolverOptions solver_options(const Global& g) {
  SolverOptions o;
  o.gap_tolerance = g.tol;
  return o;
}

EmbeddingSource source_or_throw(const std::string& name, ObjectiveKind kind) {
  if (name == "scaled") return EmbeddingSource::Scaled;
  if (name == "auto") {
    return kind == ObjectiveKind::MinLambdaN ? EmbeddingSource::LambdanDual
           : kind == ObjectiveKind::MinWidth ? EmbeddingSource::WidthDualU
                                             : EmbeddingSource::Lambda2Dual;
  }
  if (name == "u") return kind == ObjectiveKind::MinWidth ? EmbeddingSource::WidthDualU : EmbeddingSource::Lambda2Dual;
  if (name == "v") return kind == ObjectiveKind::MinWidth ? EmbeddingSource::WidthDualV : EmbeddingSource::LambdanDual;
  throw InputError("unknown embedding source '" + name + "' (auto, u, v, scaled)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interlayer weight design for two-layer multiplex networks"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--tol", g.tol, "Certified duality-gap tolerance");
  app.add_option("--out", g.out, "Output path (stdout when omitted)");
  auto* format_opt =
      app.add_option("--format", g.format, "Output format (default from the --out extension)")
          ->check(CLI::IsMember({"json", "csv"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a connected random layer (or a multiplex)");
  std::string model = "ws";
  std::string second_model;
  ModelParams params;
  gen->add_option("--model", model, "ba, er, geo or ws");
  gen->add_option("--n", params.n, "Nodes");
  gen->add_option("--m", params.m, "BA attachments per node");
  gen->add_option("--p", params.p, "ER edge / WS rewiring probability");
  gen->add_option("--radius", params.radius, "Geometric radius");
  gen->add_option("--k", params.k, "WS lattice degree");
  gen->add_option("--second-model", second_model, "Also draw layer 2 (seed + 1) and write a multiplex");

  // shared solve inputs
  std::string multiplex_path;
  std::string objective = "lambda2";
  double budget = 1.0;
  auto add_problem = [&](CLI::App* sub, bool with_budget) {
    sub->add_option("--multiplex", multiplex_path, "Multiplex JSON")->required();
    sub->add_option("--objective", objective, "lambda2, lambdan or width");
    if (with_budget) sub->add_option("--budget", budget, "Total interlayer weight c")->required();
  };

  auto* solve = app.add_subcommand("solve", "Optimize interlayer weights for one budget");
  add_problem(solve, true);
  std::string embedding_out;
  solve->add_option("--embedding-out", embedding_out, "Also write the certificate embedding (CSV)");

  auto* sweep = app.add_subcommand("sweep", "Solve over a budget grid and detect transitions");
  add_problem(sweep, false);
  double cmin = 0.0;
  double cmax = 10.0;
  int points = 41;
  bool log_grid = false;
  bool no_refine = false;
  sweep->add_option("--cmin", cmin, "Smallest budget");
  sweep->add_option("--cmax", cmax, "Largest budget");
  sweep->add_option("--points", points, "Grid points");
  sweep->add_flag("--log", log_grid, "Logarithmic grid");
  sweep->add_flag("--no-refine", no_refine, "Skip bisection of transitions");

  auto* threshold = app.add_subcommand("threshold", "Report c*, c1*, Q and optional sweep-detected transitions");
  threshold->add_option("--multiplex", multiplex_path, "Multiplex JSON")->required();
  double detect_cmax = 0.0;
  threshold->add_option("--detect-cmax", detect_cmax, "Also sweep lambda2 and lambdan up to this budget");
  threshold->add_option("--points", points, "Grid points for detection");

  auto* embed = app.add_subcommand("embed", "Export a dual or scaled embedding");
  add_problem(embed, true);
  std::string source = "auto";
  double rank_tol = 1e-6;
  embed->add_option("--source", source, "auto, u, v or scaled");
  embed->add_option("--rank-tol", rank_tol, "Relative rank tolerance");

  auto* verify = app.add_subcommand("verify", "Solve and run the KKT, grid and monotonicity oracles");
  add_problem(verify, true);
  int trials = 200;
  verify->add_option("--trials", trials, "Monotonicity probe trials");

  auto* correlate = app.add_subcommand("correlate", "Correlate optimal weights with layer centralities");
  add_problem(correlate, true);

  CLI11_PARSE(app, argc, argv);
  if (format_opt->count() == 0 && g.out.size() > 4 && g.out.compare(g.out.size() - 4, 4, ".csv") == 0)
    g.format = "csv";

  try {
    if (gen->parsed()) {
      auto m1 = parse_layer_model(model);
      if (!m1) throw InputError("unknown model '" + model + "'");
      LayerGraph l1 = generate_layer(*m1, params, g.seed);
      if (second_model.empty()) {
        emit(g, layer_to_json(l1).dump(2));
      } else {
        auto m2 = parse_layer_model(second_model);
        if (!m2) throw InputError("unknown model '" + second_model + "'");
        LayerGraph l2 = generate_layer(*m2, params, g.seed + 1);
        emit(g, multiplex_to_json(MultiplexSpec(std::move(l1), std::move(l2))).dump(2));
      }
      return 0;
    }

    const MultiplexSpec spec = multiplex_from_json(read_json_file(multiplex_path));
    const auto report = validate_multiplex(spec);
    if (!report.valid) throw InputError("invalid multiplex: " + report.reasons.front());

    if (solve->parsed()) {
      const auto kind = objective_or_throw(objective);
      const auto r = optimize(spec, budget, kind, solver_options(g));
      Json j = result_to_json(r);
      if (!embedding_out.empty()) {
        const auto emb = certificate_embedding(r, source_or_throw("auto", kind));
        write_text_file(embedding_out, embedding_to_csv(emb, spec));
        j["embedding_file"] = embedding_out;
        j["embedding_dimension"] = emb.effective_dimension;
      }
      emit(g, j.dump(2));
      return r.status == SolveStatus::Optimal ? 0 : 1;
    }

    if (sweep->parsed()) {
      SweepOptions so;
      so.solver = solver_options(g);
      so.log_grid = log_grid;
      so.refine = !no_refine;
      const auto s = sweep_budget(spec, objective_or_throw(objective), cmin, cmax, points, so);
      emit(g, g.format == "csv" ? sweep_to_csv(s) : sweep_to_json(s).dump(2));
      return 0;
    }

    if (threshold->parsed()) {
      ThresholdReport t;
      t.c_star = threshold_c_star(spec);
      try {
        auto c1 = threshold_c1_star(spec, uniform_nodal_pattern(spec));
        t.c1_star = c1.c1_star;
        t.q_matrix = c1.q_matrix;
      } catch (const DomainError& e) {
        t.c1_star_note = e.what();
      }
      if (detect_cmax > 0.0) {
        SweepOptions so;
        so.solver = solver_options(g);
        for (auto kind : {ObjectiveKind::MaxLambda2, ObjectiveKind::MinLambdaN}) {
          const auto s = sweep_budget(spec, kind, 0.0, detect_cmax, points, so);
          t.transitions.insert(t.transitions.end(), s.transitions.begin(), s.transitions.end());
        }
      }
      emit(g, thresholds_to_json(t).dump(2));
      return 0;
    }

    if (embed->parsed()) {
      const auto kind = objective_or_throw(objective);
      const auto src = source_or_throw(source, kind);
      EmbeddingRealization emb;
      if (src == EmbeddingSource::Scaled) {
        emb = scaled_embedding(spec, budget, rank_tol).embedding;
      } else {
        emb = certificate_embedding(optimize(spec, budget, kind, solver_options(g)), src, rank_tol);
      }
      emit(g, g.format == "csv" ? embedding_to_csv(emb, spec) : embedding_to_json(emb, spec).dump(2));
      return 0;
    }

    if (verify->parsed()) {
      const auto kind = objective_or_throw(objective);
      const auto r = optimize(spec, budget, kind, solver_options(g));
      const auto kkt = kkt_check(spec, budget, r);
      const auto mono = monotonicity_probe(spec, trials, g.seed);
      Json j = {{"status", to_string(r.status)},
                {"gap", r.duality_gap},
                {"kkt_complementarity", kkt.complementarity},
                {"kkt_active_slack", kkt.active_slack},
                {"kkt_worst", kkt.worst()},
                {"monotonicity", mono.holds}};
      bool ok = r.status == SolveStatus::Optimal && kkt.worst() <= 1e-6 && mono.holds;
      if (spec.pair_count() <= kGridPairLimit && budget > 0.0) {
        const double step = budget / 100.0;
        const auto grid = grid_search_simplex(spec, budget, kind, step);
        const double slack = grid_lipschitz_slack(spec.pair_count(), step);
        const bool within = kind == ObjectiveKind::MaxLambda2 ? r.objective_value >= grid.best_value - slack
                                                              : r.objective_value <= grid.best_value + slack;
        j["grid_best"] = grid.best_value;
        j["grid_slack"] = slack;
        j["grid_ok"] = within;
        ok = ok && within;
      }
      j["ok"] = ok;
      emit(g, j.dump(2));
      return ok ? 0 : 1;
    }

    if (correlate->parsed()) {
      const auto r = optimize(spec, budget, objective_or_throw(objective), solver_options(g));
      const auto table = correlate_centralities(spec, r.weights.weights());
      emit(g, g.format == "csv" ? correlations_to_csv(table) : correlations_to_json(table).dump(2));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
