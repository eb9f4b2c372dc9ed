#include "spectraplex/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "spectraplex/embedding.hpp"
#include "spectraplex/errors.hpp"

namespace spectraplex {

namespace {

// Feature compared across neighbouring grid points; returns a value whose
// change marks a transition.
using Feature = std::function<int(const SweepRecord&)>;

double bisect(const MultiplexSpec& spec, ObjectiveKind objective, const SweepOptions& opts, double lo, double hi,
              const Feature& feature, int left_value) {
  while (hi - lo > opts.refine_tol) {
    const double mid = 0.5 * (lo + hi);
    const SweepRecord rec = solve_record(spec, objective, mid, opts);
    if (rec.ok && feature(rec) == left_value) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

int certificate_dimension(const OptimizationResult& result, double rank_tol) {
  const bool use_y = result.objective == ObjectiveKind::MinLambdaN;
  const auto& m = use_y ? result.dual.y : result.dual.x;
  if (!m) return 0;
  const auto source = use_y ? EmbeddingSource::LambdanDual
                            : (result.objective == ObjectiveKind::MinWidth ? EmbeddingSource::WidthDualU
                                                                           : EmbeddingSource::Lambda2Dual);
  return gram_embed(*m, rank_tol, source).effective_dimension;
}

std::vector<double> budget_grid(double c_min, double c_max, int points, bool log_grid) {
  if (!(c_min >= 0.0) || !(c_max > c_min)) throw InputError("budget grid needs 0 <= c_min < c_max");
  if (points < 2) throw InputError("budget grid needs at least two points");
  std::vector<double> grid(points);
  if (!log_grid) {
    for (int i = 0; i < points; ++i) grid[i] = c_min + (c_max - c_min) * i / (points - 1);
    return grid;
  }
  int start = 0;
  double lo = c_min;
  if (c_min == 0.0) {
    grid[0] = 0.0;
    start = 1;
    lo = c_max * 1e-3;
  }
  const int count = points - start;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 1.0 : static_cast<double>(i) / (count - 1);
    grid[start + i] = std::exp(std::log(lo) + t * (std::log(c_max) - std::log(lo)));
  }
  grid.back() = c_max;
  return grid;
}

SweepRecord solve_record(const MultiplexSpec& spec, ObjectiveKind objective, double c, const SweepOptions& opts) {
  SweepRecord rec;
  rec.budget = c;
  try {
    const OptimizationResult r = optimize(spec, c, objective, opts.solver);
    rec.ok = true;
    rec.status = r.status;
    rec.objective_opt = r.objective_value;
    rec.lambda2 = r.lambda2;
    rec.lambda_n = r.lambda_n;
    rec.duality_gap = r.duality_gap;
    rec.weights = r.weights.weights();
    const int n = static_cast<int>(r.eigenvalues.size());
    const int k = std::min(opts.top_k, n);
    rec.head_eigenvalues = r.eigenvalues.head(k);
    rec.tail_eigenvalues = r.eigenvalues.tail(k);
    rec.multiplicity = r.optimal_multiplicity();
    rec.embedding_dimension = certificate_dimension(r, opts.rank_tol);
    const int N = spec.pair_count();
    rec.objective_uniform =
        evaluate_objective(spec, Eigen::VectorXd::Constant(N, c / N), objective);
    rec.bounds = spectral_bounds(spec, c);
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  return rec;
}

SweepResult sweep_budget(const MultiplexSpec& spec, ObjectiveKind objective, double c_min, double c_max, int points,
                         const SweepOptions& opts) {
  require_valid(spec);
  SweepResult out;
  out.objective = objective;
  out.budgets = budget_grid(c_min, c_max, points, opts.log_grid);
  for (double c : out.budgets) out.records.push_back(solve_record(spec, objective, c, opts));

  const int n = spec.total_nodes();
  const auto dom = dominant_layer(spec);
  const double top = dom.lambda_top;

  struct Detector {
    std::string kind;
    Feature feature;
  };
  std::vector<Detector> detectors{
      {"multiplicity", [](const SweepRecord& r) { return r.multiplicity; }},
      {"dimension", [](const SweepRecord& r) { return r.embedding_dimension; }},
  };
  if (objective == ObjectiveKind::MaxLambda2)
    detectors.push_back({"linear_exit", [n](const SweepRecord& r) {
                           return r.objective_opt < 4.0 * r.budget / n - 1e-6 ? 1 : 0;
                         }});
  if (objective == ObjectiveKind::MinLambdaN)
    detectors.push_back(
        {"plateau_exit", [top](const SweepRecord& r) { return r.objective_opt > top + 1e-6 ? 1 : 0; }});

  for (const auto& det : detectors) {
    for (std::size_t i = 0; i + 1 < out.records.size(); ++i) {
      const auto& a = out.records[i];
      const auto& b = out.records[i + 1];
      // Zero budget is a degenerate spectrum; transitions start after it.
      if (!a.ok || !b.ok || a.budget == 0.0) continue;
      const int fa = det.feature(a);
      const int fb = det.feature(b);
      if (fa == fb) continue;
      Transition t;
      t.kind = det.kind;
      t.multiplicity_before = fa;
      t.multiplicity_after = fb;
      t.budget = opts.refine ? bisect(spec, objective, opts, a.budget, b.budget, det.feature, fa)
                             : 0.5 * (a.budget + b.budget);
      out.transitions.push_back(t);
    }
  }
  std::stable_sort(out.transitions.begin(), out.transitions.end(),
                   [](const Transition& x, const Transition& y) { return x.budget < y.budget; });
  return out;
}

}  // namespace spectraplex
