#include "spectraplex/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spectraplex/errors.hpp"

namespace spectraplex {

namespace {

// Visits all compositions of `total` units into `parts` parts, lexicographic.
template <typename F>
void for_each_composition(int total, int parts, F&& visit) {
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == parts - 1) {
      cur[pos] = left;
      visit(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, total);
}

}  // namespace

double grid_lipschitz_slack(int pair_count, double step) { return 4.0 * step * pair_count; }

GridSearchReport grid_search_simplex(const MultiplexSpec& spec, double c, ObjectiveKind objective, double step) {
  require_valid(spec);
  const int N = spec.pair_count();
  if (N > kGridPairLimit)
    throw InputError("grid search is limited to " + std::to_string(kGridPairLimit) +
                     " interlayer pairs; use the optimizer with kkt_check for larger instances");
  if (!(c >= 0.0)) throw InputError("budget must be nonnegative");
  GridSearchReport rep;
  rep.grid_step = step;
  if (c == 0.0) {
    const Eigen::VectorXd w = Eigen::VectorXd::Zero(N);
    rep.best_weights = WeightAllocation(w, 0.0);
    rep.best_value = evaluate_objective(spec, w, objective);
    rep.evaluations = 1;
    return rep;
  }
  if (!(step > 0.0)) throw InputError("grid step must be positive");
  const double units_real = c / step;
  const int units = static_cast<int>(std::llround(units_real));
  if (units < 1 || std::abs(units_real - units) > 1e-9 * std::max(1.0, units_real))
    throw InputError("grid step must divide the budget");

  const double sign = objective == ObjectiveKind::MaxLambda2 ? 1.0 : -1.0;
  double best = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_w;
  for_each_composition(units, N, [&](const std::vector<int>& parts) {
    Eigen::VectorXd w(N);
    for (int k = 0; k < N; ++k) w[k] = c * parts[k] / units;
    const double v = sign * evaluate_objective(spec, w, objective);
    ++rep.evaluations;
    if (v > best) {
      best = v;
      best_w = w;
    }
  });
  rep.best_weights = WeightAllocation(best_w, best_w.sum());
  rep.best_value = sign * best;
  return rep;
}

double KktReport::worst() const {
  return std::max({complementarity, active_slack, trace_residual, barycenter_residual, psd_residual,
                   pair_violation});
}

KktReport kkt_check(const MultiplexSpec& spec, double c, const OptimizationResult& result) {
  KktReport rep;
  if (c == 0.0) {
    rep.vacuous = true;
    return rep;
  }
  const Eigen::VectorXd& w = result.weights.weights();
  const Eigen::MatrixXd l = assemble_supra_laplacian(spec, w);
  const int n = spec.total_nodes();
  auto min_eig = [](const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
  };
  const double floor = 1e-8;
  Eigen::VectorXd pk;
  const auto kind = result.objective;
  if (result.dual.x) {
    const Eigen::MatrixXd& x = *result.dual.x;
    const Eigen::MatrixXd ee = Eigen::MatrixXd::Ones(n, n);
    const Eigen::MatrixXd shifted = l + result.shift_mu * ee - result.lambda2 * Eigen::MatrixXd::Identity(n, n);
    rep.complementarity = std::max(rep.complementarity, std::abs((x.array() * shifted.array()).sum()));
    rep.trace_residual = std::max(rep.trace_residual, std::abs(x.trace() - 1.0));
    rep.barycenter_residual = std::abs(x.sum());
    rep.psd_residual = std::max(rep.psd_residual, std::max(0.0, -min_eig(x)));
  }
  if (result.dual.y) {
    const Eigen::MatrixXd& y = *result.dual.y;
    const Eigen::MatrixXd shifted = result.lambda_n * Eigen::MatrixXd::Identity(n, n) - l;
    rep.complementarity = std::max(rep.complementarity, std::abs((y.array() * shifted.array()).sum()));
    rep.trace_residual = std::max(rep.trace_residual, std::abs(y.trace() - 1.0));
    rep.psd_residual = std::max(rep.psd_residual, std::max(0.0, -min_eig(y)));
  }
  if (kind == ObjectiveKind::MaxLambda2) {
    pk = pair_inner_products(spec, *result.dual.x);
    const double xi = -pk.maxCoeff();
    for (int k = 0; k < pk.size(); ++k) {
      rep.pair_violation = std::max(rep.pair_violation, pk[k] + result.dual.xi);
      if (w[k] > floor) rep.active_slack = std::max(rep.active_slack, std::abs(pk[k] + xi));
    }
  } else {
    pk = pair_inner_products(spec, kind == ObjectiveKind::MinLambdaN ? *result.dual.y
                                                                      : Eigen::MatrixXd(*result.dual.y - *result.dual.x));
    const double xi = pk.minCoeff();
    for (int k = 0; k < pk.size(); ++k) {
      rep.pair_violation = std::max(rep.pair_violation, result.dual.xi - pk[k]);
      if (w[k] > floor) rep.active_slack = std::max(rep.active_slack, std::abs(pk[k] - xi));
    }
  }
  return rep;
}

MonotonicityReport monotonicity_probe(const MultiplexSpec& spec, int trials, std::uint64_t seed, double delta_sign) {
  require_valid(spec);
  MonotonicityReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wdist(0.0, 2.0);
  std::uniform_real_distribution<double> ddist(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, spec.pair_count() - 1);
  const int N = spec.pair_count();
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd w(N);
    for (int k = 0; k < N; ++k) w[k] = wdist(rng);
    const int k = pick(rng);
    const double delta = delta_sign == 0.0 ? 0.0 : std::copysign(1.0 - ddist(rng), delta_sign);
    Eigen::VectorXd w2 = w;
    w2[k] += delta;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e1(assemble_supra_laplacian(spec, w), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e2(assemble_supra_laplacian(spec, w2), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd diff = e2.eigenvalues() - e1.eigenvalues();
    double violation = 0.0;
    if (delta == 0.0) {
      violation = std::max(0.0, diff.cwiseAbs().maxCoeff() - 1e-12);
    } else if (delta > 0.0) {
      violation = std::max(0.0, -diff.minCoeff() - 1e-9);
    } else {
      violation = std::max(0.0, diff.maxCoeff() - 1e-9);
    }
    rep.worst_violation = std::max(rep.worst_violation, violation);
    rep.holds = rep.holds && violation == 0.0;
    ++rep.trials;
  }
  return rep;
}

}  // namespace spectraplex
