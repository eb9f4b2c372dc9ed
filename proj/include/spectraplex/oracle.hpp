#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "spectraplex/graph.hpp"
#include "spectraplex/optimizer.hpp"

namespace spectraplex {

/// Largest exhaustive grid: N <= 5 interlayer pairs.
inline constexpr int kGridPairLimit = 5;

struct GridSearchReport {
  WeightAllocation best_weights;
  double best_value = 0.0;
  double grid_step = 0.0;
  long evaluations = 0;
};

/// Enumerates every composition of c into N parts of size `step`, in
/// lexicographic order, evaluating the objective by full eigendecomposition.
/// Ties keep the lexicographically first point. InputError when N exceeds
/// kGridPairLimit or `step` does not divide c.
GridSearchReport grid_search_simplex(const MultiplexSpec& spec, double c, ObjectiveKind objective, double step);

/// Moving one unit of weight between pairs changes v^T L v by at most
/// 4 ||v||^2, so a grid of spacing `step` is within 4 step N of the optimum.
double grid_lipschitz_slack(int pair_count, double step);

struct KktReport {
  double complementarity = 0.0;        // <X, L(w) + mu e e^T - lambda_2 I> and/or the Y analogue
  double active_slack = 0.0;           // max |<X, L_k> + xi| over w_k > 1e-8
  double trace_residual = 0.0;
  double barycenter_residual = 0.0;    // |<X, e e^T>|
  double psd_residual = 0.0;           // negative part of the certificate spectrum
  double pair_violation = 0.0;         // max_k (<X, L_k> + xi)_+ (or the lambda_n analogue)
  bool vacuous = false;

  double worst() const;
};

KktReport kkt_check(const MultiplexSpec& spec, double c, const OptimizationResult& result);

/// Random (w, k, delta) probes: every sorted eigenvalue of L(w + delta e_k)
/// must be >= that of L(w) - 1e-9 (<= + 1e-9 when delta < 0). A fixed
/// `delta` of 0 checks equality within 1e-12. Weights are drawn uniformly on
/// [0, 2] and delta on (0, 1].
struct MonotonicityReport {
  bool holds = true;
  double worst_violation = 0.0;
  int trials = 0;
};

MonotonicityReport monotonicity_probe(const MultiplexSpec& spec, int trials, std::uint64_t seed,
                                      double delta_sign = 1.0);

}  // namespace spectraplex
