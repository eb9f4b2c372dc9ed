#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "spectraplex/graph.hpp"
#include "spectraplex/optimizer.hpp"
#include "spectraplex/spectral.hpp"

namespace spectraplex {

struct SweepOptions {
  SolverOptions solver;
  bool log_grid = false;
  bool refine = true;
  double refine_tol = 1e-3;
  double rank_tol = 1e-6;
  int top_k = 3;
};

struct SweepRecord {
  double budget = 0.0;
  bool ok = false;
  std::string error;
  SolveStatus status = SolveStatus::MaxIter;
  double objective_opt = 0.0;
  double objective_uniform = 0.0;
  double lambda2 = 0.0;
  double lambda_n = 0.0;
  double duality_gap = 0.0;
  Eigen::VectorXd weights;
  Eigen::VectorXd head_eigenvalues;  // smallest top_k
  Eigen::VectorXd tail_eigenvalues;  // largest top_k
  int multiplicity = 0;
  int embedding_dimension = 0;
  BoundsReport bounds;
};

struct SweepResult {
  ObjectiveKind objective = ObjectiveKind::MaxLambda2;
  std::vector<double> budgets;
  std::vector<SweepRecord> records;
  std::vector<Transition> transitions;
};

/// Linear or logarithmic grid, strictly increasing. A log grid with
/// c_min = 0 starts at 0 and spaces the rest from c_max / 10^3.
std::vector<double> budget_grid(double c_min, double c_max, int points, bool log_grid);

/// Solves one budget and summarizes it; failures are captured, not thrown.
SweepRecord solve_record(const MultiplexSpec& spec, ObjectiveKind objective, double c, const SweepOptions& opts);

/// Solves on the grid and reports transitions between neighbouring points:
/// "multiplicity" and "dimension" (change of the optimal-eigenvalue
/// multiplicity or certificate rank), "linear_exit" (lambda_2* leaves 4c/n)
/// and "plateau_exit" (lambda_n* leaves lambda_N^1). Each is bisected to
/// refine_tol.
SweepResult sweep_budget(const MultiplexSpec& spec, ObjectiveKind objective, double c_min, double c_max,
                         int points, const SweepOptions& opts = {});

/// Embedding dimension of the certificate tied to the optimal eigenvalue.
int certificate_dimension(const OptimizationResult& result, double rank_tol = 1e-6);

}  // namespace spectraplex
