#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "spectraplex/graph.hpp"

namespace spectraplex {

enum class ObjectiveKind { MaxLambda2, MinLambdaN, MinWidth };

std::string to_string(ObjectiveKind kind);
/// Accepts lambda2 / lambdan / width (and the enum spellings).
std::optional<ObjectiveKind> parse_objective(const std::string& name);

struct SolverOptions {
  int max_iterations = 5000;
  double gap_tolerance = 1e-6;
  std::optional<double> cluster_tol;
  /// Try the closed-form solutions before the interior-point solver.
  bool fast_paths = true;
};

enum class SolveStatus { Optimal, MaxIter, Infeasible };
std::string to_string(SolveStatus status);

struct DualCertificate {
  std::optional<Eigen::MatrixXd> x;  // lambda_2 side: tr X = 1, X e = 0
  std::optional<Eigen::MatrixXd> y;  // lambda_n side: tr Y = 1
  double xi = 0.0;
  double dual_value = 0.0;
  /// "eigenspace" when solved on the optimal eigenspace, "full" for the
  /// full-dimension fallback, "closed_form" for fast paths.
  std::string origin;
  std::vector<std::pair<std::string, double>> feasibility_residuals;

  double residual(const std::string& name) const;
};

struct OptimizationResult {
  ObjectiveKind objective = ObjectiveKind::MaxLambda2;
  WeightAllocation weights;
  double objective_value = 0.0;
  double lambda2 = 0.0;
  double lambda_n = 0.0;
  double shift_mu = 0.0;
  Eigen::VectorXd eigenvalues;  // spectrum of L(w*), ascending
  int lambda2_multiplicity = 0;
  int lambda_n_multiplicity = 0;
  DualCertificate dual;
  double duality_gap = 0.0;
  int solver_iterations = 0;
  SolveStatus status = SolveStatus::MaxIter;
  std::string method;

  /// Multiplicity of the eigenvalue being optimized (lambda_2 for width).
  int optimal_multiplicity() const;
};

/// |primal - dual| / max(1, |primal|)
double duality_gap(double primal_value, double dual_value);

OptimizationResult maximize_lambda2(const MultiplexSpec& spec, double c, const SolverOptions& opts = {});
OptimizationResult minimize_lambda_n(const MultiplexSpec& spec, double c, const SolverOptions& opts = {});
OptimizationResult minimize_width(const MultiplexSpec& spec, double c, const SolverOptions& opts = {});
OptimizationResult optimize(const MultiplexSpec& spec, double c, ObjectiveKind kind,
                            const SolverOptions& opts = {});

struct FastPathOutcome {
  std::optional<OptimizationResult> result;
  std::string refusal;
};

/// Uniform weights with the clumped certificate; refused above c*.
FastPathOutcome uniform_fast_path(const MultiplexSpec& spec, double c);
/// Weights spread over the nodal set with Y = u u^T, u = (v_N^1; 0);
/// refused when the hypotheses fail or c > c1*.
FastPathOutcome nodal_fast_path(const MultiplexSpec& spec, double c);

/// Certificate on the optimal eigenspace of L(w) for the given weights,
/// with a full-dimension solve as fallback.
DualCertificate recover_dual_certificate(const MultiplexSpec& spec, double c, ObjectiveKind kind,
                                         const WeightAllocation& weights,
                                         const SolverOptions& opts = {});

/// Objective evaluated by a full eigendecomposition of L(w).
double evaluate_objective(const MultiplexSpec& spec, const Eigen::VectorXd& weights, ObjectiveKind kind);

/// Upper bound on lambda_2* from a trace-one PSD X with X e = 0:
/// <X, L0> + c max_k <X, L_k>.
double lambda2_dual_bound(const MultiplexSpec& spec, double c, const Eigen::MatrixXd& x);
/// Lower bound on lambda_n* from a trace-one PSD Y: <Y, L0> + c min_k <Y, L_k>.
double lambdan_dual_bound(const MultiplexSpec& spec, double c, const Eigen::MatrixXd& y);
/// Lower bound on the width: <Y - X, L0> + c min_k <Y - X, L_k>.
double width_dual_bound(const MultiplexSpec& spec, double c, const Eigen::MatrixXd& x,
                        const Eigen::MatrixXd& y);

/// <M, L_k> for every interlayer pair k.
Eigen::VectorXd pair_inner_products(const MultiplexSpec& spec, const Eigen::MatrixXd& m);

}  // namespace spectraplex
