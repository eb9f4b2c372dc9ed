#pragma once

#include <vector>

#include <Eigen/Core>

namespace spectraplex {

/// Block-structured conic program in inequality form
///
///   maximize b^T y  subject to  S_j = C_j - sum_k y_k A_kj  >= 0  for every block j,
///
/// paired with
///
///   minimize sum_j <C_j, X_j>  subject to  sum_j <A_kj, X_j> = b_k,  X_j >= 0.
///
/// Dense blocks are symmetric d x d matrices. Diagonal blocks store their
/// data as d x 1 column vectors (a nonnegative orthant).
struct ConicProblem {
  enum class BlockKind { Dense, Diagonal };

  std::vector<BlockKind> kinds;
  std::vector<Eigen::MatrixXd> c;                  // per block
  std::vector<std::vector<Eigen::MatrixXd>> a;     // a[k][j]; empty matrix means zero
  Eigen::VectorXd b;

  int block_count() const { return static_cast<int>(kinds.size()); }
  int variable_count() const { return static_cast<int>(b.size()); }
  int block_dim(int j) const { return static_cast<int>(c[j].rows()); }

  int add_block(BlockKind kind, Eigen::MatrixXd c_block);
  /// Appends a free variable with objective coefficient `b_k`; its block
  /// coefficients start as zero.
  int add_variable(double b_k);
  void set_coefficient(int k, int j, Eigen::MatrixXd a_kj);
};

struct ConicOptions {
  int max_iterations = 120;
  double tolerance = 1e-10;
};

struct ConicSolution {
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXd> x;
  std::vector<Eigen::MatrixXd> s;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Infeasible-start primal-dual path following with the HKM direction and a
/// Mehrotra predictor-corrector. Returns the best iterate seen; `converged`
/// reports whether all three residuals reached `tolerance`.
ConicSolution solve_conic(const ConicProblem& problem, const ConicOptions& options = {});

}  // namespace spectraplex
