#pragma once

#include <Eigen/Core>

namespace spectraplex {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  int iterations = 0;
};

/// min ||A x - b|| subject to x >= 0 (Lawson-Hanson active set).
NnlsResult nonnegative_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 0);

struct MinNormPoint {
  Eigen::VectorXd point;     // closest point of the hull to the origin
  Eigen::VectorXd weights;   // convex weights over the columns
  double distance = 0.0;
};

/// Point of conv{columns of P} closest to the origin (Wolfe's algorithm).
MinNormPoint min_norm_point(const Eigen::MatrixXd& points, double tol = 1e-12);

/// Whether the segment [0, q] meets conv{columns of `hull`}: the origin must
/// lie in conv{s_i, s_i - q}, the hull minus the segment. `rel_tol` is
/// relative to the largest point norm involved.
bool segment_meets_hull(const Eigen::VectorXd& q, const Eigen::MatrixXd& hull, double rel_tol = 1e-7);

}  // namespace spectraplex
