#include "spectraplex/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/QR>

#include "spectraplex/errors.hpp"

namespace spectraplex {

namespace {

Eigen::MatrixXd gather(const Eigen::MatrixXd& a, const std::vector<int>& cols) {
  Eigen::MatrixXd out(a.rows(), cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(i) = a.col(cols[i]);
  return out;
}

}  // namespace

NnlsResult nonnegative_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations) {
  if (a.rows() != b.size()) throw InputError("nnls: dimension mismatch");
  const int n = static_cast<int>(a.cols());
  if (max_iterations <= 0) max_iterations = 3 * n + 10;
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() * a.cwiseAbs().colwise().sum().maxCoeff() *
                     std::max<Eigen::Index>(a.rows(), a.cols());
  NnlsResult out;
  out.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  Eigen::VectorXd grad = a.transpose() * (b - a * out.x);

  while (out.iterations < max_iterations) {
    int j = -1;
    double best = tol;
    for (int i = 0; i < n; ++i)
      if (!passive[i] && grad[i] > best) {
        best = grad[i];
        j = i;
      }
    if (j < 0) break;
    passive[j] = true;

    while (true) {
      ++out.iterations;
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (passive[i]) idx.push_back(i);
      const Eigen::VectorXd sp = gather(a, idx).colPivHouseholderQr().solve(b);
      Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
      for (std::size_t i = 0; i < idx.size(); ++i) s[idx[i]] = sp[i];
      bool feasible = true;
      for (int i : idx) feasible = feasible && s[i] > tol;
      if (feasible) {
        out.x = s;
        break;
      }
      double alpha = 1.0;
      for (int i : idx)
        if (s[i] <= tol) alpha = std::min(alpha, out.x[i] / (out.x[i] - s[i]));
      out.x += alpha * (s - out.x);
      for (int i : idx)
        if (out.x[i] <= tol) {
          passive[i] = false;
          out.x[i] = 0.0;
        }
      if (out.iterations >= max_iterations) break;
    }
    grad = a.transpose() * (b - a * out.x);
  }
  out.residual_norm = (a * out.x - b).norm();
  return out;
}

MinNormPoint min_norm_point(const Eigen::MatrixXd& p, double tol) {
  const int m = static_cast<int>(p.cols());
  if (m == 0) throw InputError("min_norm_point needs at least one point");
  const double scale = std::max(1e-300, p.colwise().squaredNorm().maxCoeff());

  int first = 0;
  p.colwise().squaredNorm().minCoeff(&first);
  std::vector<int> active{first};
  Eigen::VectorXd lambda = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd x = p.col(first);

  for (int outer = 0; outer < 50 * m + 50; ++outer) {
    int j = 0;
    (p.transpose() * x).minCoeff(&j);
    if (x.squaredNorm() - x.dot(p.col(j)) <= tol * scale) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    lambda.conservativeResize(lambda.size() + 1);
    lambda[lambda.size() - 1] = 0.0;

    for (int inner = 0; inner < 50 * m + 50; ++inner) {
      const int k = static_cast<int>(active.size());
      const Eigen::MatrixXd ps = gather(p, active);
      // Affine minimizer: [PᵀP 1; 1ᵀ 0] [mu; nu] = [0; 1].
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
      kkt.topLeftCorner(k, k) = ps.transpose() * ps;
      kkt.topRightCorner(k, 1).setOnes();
      kkt.bottomLeftCorner(1, k).setOnes();
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
      rhs[k] = 1.0;
      const Eigen::VectorXd mu = kkt.completeOrthogonalDecomposition().solve(rhs).head(k);
      if ((mu.array() > 1e-14).all()) {
        lambda = mu;
        break;
      }
      double theta = 1.0;
      for (int i = 0; i < k; ++i)
        if (mu[i] <= 1e-14 && lambda[i] - mu[i] > 0.0) theta = std::min(theta, lambda[i] / (lambda[i] - mu[i]));
      lambda += theta * (mu - lambda);
      std::vector<int> keep_idx;
      std::vector<double> keep_w;
      for (int i = 0; i < k; ++i)
        if (lambda[i] > 1e-14) {
          keep_idx.push_back(active[i]);
          keep_w.push_back(lambda[i]);
        }
      if (keep_idx.empty()) {
        keep_idx.push_back(active.back());
        keep_w.push_back(1.0);
      }
      active = keep_idx;
      lambda = Eigen::Map<Eigen::VectorXd>(keep_w.data(), keep_w.size());
      lambda /= lambda.sum();
    }
    x = gather(p, active) * lambda;
  }

  MinNormPoint out;
  out.point = x;
  out.weights = Eigen::VectorXd::Zero(m);
  for (std::size_t i = 0; i < active.size(); ++i) out.weights[active[i]] = lambda[i];
  out.distance = x.norm();
  return out;
}

bool segment_meets_hull(const Eigen::VectorXd& q, const Eigen::MatrixXd& hull, double rel_tol) {
  if (hull.cols() == 0) throw InputError("segment test needs a nonempty hull");
  if (hull.rows() != q.size()) throw InputError("segment test: dimension mismatch");
  const int k = static_cast<int>(hull.cols());
  Eigen::MatrixXd pts(q.size(), 2 * k);
  for (int i = 0; i < k; ++i) {
    pts.col(2 * i) = hull.col(i);
    pts.col(2 * i + 1) = hull.col(i) - q;
  }
  const double scale = std::max({1e-300, q.norm(), hull.colwise().norm().maxCoeff()});
  return min_norm_point(pts, 1e-16).distance <= rel_tol * scale;
}

}  // namespace spectraplex
