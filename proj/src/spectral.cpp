#include "spectraplex/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "spectraplex/errors.hpp"

namespace spectraplex {

const EigenCluster& SpectrumSummary::cluster_of(int index) const {
  for (const auto& c : clusters)
    if (index >= c.begin && index < c.end) return c;
  throw InputError("eigenvalue index out of range");
}

Eigen::MatrixXd SpectrumSummary::eigenspace(int index) const {
  const auto& c = cluster_of(index);
  return eigenvectors.middleCols(c.begin, c.size());
}

double default_cluster_tol(const Eigen::VectorXd& eigenvalues) {
  const double scale = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return std::max(1e-8, 1e-7 * scale);
}

SpectrumSummary eig_symmetric_clustered(const Eigen::MatrixXd& A, std::optional<double> tol) {
  if (A.rows() != A.cols() || A.rows() == 0) throw InputError("matrix must be square and nonempty");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InputError("matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
  SpectrumSummary s;
  s.eigenvalues = es.eigenvalues();
  s.eigenvectors = es.eigenvectors();
  s.tol = tol.value_or(default_cluster_tol(s.eigenvalues));
  const int n = s.dimension();
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || s.eigenvalues[i] - s.eigenvalues[start] > s.tol) {
      s.clusters.push_back({s.eigenvalues.segment(start, i - start).mean(), start, i});
      start = i;
    }
  }
  return s;
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& A, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  if (top > 0.0) {
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (std::abs(ev[i]) > rank_tol * top) inv[i] = 1.0 / ev[i];
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd ones_complement(int n) {
  if (n <= 1) return Eigen::MatrixXd(n, 0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Ones(n, 1));
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return q.rightCols(n - 1);
}

double threshold_c_star(const Eigen::MatrixXd& L1, const Eigen::MatrixXd& L2) {
  if (L1.rows() != L2.rows()) throw InputError("layer Laplacians differ in size");
  const int N = static_cast<int>(L1.rows());
  if (N < 2) return 0.0;
  for (const auto* L : {&L1, &L2}) {
    auto s = eig_symmetric_clustered(*L);
    if (s.eigenvalues[1] <= s.tol) throw DomainError("threshold c* needs connected layers");
  }
  const Eigen::MatrixXd combined = pseudoinverse(pseudoinverse(L1) + pseudoinverse(L2));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(combined, Eigen::EigenvaluesOnly);
  // (n/2) with n = 2N
  return N * es.eigenvalues()[1];
}

double threshold_c_star(const MultiplexSpec& spec) {
  if (!spec.layer1().is_connected() || !spec.layer2().is_connected())
    throw DomainError("c* needs both layers connected");
  require_valid(spec);
  return threshold_c_star(aligned_layer1_laplacian(spec), aligned_layer2_laplacian(spec));
}

DominantLayer dominant_layer(const MultiplexSpec& spec) {
  require_valid(spec);
  const auto s1 = eig_symmetric_clustered(aligned_layer1_laplacian(spec));
  const auto s2 = eig_symmetric_clustered(aligned_layer2_laplacian(spec));
  DominantLayer d;
  const double top1 = s1.max();
  const double top2 = s2.max();
  const double tie_tol = std::max(s1.tol, s2.tol);
  if (std::abs(top1 - top2) <= tie_tol) {
    d.layer = 0;
    d.lambda_top = std::max(top1, top2);
    d.other_top = d.lambda_top;
    return d;
  }
  const auto& dom = top1 > top2 ? s1 : s2;
  d.layer = top1 > top2 ? 1 : 2;
  d.lambda_top = dom.max();
  d.other_top = top1 > top2 ? top2 : top1;
  const int last = dom.dimension() - 1;
  d.simple = dom.multiplicity_of(last) == 1;
  d.top_vector = dom.eigenvectors.col(last);
  if (d.simple) {
    const double vmax = d.top_vector.cwiseAbs().maxCoeff();
    for (int k = 0; k < d.top_vector.size(); ++k)
      if (std::abs(d.top_vector[k]) <= 1e-8 * vmax) d.nodal_pairs.push_back(k);
    // Exact zeros on the nodal set keep Wv = 0 exact for nodal weights.
    for (int k : d.nodal_pairs) d.top_vector[k] = 0.0;
    d.top_vector.normalize();
  }
  return d;
}

Eigen::VectorXd uniform_nodal_pattern(const MultiplexSpec& spec) {
  const auto d = dominant_layer(spec);
  Eigen::VectorXd pattern = Eigen::VectorXd::Zero(spec.pair_count());
  if (d.nodal_pairs.empty()) return Eigen::VectorXd();
  for (int k : d.nodal_pairs) pattern[k] = 1.0 / static_cast<double>(d.nodal_pairs.size());
  return pattern;
}

C1StarResult threshold_c1_star(const MultiplexSpec& spec, const Eigen::VectorXd& nodal_pattern) {
  const auto d = dominant_layer(spec);
  if (d.layer == 0) throw DomainError("layer spectral radii tie; lambda_max(L1) > lambda_max(L2) fails");
  if (!d.simple) throw DomainError("lambda_N^1 is not simple");
  if (d.nodal_pairs.empty()) throw DomainError("nodal set empty; theorem inapplicable");
  if (nodal_pattern.size() != spec.pair_count()) throw InputError("nodal pattern length mismatch");
  if (nodal_pattern.minCoeff() < 0.0 || std::abs(nodal_pattern.sum() - 1.0) > 1e-9)
    throw InputError("nodal pattern must be nonnegative with unit sum");
  for (int k = 0; k < nodal_pattern.size(); ++k) {
    const bool nodal = std::find(d.nodal_pairs.begin(), d.nodal_pairs.end(), k) != d.nodal_pairs.end();
    if (nodal_pattern[k] > 0.0 && !nodal) throw InputError("nodal pattern leaves the nodal set");
  }

  const Eigen::MatrixXd L1 = aligned_layer1_laplacian(spec);
  const Eigen::MatrixXd L2 = aligned_layer2_laplacian(spec);
  const int N = spec.layer_size();
  const Eigen::MatrixXd Lbar = 0.5 * (L1 + L2) - d.lambda_top * Eigen::MatrixXd::Identity(N, N);
  const Eigen::MatrixXd Ltil = 0.5 * (L1 - L2);
  C1StarResult out;
  out.q_matrix = Lbar - Ltil * pseudoinverse(Lbar, 1e-10) * Ltil;
  out.q_matrix = 0.5 * (out.q_matrix + out.q_matrix.transpose());

  const double scale = std::max(1.0, out.q_matrix.cwiseAbs().maxCoeff());
  auto negative_count = [&](double c) {
    Eigen::MatrixXd M = out.q_matrix;
    M.diagonal() += 2.0 * c * nodal_pattern;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    const double cut = -1e-10 * std::max(scale, 2.0 * c);
    return static_cast<int>((es.eigenvalues().array() < cut).count());
  };

  out.negative_inertia_at_zero = negative_count(0.0);
  if (out.negative_inertia_at_zero == 0) {
    throw DomainError("Q has no negative eigenvalue; no positive threshold exists");
  }
  const int k0 = out.negative_inertia_at_zero;
  double lo = 0.0;
  double hi = 1.0;
  while (negative_count(hi) >= k0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw DomainError("c1* bracket exceeded 1e6");
  }
  while (hi - lo > 1e-9 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (negative_count(mid) >= k0 ? lo : hi) = mid;
  }
  out.c1_star = 0.5 * (lo + hi);
  return out;
}

BoundsReport spectral_bounds(const MultiplexSpec& spec, double c) {
  require_valid(spec);
  const int N = spec.layer_size();
  const int n = spec.total_nodes();
  const Eigen::MatrixXd L1 = aligned_layer1_laplacian(spec);
  const Eigen::MatrixXd L2 = aligned_layer2_laplacian(spec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ave(0.5 * (L1 + L2), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e1(L1, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e2(L2, Eigen::EigenvaluesOnly);
  const double lam_top = std::max(e1.eigenvalues()[N - 1], e2.eigenvalues()[N - 1]);
  const double ave2 = N > 1 ? ave.eigenvalues()[1] : 0.0;
  const double avemax = ave.eigenvalues()[N - 1];
  BoundsReport b;
  b.lambda2_linear_cap = 4.0 * c / n;
  b.lambda2_ave_cap = ave2;
  b.lambdan_lower = std::max(lam_top, 2.0 * c / N);
  b.lambdan_upper_large_c = avemax + 2.0 * c / N;
  b.width_lower = lam_top - 2.0 * c / N;
  b.width_bracket_low = 2.0 * c / N - ave2;
  b.width_bracket_high = avemax - ave2 + 2.0 * c / N;
  return b;
}

}  // namespace spectraplex
