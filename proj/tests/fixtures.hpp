#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "spectraplex/generators.hpp"
#include "spectraplex/graph.hpp"

namespace fixtures {

using namespace spectraplex;

// Two identical single-edge layers: c* = 2, lambda_2*(c) = min(c, 2).
inline MultiplexSpec edge_pair() {
  return MultiplexSpec(LayerGraph(2, {{0, 1, 1.0}}), LayerGraph(2, {{0, 1, 1.0}}));
}

// Weighted triangle (1, 1, 2) over an unweighted one. Layer-1 spectrum is
// {0, 3, 5}; the top eigenvector (1, 0, -1) vanishes at node 1.
inline LayerGraph weighted_triangle() { return LayerGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 2.0}}); }
inline LayerGraph unit_triangle() { return LayerGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}); }
inline MultiplexSpec triangle_pair() { return MultiplexSpec(weighted_triangle(), unit_triangle()); }

inline MultiplexSpec random_pair(LayerModel m1, LayerModel m2, int n, std::uint64_t seed) {
  ModelParams p;
  p.n = n;
  p.m = 2;
  p.p = m1 == LayerModel::ErdosRenyi ? 0.4 : 0.3;
  p.radius = 0.5;
  p.k = 4;
  ModelParams q = p;
  q.p = m2 == LayerModel::ErdosRenyi ? 0.4 : 0.3;
  return MultiplexSpec(generate_layer(m1, p, seed), generate_layer(m2, q, seed + 1000));
}

// Eigenvalues by a decomposition independent of the library helpers.
inline Eigen::VectorXd spectrum(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

// Supra-Laplacian written out entry by entry.
inline Eigen::MatrixXd supra_by_hand(const MultiplexSpec& s, const Eigen::VectorXd& w) {
  const int n = s.total_nodes();
  const int N = s.layer_size();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  auto add = [&](int i, int j, double v) {
    l(i, i) += v;
    l(j, j) += v;
    l(i, j) -= v;
    l(j, i) -= v;
  };
  for (const auto& e : s.layer1().edges()) add(e.i, e.j, e.weight);
  for (const auto& e : s.layer2().edges()) add(N + e.i, N + e.j, e.weight);
  for (int k = 0; k < s.pair_count(); ++k) add(s.matching()[k].layer1, N + s.matching()[k].layer2, w[k]);
  return l;
}

}  // namespace fixtures
