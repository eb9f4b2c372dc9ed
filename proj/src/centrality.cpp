#include "spectraplex/centrality.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "spectraplex/errors.hpp"

namespace spectraplex {

namespace {

Eigen::MatrixXd adjacency(const LayerGraph& layer) {
  const int n = layer.node_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : layer.edges()) {
    a(e.i, e.j) += e.weight;
    a(e.j, e.i) += e.weight;
  }
  return a;
}

}  // namespace

Eigen::VectorXd degree_centrality(const LayerGraph& layer) { return adjacency(layer).rowwise().sum(); }

Eigen::VectorXd eigenvector_centrality(const LayerGraph& layer) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency(layer));
  Eigen::VectorXd v = es.eigenvectors().col(layer.node_count() - 1).cwiseAbs();
  const double top = v.maxCoeff();
  return top > 0.0 ? Eigen::VectorXd(v / top) : v;
}

Eigen::VectorXd pagerank(const LayerGraph& layer, double damping, double tol) {
  const int n = layer.node_count();
  const Eigen::MatrixXd a = adjacency(layer);
  const Eigen::VectorXd deg = a.rowwise().sum();
  Eigen::VectorXd r = Eigen::VectorXd::Constant(n, 1.0 / n);
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd next = Eigen::VectorXd::Constant(n, (1.0 - damping) / n);
    double dangling = 0.0;
    for (int j = 0; j < n; ++j) {
      if (deg[j] > 0.0) {
        next += damping * r[j] * a.col(j) / deg[j];
      } else {
        dangling += r[j];
      }
    }
    next.array() += damping * dangling / n;
    const double change = (next - r).lpNorm<1>();
    r = next;
    if (change < tol) break;
  }
  return r;
}

Eigen::VectorXd abs_fiedler(const LayerGraph& layer) {
  if (layer.node_count() < 2) return Eigen::VectorXd::Zero(layer.node_count());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_layer_laplacian(layer));
  return es.eigenvectors().col(1).cwiseAbs();
}

std::optional<double> pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() < 2) throw InputError("pearson needs equal lengths >= 2");
  const Eigen::VectorXd da = a.array() - a.mean();
  const Eigen::VectorXd db = b.array() - b.mean();
  const double na = da.norm();
  const double nb = db.norm();
  const double sa = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double sb = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (na <= 1e-10 * sa * std::sqrt(a.size()) || nb <= 1e-10 * sb * std::sqrt(b.size())) return std::nullopt;
  return std::clamp(da.dot(db) / (na * nb), -1.0, 1.0);
}

std::vector<CorrelationEntry> correlate_centralities(const MultiplexSpec& spec, const Eigen::VectorXd& weights) {
  require_valid(spec);
  if (weights.size() != spec.pair_count()) throw InputError("weight vector does not match the multiplex");
  std::vector<CorrelationEntry> out;
  for (int layer : {1, 2}) {
    const LayerGraph& g = layer == 1 ? spec.layer1() : spec.layer2();
    const std::pair<const char*, Eigen::VectorXd> measures[] = {
        {"degree", degree_centrality(g)},
        {"eigenvector", eigenvector_centrality(g)},
        {"pagerank", pagerank(g)},
        {"fiedler", abs_fiedler(g)},
    };
    for (const auto& [name, values] : measures) {
      Eigen::VectorXd aligned(spec.pair_count());
      for (int k = 0; k < spec.pair_count(); ++k)
        aligned[k] = values[layer == 1 ? spec.matching()[k].layer1 : spec.matching()[k].layer2];
      out.push_back({name, layer, pearson(weights, aligned)});
    }
  }
  return out;
}

}  // namespace spectraplex
