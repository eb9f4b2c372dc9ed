#include "spectraplex/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "spectraplex/errors.hpp"

namespace spectraplex {

namespace {

int count_components(int n, const std::vector<Edge>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  int components = n;
  for (const auto& e : edges) {
    int a = find(e.i);
    int b = find(e.j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

}  // namespace

LayerGraph::LayerGraph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ <= 0) {
    throw InputError("layer node count must be positive");
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges_) {
    if (e.i < 0 || e.j < 0 || e.i >= node_count_ || e.j >= node_count_) {
      throw InputError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                       ") has an index outside [0," + std::to_string(node_count_) + ")");
    }
    if (e.i == e.j) {
      throw InputError("self loop at node " + std::to_string(e.i));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InputError("edge weights must be positive and finite");
    }
    auto key = std::minmax(e.i, e.j);
    if (!seen.insert(key).second) {
      throw InputError("duplicate edge (" + std::to_string(key.first) + "," +
                       std::to_string(key.second) + ")");
    }
  }
}

int LayerGraph::component_count() const { return count_components(node_count_, edges_); }

MultiplexSpec::MultiplexSpec(LayerGraph layer1, LayerGraph layer2,
                             std::vector<MatchedPair> matching)
    : layer1_(std::move(layer1)), layer2_(std::move(layer2)), matching_(std::move(matching)) {
  if (matching_.empty()) {
    const int n = std::min(layer1_.node_count(), layer2_.node_count());
    for (int k = 0; k < n; ++k) matching_.push_back({k, k});
  }
  for (const auto& p : matching_) {
    if (p.layer1 < 0 || p.layer1 >= layer1_.node_count() || p.layer2 < 0 ||
        p.layer2 >= layer2_.node_count()) {
      throw InputError("matching pair (" + std::to_string(p.layer1) + "," +
                       std::to_string(p.layer2) + ") out of range");
    }
  }
  std::stable_sort(matching_.begin(), matching_.end(),
                   [](const MatchedPair& a, const MatchedPair& b) { return a.layer1 < b.layer1; });
}

WeightAllocation::WeightAllocation(Eigen::VectorXd weights, double budget)
    : weights_(std::move(weights)), budget_(budget) {
  if (!(budget_ >= 0.0) || !std::isfinite(budget_)) {
    throw InputError("budget must be a nonnegative finite number");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw InputError("interlayer weights must be nonnegative");
    }
  }
  const double sum = weights_.sum();
  if (std::abs(sum - budget_) > 1e-12 * std::max(1.0, budget_)) {
    throw InputError("weights sum to " + std::to_string(sum) + ", not the budget " +
                     std::to_string(budget_));
  }
}

WeightAllocation WeightAllocation::uniform(int count, double budget) {
  if (count <= 0) throw InputError("uniform allocation needs at least one pair");
  return WeightAllocation(Eigen::VectorXd::Constant(count, budget / count), budget);
}

WeightAllocation WeightAllocation::from_weights(const Eigen::VectorXd& weights) {
  Eigen::VectorXd w = weights.cwiseMax(0.0);
  const double sum = w.sum();
  return WeightAllocation(std::move(w), sum);
}

ValidationReport validate_multiplex(const MultiplexSpec& spec) {
  ValidationReport r;
  r.layer_size = spec.layer_size();
  r.total_nodes = spec.total_nodes();
  r.layer1_connected = spec.layer1().is_connected();
  r.layer2_connected = spec.layer2().is_connected();

  const int n1 = spec.layer1().node_count();
  const int n2 = spec.layer2().node_count();
  if (n1 != n2) {
    r.reasons.push_back("layers have different node counts (" + std::to_string(n1) + " vs " +
                        std::to_string(n2) + ")");
  }
  if (!r.layer1_connected) r.reasons.push_back("layer 1 not connected");
  if (!r.layer2_connected) r.reasons.push_back("layer 2 not connected");

  std::vector<int> hit1(n1, 0);
  std::vector<int> hit2(n2, 0);
  for (const auto& p : spec.matching()) {
    ++hit1[p.layer1];
    ++hit2[p.layer2];
  }
  r.matching_perfect = n1 == n2 && spec.pair_count() == n1 &&
                       std::all_of(hit1.begin(), hit1.end(), [](int h) { return h == 1; }) &&
                       std::all_of(hit2.begin(), hit2.end(), [](int h) { return h == 1; });
  if (!r.matching_perfect) r.reasons.push_back("matching not perfect");
  r.valid = r.reasons.empty();
  return r;
}

void require_valid(const MultiplexSpec& spec) {
  auto report = validate_multiplex(spec);
  if (!report.valid) throw InputError("invalid multiplex: " + report.reasons.front());
}

Eigen::MatrixXd build_layer_laplacian(const LayerGraph& layer) {
  const int n = layer.node_count();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : layer.edges()) {
    L(e.i, e.i) += e.weight;
    L(e.j, e.j) += e.weight;
    L(e.i, e.j) -= e.weight;
    L(e.j, e.i) -= e.weight;
  }
  return L;
}

Eigen::MatrixXd intralayer_laplacian(const MultiplexSpec& spec) {
  const int n1 = spec.layer1().node_count();
  const int n2 = spec.layer2().node_count();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  L.topLeftCorner(n1, n1) = build_layer_laplacian(spec.layer1());
  L.bottomRightCorner(n2, n2) = build_layer_laplacian(spec.layer2());
  return L;
}

Eigen::MatrixXd pair_laplacian(const MultiplexSpec& spec, int k) {
  const int n = spec.total_nodes();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  const int a = spec.pair_node1(k);
  const int b = spec.pair_node2(k);
  L(a, a) = 1.0;
  L(b, b) = 1.0;
  L(a, b) = -1.0;
  L(b, a) = -1.0;
  return L;
}

Eigen::MatrixXd assemble_supra_laplacian(const MultiplexSpec& spec,
                                         const Eigen::VectorXd& weights) {
  if (weights.size() != spec.pair_count()) {
    throw InputError("allocation has " + std::to_string(weights.size()) +
                     " weights but the multiplex has " + std::to_string(spec.pair_count()) +
                     " interlayer pairs");
  }
  const int n1 = spec.layer1().node_count();
  const int n2 = spec.layer2().node_count();
  Eigen::MatrixXd W1 = Eigen::MatrixXd::Zero(n1, n1);
  Eigen::MatrixXd W2 = Eigen::MatrixXd::Zero(n2, n2);
  Eigen::MatrixXd W12 = Eigen::MatrixXd::Zero(n1, n2);
  for (int k = 0; k < spec.pair_count(); ++k) {
    const auto& p = spec.matching()[k];
    W1(p.layer1, p.layer1) += weights[k];
    W2(p.layer2, p.layer2) += weights[k];
    W12(p.layer1, p.layer2) -= weights[k];
  }
  Eigen::MatrixXd L(n1 + n2, n1 + n2);
  L.topLeftCorner(n1, n1) = build_layer_laplacian(spec.layer1()) + W1;
  L.topRightCorner(n1, n2) = W12;
  L.bottomLeftCorner(n2, n1) = W12.transpose();
  L.bottomRightCorner(n2, n2) = build_layer_laplacian(spec.layer2()) + W2;
  return L;
}

Eigen::MatrixXd assemble_supra_laplacian(const MultiplexSpec& spec,
                                         const WeightAllocation& alloc) {
  return assemble_supra_laplacian(spec, alloc.weights());
}

Eigen::MatrixXd aligned_layer1_laplacian(const MultiplexSpec& spec) {
  const Eigen::MatrixXd L = build_layer_laplacian(spec.layer1());
  const int m = spec.pair_count();
  Eigen::MatrixXd A(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) A(k, l) = L(spec.matching()[k].layer1, spec.matching()[l].layer1);
  return A;
}

Eigen::MatrixXd aligned_layer2_laplacian(const MultiplexSpec& spec) {
  const Eigen::MatrixXd L = build_layer_laplacian(spec.layer2());
  const int m = spec.pair_count();
  Eigen::MatrixXd A(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) A(k, l) = L(spec.matching()[k].layer2, spec.matching()[l].layer2);
  return A;
}

int layer_of(const MultiplexSpec& spec, int node) { return node < spec.layer_size() ? 1 : 2; }

}  // namespace spectraplex
