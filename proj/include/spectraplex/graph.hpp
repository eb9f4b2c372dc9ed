#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace spectraplex {

struct Edge {
  int i = 0;
  int j = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One weighted undirected layer. Construction validates indices, weights
/// and duplicate pairs; connectivity is checked on demand.
class LayerGraph {
 public:
  LayerGraph() = default;
  LayerGraph(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

  int component_count() const;
  bool is_connected() const { return component_count() == 1; }

  friend bool operator==(const LayerGraph&, const LayerGraph&) = default;

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;
};

struct MatchedPair {
  int layer1 = 0;
  int layer2 = 0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// Two layers coupled by interlayer pairs. Pairs are stored sorted by their
/// layer-1 endpoint, so weight k always belongs to the pair touching layer-1
/// node k once the matching is perfect. Supra-graph node numbering: layer-1
/// node a is a, layer-2 node b is N + b.
class MultiplexSpec {
 public:
  MultiplexSpec() = default;
  /// Empty `matching` means the identity pairing.
  MultiplexSpec(LayerGraph layer1, LayerGraph layer2,
                std::vector<MatchedPair> matching = {});

  const LayerGraph& layer1() const { return layer1_; }
  const LayerGraph& layer2() const { return layer2_; }
  const std::vector<MatchedPair>& matching() const { return matching_; }

  /// Nodes per layer (layer 1).
  int layer_size() const { return layer1_.node_count(); }
  int total_nodes() const { return layer1_.node_count() + layer2_.node_count(); }
  int pair_count() const { return static_cast<int>(matching_.size()); }

  /// Supra-graph indices of the endpoints of pair k.
  int pair_node1(int k) const { return matching_[k].layer1; }
  int pair_node2(int k) const { return layer_size() + matching_[k].layer2; }

  friend bool operator==(const MultiplexSpec&, const MultiplexSpec&) = default;

 private:
  LayerGraph layer1_;
  LayerGraph layer2_;
  std::vector<MatchedPair> matching_;
};

/// Nonnegative interlayer weights with their total recorded as the budget.
class WeightAllocation {
 public:
  WeightAllocation() = default;
  /// Throws InputError on negative entries or if the entries do not sum to
  /// `budget` within 1e-12 relative.
  WeightAllocation(Eigen::VectorXd weights, double budget);

  static WeightAllocation uniform(int count, double budget);
  /// Clips round-off negatives and takes the budget from the sum.
  static WeightAllocation from_weights(const Eigen::VectorXd& weights);

  const Eigen::VectorXd& weights() const { return weights_; }
  double budget() const { return budget_; }
  int size() const { return static_cast<int>(weights_.size()); }

 private:
  Eigen::VectorXd weights_;
  double budget_ = 0.0;
};

struct ValidationReport {
  bool valid = false;
  int layer_size = 0;
  int total_nodes = 0;
  bool layer1_connected = false;
  bool layer2_connected = false;
  bool matching_perfect = false;
  std::vector<std::string> reasons;
};

ValidationReport validate_multiplex(const MultiplexSpec& spec);

/// Throws InputError carrying the first failure reason.
void require_valid(const MultiplexSpec& spec);

/// D - A for one layer.
Eigen::MatrixXd build_layer_laplacian(const LayerGraph& layer);

/// L0: Laplacian of the disjoint union of the two layers (2N x 2N).
Eigen::MatrixXd intralayer_laplacian(const MultiplexSpec& spec);

/// (d_a - d_b)(d_a - d_b)^T for the endpoints of pair k.
Eigen::MatrixXd pair_laplacian(const MultiplexSpec& spec, int k);

/// Block form [[L1 + W, -W], [-W, L2 + W]] with W placed on the matched
/// pairs. Throws InputError when the allocation length differs from the
/// number of pairs.
Eigen::MatrixXd assemble_supra_laplacian(const MultiplexSpec& spec,
                                         const WeightAllocation& alloc);
Eigen::MatrixXd assemble_supra_laplacian(const MultiplexSpec& spec,
                                         const Eigen::VectorXd& weights);

/// Layer Laplacians re-indexed so row k of both refers to pair k.
Eigen::MatrixXd aligned_layer1_laplacian(const MultiplexSpec& spec);
Eigen::MatrixXd aligned_layer2_laplacian(const MultiplexSpec& spec);

/// Layer (1 or 2) that supra-graph node `node` belongs to.
int layer_of(const MultiplexSpec& spec, int node);

}  // namespace spectraplex
