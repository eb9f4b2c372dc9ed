#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spectraplex/graph.hpp"

namespace spectraplex {

/// Per-node measures of one layer, indexed by layer node.
Eigen::VectorXd degree_centrality(const LayerGraph& layer);
/// Leading eigenvector of the weighted adjacency, nonnegative, unit max.
Eigen::VectorXd eigenvector_centrality(const LayerGraph& layer);
/// Power iteration with uniform teleport; sums to 1.
Eigen::VectorXd pagerank(const LayerGraph& layer, double damping = 0.85, double tol = 1e-12);
/// |second Laplacian eigenvector|.
Eigen::VectorXd abs_fiedler(const LayerGraph& layer);

/// Pearson correlation; nullopt when either column has (near) zero variance.
std::optional<double> pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct CorrelationEntry {
  std::string measure;  // degree, eigenvector, pagerank, fiedler
  int layer = 1;
  std::optional<double> value;
};

/// Correlations of a weight vector (indexed by pair) against the four
/// measures of each layer, read at the pair endpoints: 8 entries.
std::vector<CorrelationEntry> correlate_centralities(const MultiplexSpec& spec, const Eigen::VectorXd& weights);

}  // namespace spectraplex
