#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spectraplex/graph.hpp"
#include "spectraplex/optimizer.hpp"

namespace spectraplex {

enum class EmbeddingSource { Lambda2Dual, LambdanDual, WidthDualU, WidthDualV, Scaled };
std::string to_string(EmbeddingSource source);

/// Node coordinates whose Gram matrix reproduces a PSD certificate. Row i
/// is supra-graph node i; columns are ordered by decreasing energy.
struct EmbeddingRealization {
  Eigen::MatrixXd points;
  int effective_dimension = 0;  // rank at rank_tol
  int visual_dimension = 0;     // columns needed for 99% of the trace
  EmbeddingSource source = EmbeddingSource::Lambda2Dual;
  double rank_tol = 1e-6;
};

/// Throws InputError for an eigenvalue below -1e-9 max(1, lambda_max) or a
/// zero matrix.
EmbeddingRealization gram_embed(const Eigen::MatrixXd& x, double rank_tol = 1e-6,
                                EmbeddingSource source = EmbeddingSource::Lambda2Dual);

/// Embedding of the certificate side selected by `source` (throws if the
/// result does not carry it).
EmbeddingRealization certificate_embedding(const OptimizationResult& result, EmbeddingSource source,
                                           double rank_tol = 1e-6);

/// Largest ||(L - lambda I) y|| / ||y|| over `trials` random unit directions
/// p with y = points p. Projections with ||y|| below 1e-12 are skipped.
double projection_residual(const EmbeddingRealization& emb, const Eigen::MatrixXd& laplacian, double lambda,
                           int trials, std::uint64_t seed = 7);

struct ClumpReport {
  bool clumped = false;
  Eigen::VectorXd h;
  double h_norm = 0.0;
};

/// One-dimensional with layer 1 at +h and layer 2 at -h within 1e-5.
ClumpReport clump_check(const EmbeddingRealization& emb, const MultiplexSpec& spec);

/// max_k ||v_a(k) + v_b(k)|| <= tol max_i ||v_i||.
bool antipodal_check(const EmbeddingRealization& emb, const MultiplexSpec& spec, double tol);

struct SmallBudgetReport {
  bool holds = false;
  double gamma = 0.0;           // dominant-layer points = gamma v_N^1 (unit v)
  double other_layer_max = 0.0;
  double alignment_error = 0.0;
};

/// One-dimensional, the weaker layer at the origin and the dominant layer
/// proportional to v_N^1, all within 1e-5.
SmallBudgetReport small_budget_embedding_check(const EmbeddingRealization& emb, const MultiplexSpec& spec);

/// min over orthogonal R of ||A R - B||_F (Procrustes); A and B are n x d
/// and n x d' and are zero-padded to a common width.
double procrustes_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct ScaledEmbedding {
  EmbeddingRealization embedding;
  Eigen::MatrixXd gram;              // X-hat, full coordinates, X-hat e = 0
  Eigen::VectorXd scaled_weights;    // w-hat
  Eigen::VectorXd weights;           // c w-hat / sum(w-hat), a lambda_2 optimum
  Eigen::VectorXd constraint_values; // <X-hat, c L_k + L0> per pair
  double primal_value = 0.0;         // sum(w-hat)
  double dual_value = 0.0;           // tr X-hat
  double relative_gap = 0.0;
  double lambda2 = 0.0;              // lambda_2 of L(weights)
};

/// Solves the scaled pair directly: minimize sum(w-hat) subject to
/// c sum w-hat_k L_k + sum(w-hat) L0 + mu e e^T >= I, w-hat >= 0, and the
/// matching spread maximization over Gram matrices. DomainError for c = 0.
ScaledEmbedding scaled_embedding(const MultiplexSpec& spec, double c, double rank_tol = 1e-6);

struct SupportEdge {
  int i = 0;
  int j = 0;
  double weight = 0.0;
  bool interlayer = false;
  int pair = -1;
};

/// Edges of G_w: all intralayer edges plus pairs with w_k > 1e-7 max(w).
std::vector<SupportEdge> support_edges(const MultiplexSpec& spec, const Eigen::VectorXd& weights);

struct SeparatorSpec {
  std::vector<int> separator_nodes;
  std::vector<int> component1;
  std::vector<int> component2;
};

/// Throws InputError unless the three sets partition 0..n-1 with both
/// components nonempty and no support edge between them.
void validate_separator(const SeparatorSpec& sep, int node_count, const std::vector<SupportEdge>& edges);

/// Cuts of the unit-weight Fiedler vector of G_w at the given quantiles:
/// C1 = {f < t}, S = neighbours of C1 outside it, C2 = the rest. Duplicate
/// and degenerate cuts are dropped.
std::vector<SeparatorSpec> fiedler_separators(const MultiplexSpec& spec, const Eigen::VectorXd& weights,
                                              const std::vector<double>& quantiles);

struct ShadowReport {
  bool holds = false;
  bool trivial = false;        // origin inside conv(S)
  int shadowed_component = 0;  // 1 or 2; 0 when trivial or failing
};

ShadowReport separator_shadow_check(const EmbeddingRealization& emb, const SeparatorSpec& sep,
                                    const std::vector<SupportEdge>& edges, double tol = 1e-7);

struct TensionReport {
  std::vector<SupportEdge> edges;      // edges used in the fit
  std::vector<SupportEdge> excluded;   // coincident endpoints
  Eigen::VectorXd tensions;            // T_ij >= 0
  Eigen::VectorXd stiffness;           // lambda_2 T_ij / ||u_i - u_j||, compares to the edge weight
  Eigen::VectorXd node_residuals;      // ||sum_j T_ij dir_ij - u_i|| per node
  double max_residual = 0.0;
  double max_point_norm = 0.0;
};

/// Nonnegative least-squares fit of the spring tensions in the static
/// equilibrium sum_j T_ij (u_i - u_j)/||u_i - u_j|| = u_i. `lambda2` is the
/// optimal connectivity used to express stiffness in weight units.
TensionReport tension_residual(const EmbeddingRealization& emb, const MultiplexSpec& spec,
                               const Eigen::VectorXd& weights, double lambda2);

}  // namespace spectraplex
