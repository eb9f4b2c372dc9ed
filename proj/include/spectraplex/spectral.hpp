#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spectraplex/graph.hpp"

namespace spectraplex {

/// Run of eigenvalues treated as one multiple eigenvalue: indices [begin, end).
struct EigenCluster {
  double value = 0.0;
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
};

struct SpectrumSummary {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, same order
  std::vector<EigenCluster> clusters;
  double tol = 0.0;

  int dimension() const { return static_cast<int>(eigenvalues.size()); }
  double min() const { return eigenvalues[0]; }
  double max() const { return eigenvalues[eigenvalues.size() - 1]; }
  const EigenCluster& cluster_of(int index) const;
  int multiplicity_of(int index) const { return cluster_of(index).size(); }
  /// Orthonormal basis of the cluster containing `index`.
  Eigen::MatrixXd eigenspace(int index) const;
};

/// max(1e-8, 1e-7 * max|lambda|).
double default_cluster_tol(const Eigen::VectorXd& eigenvalues);

/// Full dense eigendecomposition with multiplicity clustering. A cluster
/// is grown from its smallest member while the spread stays within `tol`.
/// Throws InputError for non-symmetric input.
SpectrumSummary eig_symmetric_clustered(const Eigen::MatrixXd& A,
                                        std::optional<double> tol = std::nullopt);

/// Moore-Penrose pseudoinverse of a symmetric matrix; eigenvalues with
/// |lambda| <= rank_tol * max|lambda| are treated as zero.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& A, double rank_tol = 1e-10);

/// Orthonormal basis (n x (n-1)) of the complement of the all-ones vector.
Eigen::MatrixXd ones_complement(int n);

/// Budget up to which uniform interlayer weights maximize lambda_2:
/// c* = (n/2) lambda_2[(L1^+ + L2^+)^+] with n = 2N. Throws DomainError for
/// a disconnected layer.
double threshold_c_star(const Eigen::MatrixXd& L1, const Eigen::MatrixXd& L2);
double threshold_c_star(const MultiplexSpec& spec);

/// Spectral data of the layer with the largest Laplacian eigenvalue.
struct DominantLayer {
  int layer = 0;                  // 1 or 2; 0 on a tie
  double lambda_top = 0.0;        // lambda_N^1
  double other_top = 0.0;
  bool simple = false;
  Eigen::VectorXd top_vector;     // indexed by pair (aligned), unit norm
  std::vector<int> nodal_pairs;   // pairs whose dominant-layer node has |v| <= 1e-8 |v|_inf
};

DominantLayer dominant_layer(const MultiplexSpec& spec);

/// Unit-sum pattern spread evenly over the nodal pairs (empty if none).
Eigen::VectorXd uniform_nodal_pattern(const MultiplexSpec& spec);

struct C1StarResult {
  double c1_star = 0.0;
  Eigen::MatrixXd q_matrix;  // Lbar - Ltilde Lbar^+ Ltilde
  int negative_inertia_at_zero = 0;
};

/// Smallest c > 0 at which Q + 2c diag(pattern) becomes singular. The
/// perturbation is PSD, so eigenvalues only rise; the first singular budget
/// is where the count of negative eigenvalues first drops. Located by
/// bracket growth from c = 1 (cap 1e6) and bisection to 1e-9.
/// Throws DomainError when the nodal set is empty, lambda_N^1 is not simple,
/// the layer maxima tie, or Q has no negative eigenvalue.
C1StarResult threshold_c1_star(const MultiplexSpec& spec, const Eigen::VectorXd& nodal_pattern);

struct BoundsReport {
  double lambda2_linear_cap = 0.0;      // 4c/n
  double lambda2_ave_cap = 0.0;         // lambda_2(L_ave)
  double lambdan_lower = 0.0;           // max(lambda_N^1, 2c/N)
  double lambdan_upper_large_c = 0.0;   // lambda_max(L_ave) + 2c/N
  double width_lower = 0.0;             // lambda_N^1 - 2c/N
  double width_bracket_low = 0.0;       // 2c/N - lambda_2(L_ave)
  double width_bracket_high = 0.0;      // lambda_max(L_ave) - lambda_2(L_ave) + 2c/N
};

BoundsReport spectral_bounds(const MultiplexSpec& spec, double c);

/// Change detected on a budget sweep.
struct Transition {
  double budget = 0.0;
  std::string kind;        // "multiplicity", "linear_exit", "plateau_exit"
  int multiplicity_before = 0;
  int multiplicity_after = 0;
};

struct ThresholdReport {
  double c_star = 0.0;
  std::optional<double> c1_star;
  std::string c1_star_note;
  std::vector<Transition> transitions;
  Eigen::MatrixXd q_matrix;
};

}  // namespace spectraplex
