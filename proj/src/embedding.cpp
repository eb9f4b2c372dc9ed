#include "spectraplex/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "spectraplex/errors.hpp"
#include "spectraplex/geometry.hpp"
#include "spectraplex/sdp.hpp"
#include "spectraplex/spectral.hpp"

namespace spectraplex {

std::string to_string(EmbeddingSource source) {
  switch (source) {
    case EmbeddingSource::Lambda2Dual: return "lambda2-dual";
    case EmbeddingSource::LambdanDual: return "lambdan-dual";
    case EmbeddingSource::WidthDualU: return "width-dual-u";
    case EmbeddingSource::WidthDualV: return "width-dual-v";
    case EmbeddingSource::Scaled: return "scaled";
  }
  return "unknown";
}

EmbeddingRealization gram_embed(const Eigen::MatrixXd& x, double rank_tol, EmbeddingSource source) {
  if (x.rows() != x.cols() || x.rows() == 0) throw InputError("Gram matrix must be square and nonempty");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (x + x.transpose()));
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  if (ev.minCoeff() < -1e-9 * std::max(1.0, std::abs(top))) throw InputError("Gram matrix is indefinite");
  if (!(top > 0.0)) throw InputError("Gram matrix is zero");

  const int n = static_cast<int>(ev.size());
  EmbeddingRealization emb;
  emb.source = source;
  emb.rank_tol = rank_tol;
  std::vector<int> kept;
  for (int i = n - 1; i >= 0; --i)
    if (ev[i] >= rank_tol * top) kept.push_back(i);
  emb.effective_dimension = static_cast<int>(kept.size());
  emb.points.resize(n, emb.effective_dimension);
  for (std::size_t k = 0; k < kept.size(); ++k)
    emb.points.col(k) = es.eigenvectors().col(kept[k]) * std::sqrt(ev[kept[k]]);

  const double trace = ev.cwiseMax(0.0).sum();
  double acc = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    acc += std::max(0.0, ev[i]);
    ++emb.visual_dimension;
    if (acc >= 0.99 * trace) break;
  }
  return emb;
}

EmbeddingRealization certificate_embedding(const OptimizationResult& result, EmbeddingSource source,
                                           double rank_tol) {
  const bool use_x = source == EmbeddingSource::Lambda2Dual || source == EmbeddingSource::WidthDualU;
  const auto& m = use_x ? result.dual.x : result.dual.y;
  if (!m) throw InputError("result carries no " + to_string(source) + " certificate");
  return gram_embed(*m, rank_tol, source);
}

double projection_residual(const EmbeddingRealization& emb, const Eigen::MatrixXd& laplacian, double lambda,
                           int trials, std::uint64_t seed) {
  const int d = static_cast<int>(emb.points.cols());
  if (d == 0) return 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Eigen::MatrixXd shifted =
      laplacian - lambda * Eigen::MatrixXd::Identity(laplacian.rows(), laplacian.cols());
  const double floor = 1e-12 * std::max(1.0, emb.points.norm());
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd p(d);
    for (int i = 0; i < d; ++i) p[i] = gauss(rng);
    p.normalize();
    const Eigen::VectorXd y = emb.points * p;
    if (y.norm() <= floor) continue;
    worst = std::max(worst, (shifted * y).norm() / y.norm());
  }
  return worst;
}

ClumpReport clump_check(const EmbeddingRealization& emb, const MultiplexSpec& spec) {
  ClumpReport r;
  const int N = spec.layer_size();
  const int n = spec.total_nodes();
  if (emb.points.rows() != n) throw InputError("embedding does not match the multiplex");
  r.h = emb.points.row(0).transpose();
  r.h_norm = r.h.norm();
  if (emb.effective_dimension != 1 || r.h_norm == 0.0) return r;
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd target = i < N ? r.h : Eigen::VectorXd(-r.h);
    err = std::max(err, (emb.points.row(i).transpose() - target).norm());
  }
  r.clumped = err <= 1e-5;
  return r;
}

bool antipodal_check(const EmbeddingRealization& emb, const MultiplexSpec& spec, double tol) {
  const double scale = emb.points.rowwise().norm().maxCoeff();
  double worst = 0.0;
  for (int k = 0; k < spec.pair_count(); ++k)
    worst = std::max(worst, (emb.points.row(spec.pair_node1(k)) + emb.points.row(spec.pair_node2(k))).norm());
  return worst <= tol * scale;
}

double procrustes_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) throw InputError("procrustes: row mismatch");
  const Eigen::Index d = std::max(a.cols(), b.cols());
  Eigen::MatrixXd pa = Eigen::MatrixXd::Zero(a.rows(), d);
  Eigen::MatrixXd pb = Eigen::MatrixXd::Zero(b.rows(), d);
  pa.leftCols(a.cols()) = a;
  pb.leftCols(b.cols()) = b;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pa.transpose() * pb, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd r = svd.matrixU() * svd.matrixV().transpose();
  return (pa * r - pb).norm();
}

SmallBudgetReport small_budget_embedding_check(const EmbeddingRealization& emb, const MultiplexSpec& spec) {
  SmallBudgetReport r;
  const auto dom = dominant_layer(spec);
  if (dom.layer == 0 || dom.top_vector.size() == 0) return r;
  const int N = spec.pair_count();
  Eigen::MatrixXd dominant(N, emb.points.cols());
  Eigen::MatrixXd weak(N, emb.points.cols());
  for (int k = 0; k < N; ++k) {
    const int a = spec.pair_node1(k);
    const int b = spec.pair_node2(k);
    dominant.row(k) = emb.points.row(dom.layer == 1 ? a : b);
    weak.row(k) = emb.points.row(dom.layer == 1 ? b : a);
  }
  r.other_layer_max = weak.rowwise().norm().maxCoeff();
  r.gamma = dominant.norm();
  const Eigen::MatrixXd reference = r.gamma * dom.top_vector;
  r.alignment_error = procrustes_distance(dominant, reference);
  r.holds = emb.effective_dimension == 1 && r.other_layer_max <= 1e-5 && r.alignment_error <= 1e-5;
  return r;
}

ScaledEmbedding scaled_embedding(const MultiplexSpec& spec, double c, double rank_tol) {
  require_valid(spec);
  if (!(c > 0.0)) throw DomainError("scaled embedding needs a positive budget");
  const int N = spec.pair_count();
  const int n = spec.total_nodes();
  const Eigen::MatrixXd p = ones_complement(n);
  const Eigen::MatrixXd l0 = intralayer_laplacian(spec);

  std::vector<Eigen::MatrixXd> m(N);
  double scale = 0.0;
  for (int k = 0; k < N; ++k) {
    m[k] = c * pair_laplacian(spec, k) + l0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m[k], Eigen::EigenvaluesOnly);
    scale = std::max(scale, es.eigenvalues().maxCoeff());
  }

  // Variables omega = scale * w-hat.
  ConicProblem prob;
  const int sdp = prob.add_block(ConicProblem::BlockKind::Dense, -Eigen::MatrixXd::Identity(n - 1, n - 1));
  const int lp = prob.add_block(ConicProblem::BlockKind::Diagonal, Eigen::MatrixXd::Zero(N, 1));
  for (int k = 0; k < N; ++k) {
    const int var = prob.add_variable(-1.0);
    prob.set_coefficient(var, sdp, -(p.transpose() * m[k] * p) / scale);
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(N, 1);
    e(k, 0) = -1.0;
    prob.set_coefficient(var, lp, e);
  }
  const ConicSolution sol = solve_conic(prob);

  ScaledEmbedding out;
  out.scaled_weights = (sol.y / scale).cwiseMax(0.0);
  Eigen::MatrixXd xhat = p * sol.x[sdp] * p.transpose() / scale;
  xhat = 0.5 * (xhat + xhat.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xhat);
  xhat = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).asDiagonal() * es.eigenvectors().transpose();
  out.constraint_values.resize(N);
  for (int k = 0; k < N; ++k) out.constraint_values[k] = (xhat.array() * m[k].array()).sum();
  // Rescale onto the feasible set so the dual value is a valid bound.
  const double worst = out.constraint_values.maxCoeff();
  if (worst > 0.0) {
    xhat /= worst;
    out.constraint_values /= worst;
  }
  out.gram = xhat;
  out.primal_value = out.scaled_weights.sum();
  out.dual_value = xhat.trace();
  out.relative_gap = std::abs(out.primal_value - out.dual_value) / std::max(1.0, std::abs(out.primal_value));
  out.weights = c * out.scaled_weights / out.primal_value;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> el(assemble_supra_laplacian(spec, out.weights),
                                                    Eigen::EigenvaluesOnly);
  out.lambda2 = el.eigenvalues()[1];
  out.embedding = gram_embed(xhat, rank_tol, EmbeddingSource::Scaled);
  return out;
}

std::vector<SupportEdge> support_edges(const MultiplexSpec& spec, const Eigen::VectorXd& weights) {
  std::vector<SupportEdge> edges;
  const int N = spec.layer_size();
  for (const auto& e : spec.layer1().edges()) edges.push_back({e.i, e.j, e.weight, false, -1});
  for (const auto& e : spec.layer2().edges()) edges.push_back({N + e.i, N + e.j, e.weight, false, -1});
  const double wmax = weights.size() ? weights.maxCoeff() : 0.0;
  for (int k = 0; k < spec.pair_count(); ++k)
    if (weights[k] > 1e-7 * wmax) edges.push_back({spec.pair_node1(k), spec.pair_node2(k), weights[k], true, k});
  return edges;
}

void validate_separator(const SeparatorSpec& sep, int node_count, const std::vector<SupportEdge>& edges) {
  std::vector<int> label(node_count, -1);
  auto mark = [&](const std::vector<int>& nodes, int tag) {
    for (int v : nodes) {
      if (v < 0 || v >= node_count) throw InputError("separator node out of range");
      if (label[v] != -1) throw InputError("separator sets overlap");
      label[v] = tag;
    }
  };
  mark(sep.separator_nodes, 0);
  mark(sep.component1, 1);
  mark(sep.component2, 2);
  if (std::find(label.begin(), label.end(), -1) != label.end()) throw InputError("separator sets do not cover V");
  if (sep.component1.empty() || sep.component2.empty()) throw InputError("separator component is empty");
  for (const auto& e : edges)
    if (label[e.i] + label[e.j] == 3 && label[e.i] != 0 && label[e.j] != 0)
      throw InputError("an edge joins the two components");
}

std::vector<SeparatorSpec> fiedler_separators(const MultiplexSpec& spec, const Eigen::VectorXd& weights,
                                              const std::vector<double>& quantiles) {
  const int n = spec.total_nodes();
  const auto edges = support_edges(spec, weights);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    lap(e.i, e.i) += 1.0;
    lap(e.j, e.j) += 1.0;
    lap(e.i, e.j) -= 1.0;
    lap(e.j, e.i) -= 1.0;
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  const Eigen::VectorXd f = es.eigenvectors().col(1);
  std::vector<double> sorted(f.data(), f.data() + n);
  std::sort(sorted.begin(), sorted.end());

  std::vector<SeparatorSpec> out;
  std::set<std::vector<int>> seen;
  for (double q : quantiles) {
    const int idx = std::clamp(static_cast<int>(std::floor(q * n)), 1, n - 1);
    const double t = sorted[idx];
    std::vector<int> label(n, 2);
    for (int v = 0; v < n; ++v)
      if (f[v] < t) label[v] = 1;
    for (int v = 0; v < n; ++v)
      if (label[v] == 2)
        for (int u : adj[v])
          if (label[u] == 1) {
            label[v] = 0;
            break;
          }
    SeparatorSpec sep;
    for (int v = 0; v < n; ++v)
      (label[v] == 0 ? sep.separator_nodes : label[v] == 1 ? sep.component1 : sep.component2).push_back(v);
    if (sep.component1.empty() || sep.component2.empty() || sep.separator_nodes.empty()) continue;
    if (!seen.insert(sep.component1).second) continue;
    out.push_back(std::move(sep));
  }
  return out;
}

ShadowReport separator_shadow_check(const EmbeddingRealization& emb, const SeparatorSpec& sep,
                                    const std::vector<SupportEdge>& edges, double tol) {
  validate_separator(sep, static_cast<int>(emb.points.rows()), edges);
  ShadowReport r;
  Eigen::MatrixXd hull(emb.points.cols(), sep.separator_nodes.size());
  for (std::size_t i = 0; i < sep.separator_nodes.size(); ++i)
    hull.col(i) = emb.points.row(sep.separator_nodes[i]).transpose();
  const double scale = std::max(1e-300, emb.points.rowwise().norm().maxCoeff());
  if (min_norm_point(hull, 1e-16).distance <= tol * scale) {
    r.holds = true;
    r.trivial = true;
    return r;
  }
  for (int side : {1, 2}) {
    const auto& comp = side == 1 ? sep.component1 : sep.component2;
    bool all = true;
    for (int v : comp) {
      if (!segment_meets_hull(emb.points.row(v).transpose(), hull, tol)) {
        all = false;
        break;
      }
    }
    if (all) {
      r.holds = true;
      r.shadowed_component = side;
      return r;
    }
  }
  return r;
}

TensionReport tension_residual(const EmbeddingRealization& emb, const MultiplexSpec& spec,
                               const Eigen::VectorXd& weights, double lambda2) {
  const int n = spec.total_nodes();
  const int d = static_cast<int>(emb.points.cols());
  if (emb.points.rows() != n) throw InputError("embedding does not match the multiplex");
  TensionReport r;
  r.max_point_norm = emb.points.rowwise().norm().maxCoeff();
  if (!(r.max_point_norm > 0.0)) throw DomainError("all points coincide");
  const double coincide = 1e-6 * r.max_point_norm;
  for (const auto& e : support_edges(spec, weights)) {
    const double len = (emb.points.row(e.i) - emb.points.row(e.j)).norm();
    (len <= coincide ? r.excluded : r.edges).push_back(e);
  }
  const int m = static_cast<int>(r.edges.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n * d, m);
  Eigen::VectorXd b(n * d);
  for (int i = 0; i < n; ++i) b.segment(i * d, d) = emb.points.row(i).transpose();
  for (int k = 0; k < m; ++k) {
    const auto& e = r.edges[k];
    const Eigen::VectorXd dir = (emb.points.row(e.i) - emb.points.row(e.j)).transpose().normalized();
    a.block(e.i * d, k, d, 1) += dir;
    a.block(e.j * d, k, d, 1) -= dir;
  }
  const auto fit = nonnegative_least_squares(a, b);
  r.tensions = fit.x;
  r.stiffness.resize(m);
  for (int k = 0; k < m; ++k) {
    const auto& e = r.edges[k];
    r.stiffness[k] = lambda2 * r.tensions[k] / (emb.points.row(e.i) - emb.points.row(e.j)).norm();
  }
  const Eigen::VectorXd res = a * r.tensions - b;
  r.node_residuals.resize(n);
  for (int i = 0; i < n; ++i) r.node_residuals[i] = res.segment(i * d, d).norm();
  r.max_residual = r.node_residuals.maxCoeff();
  return r;
}

}  // namespace spectraplex
