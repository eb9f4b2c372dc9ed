#include "spectraplex/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "spectraplex/errors.hpp"
#include "spectraplex/sdp.hpp"
#include "spectraplex/spectral.hpp"

namespace spectraplex {

namespace {

// Interlayer part of L(w); w may have either sign.
Eigen::MatrixXd interlayer_part(const MultiplexSpec& spec, const Eigen::VectorXd& w) {
  const int n = spec.total_nodes();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < spec.pair_count(); ++k) {
    const int a = spec.pair_node1(k);
    const int b = spec.pair_node2(k);
    l(a, a) += w[k];
    l(b, b) += w[k];
    l(a, b) -= w[k];
    l(b, a) -= w[k];
  }
  return l;
}

Eigen::VectorXd project_to_simplex_scale(Eigen::VectorXd w, double c) {
  w = w.cwiseMax(0.0);
  const double sum = w.sum();
  if (sum > 0.0) {
    w *= c / sum;
  } else {
    w.setConstant(c / static_cast<double>(w.size()));
  }
  return w;
}

// Symmetrize, optionally remove the e-direction, clip negative eigenvalues
// and rescale to unit trace.
Eigen::MatrixXd clean_trace_one(const Eigen::MatrixXd& m, bool center) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd x = 0.5 * (m + m.transpose());
  if (center) {
    const Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    x = j * x * j;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (x + x.transpose()));
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  x = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  const double tr = x.trace();
  if (!(tr > 0.0)) throw DomainError("certificate has no positive part");
  return x / tr;
}

struct ProgramBlock {
  Eigen::MatrixXd q;  // columns span the tested subspace (full coordinates)
  bool lower = true;  // lower: Q^T L Q >= lambda I; upper: Q^T L Q <= t I
};

struct ProgramOutput {
  Eigen::VectorXd weights;
  std::vector<Eigen::MatrixXd> certificates;  // per block, full coordinates
  int iterations = 0;
  bool converged = false;
};

// maximize sum(lambda) - sum(t) over w = (c/N) 1 + c B zeta >= 0.
ProgramOutput solve_spectral_program(const MultiplexSpec& spec, double c,
                                     const std::vector<ProgramBlock>& blocks, int max_iterations) {
  const int N = spec.pair_count();
  const Eigen::MatrixXd l0 = intralayer_laplacian(spec);
  const Eigen::MatrixXd lu = l0 + interlayer_part(spec, Eigen::VectorXd::Constant(N, c / N));
  const Eigen::MatrixXd basis = ones_complement(N);
  const int nz = static_cast<int>(basis.cols());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(l0, Eigen::EigenvaluesOnly);
  const double scale = std::max(1e-12, es0.eigenvalues().maxCoeff() + 2.0 * c / N);

  ConicProblem prob;
  std::vector<int> block_ids;
  for (const auto& blk : blocks) {
    const Eigen::MatrixXd cb = blk.q.transpose() * lu * blk.q / scale;
    block_ids.push_back(prob.add_block(ConicProblem::BlockKind::Dense, blk.lower ? cb : Eigen::MatrixXd(-cb)));
  }
  int lp_block = -1;
  if (nz > 0) lp_block = prob.add_block(ConicProblem::BlockKind::Diagonal, Eigen::MatrixXd::Constant(N, 1, 1.0 / N));

  for (int j = 0; j < nz; ++j) {
    const int k = prob.add_variable(0.0);
    const Eigen::MatrixXd lz = interlayer_part(spec, basis.col(j)) * (c / scale);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const Eigen::MatrixXd a = blocks[b].q.transpose() * lz * blocks[b].q;
      prob.set_coefficient(k, block_ids[b], blocks[b].lower ? Eigen::MatrixXd(-a) : a);
    }
    prob.set_coefficient(k, lp_block, -basis.col(j));
  }
  std::vector<int> scalar_ids;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const int d = static_cast<int>(blocks[b].q.cols());
    const int k = prob.add_variable(blocks[b].lower ? 1.0 : -1.0);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    prob.set_coefficient(k, block_ids[b], blocks[b].lower ? id : Eigen::MatrixXd(-id));
    scalar_ids.push_back(k);
  }

  ConicOptions copts;
  copts.max_iterations = std::clamp(max_iterations, 1, 150);
  copts.tolerance = 1e-13;
  const ConicSolution sol = solve_conic(prob, copts);

  ProgramOutput out;
  Eigen::VectorXd w = Eigen::VectorXd::Constant(N, c / N);
  if (nz > 0) w += c * basis * sol.y.head(nz);
  out.weights = project_to_simplex_scale(w, c);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    out.certificates.push_back(blocks[b].q * sol.x[block_ids[b]] * blocks[b].q.transpose());
  out.iterations = sol.iterations;
  out.converged = sol.converged;
  return out;
}

Eigen::VectorXd clumped_vector(const MultiplexSpec& spec) {
  const int N = spec.layer_size();
  const int n = spec.total_nodes();
  Eigen::VectorXd v(n);
  v.head(N).setConstant(1.0);
  v.tail(n - N).setConstant(-1.0);
  return v / std::sqrt(static_cast<double>(n));
}

// Unit vector carried by the top eigenvector of the dominant layer, zero on the other.
Eigen::VectorXd dominant_top_vector(const MultiplexSpec& spec) {
  auto d = dominant_layer(spec);
  const int n = spec.total_nodes();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  if (d.top_vector.size() == 0) {
    // Tie or repeated top eigenvalue: any top eigenvector of L0 will do.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(intralayer_laplacian(spec));
    return es.eigenvectors().col(n - 1);
  }
  for (int k = 0; k < spec.pair_count(); ++k) {
    const int node = d.layer == 1 ? spec.pair_node1(k) : spec.pair_node2(k);
    u[node] = d.top_vector[k];
  }
  return u;
}

double default_multiplicity_tol(const Eigen::VectorXd& ev) {
  return 1e-6 * std::max(1.0, ev.cwiseAbs().maxCoeff());
}

int count_near(const Eigen::VectorXd& ev, int index, double tol, int first) {
  int count = 0;
  for (Eigen::Index i = first; i < ev.size(); ++i)
    if (std::abs(ev[i] - ev[index]) <= tol) ++count;
  return count;
}

struct Primal {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  double lambda2 = 0.0;
  double lambda_n = 0.0;
  double value = 0.0;
  Eigen::MatrixXd laplacian;
};

Primal evaluate_primal(const MultiplexSpec& spec, const Eigen::VectorXd& w, ObjectiveKind kind) {
  Primal p;
  p.laplacian = assemble_supra_laplacian(spec, w);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.laplacian);
  p.eigenvalues = es.eigenvalues();
  p.eigenvectors = es.eigenvectors();
  const int n = static_cast<int>(p.eigenvalues.size());
  p.lambda2 = n > 1 ? p.eigenvalues[1] : 0.0;
  p.lambda_n = p.eigenvalues[n - 1];
  switch (kind) {
    case ObjectiveKind::MaxLambda2: p.value = p.lambda2; break;
    case ObjectiveKind::MinLambdaN: p.value = p.lambda_n; break;
    case ObjectiveKind::MinWidth: p.value = p.lambda_n - p.lambda2; break;
  }
  return p;
}

bool needs_x(ObjectiveKind kind) { return kind != ObjectiveKind::MinLambdaN; }
bool needs_y(ObjectiveKind kind) { return kind != ObjectiveKind::MaxLambda2; }

// Dual value, xi and residuals of an already cleaned certificate.
void score_certificate(const MultiplexSpec& spec, double c, ObjectiveKind kind, const Eigen::VectorXd& w,
                       const Primal& primal, DualCertificate& cert) {
  const int n = spec.total_nodes();
  cert.feasibility_residuals.clear();
  const double active_floor = 1e-8 * std::max(1.0, c);
  Eigen::VectorXd pk = Eigen::VectorXd::Zero(spec.pair_count());
  auto min_eig = [](const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
  };
  if (cert.x) {
    const Eigen::MatrixXd& x = *cert.x;
    cert.feasibility_residuals.push_back({"x_trace", std::abs(x.trace() - 1.0)});
    cert.feasibility_residuals.push_back({"x_barycenter", std::abs(x.sum())});
    cert.feasibility_residuals.push_back({"x_psd", std::max(0.0, -min_eig(x))});
    cert.feasibility_residuals.push_back(
        {"x_complementarity", std::abs((x.array() * primal.laplacian.array()).sum() - primal.lambda2)});
  }
  if (cert.y) {
    const Eigen::MatrixXd& y = *cert.y;
    cert.feasibility_residuals.push_back({"y_trace", std::abs(y.trace() - 1.0)});
    cert.feasibility_residuals.push_back({"y_psd", std::max(0.0, -min_eig(y))});
    cert.feasibility_residuals.push_back(
        {"y_complementarity", std::abs(primal.lambda_n - (y.array() * primal.laplacian.array()).sum())});
  }
  const Eigen::MatrixXd l0 = intralayer_laplacian(spec);
  switch (kind) {
    case ObjectiveKind::MaxLambda2:
      pk = pair_inner_products(spec, *cert.x);
      cert.xi = -pk.maxCoeff();
      cert.dual_value = (cert.x->array() * l0.array()).sum() - c * cert.xi;
      break;
    case ObjectiveKind::MinLambdaN:
      pk = pair_inner_products(spec, *cert.y);
      cert.xi = pk.minCoeff();
      cert.dual_value = (cert.y->array() * l0.array()).sum() + c * cert.xi;
      break;
    case ObjectiveKind::MinWidth: {
      const Eigen::MatrixXd d = *cert.y - *cert.x;
      pk = pair_inner_products(spec, d);
      cert.xi = pk.minCoeff();
      cert.dual_value = (d.array() * l0.array()).sum() + c * cert.xi;
      break;
    }
  }
  // Complementary slackness on the weights: w_k > 0 requires the pair
  // constraint to be tight.
  double active = 0.0;
  for (int k = 0; k < spec.pair_count(); ++k) {
    if (w.size() == 0 || w[k] <= active_floor) continue;
    const double slack = kind == ObjectiveKind::MaxLambda2 ? pk[k] + cert.xi : pk[k] - cert.xi;
    active = std::max(active, std::abs(slack));
  }
  cert.feasibility_residuals.push_back({"active_slack", active});
  (void)n;
}

DualCertificate make_certificate(const MultiplexSpec& spec, double c, ObjectiveKind kind, const Eigen::VectorXd& w,
                                 const Primal& primal, const std::optional<Eigen::MatrixXd>& x_raw,
                                 const std::optional<Eigen::MatrixXd>& y_raw, std::string origin) {
  DualCertificate cert;
  cert.origin = std::move(origin);
  if (x_raw) cert.x = clean_trace_one(*x_raw, true);
  if (y_raw) cert.y = clean_trace_one(*y_raw, false);
  score_certificate(spec, c, kind, w, primal, cert);
  return cert;
}

struct Certified {
  DualCertificate cert;
  double gap = 0.0;
  int mult2 = 0;
  int multn = 0;
  int iterations = 0;
};

// Certificate on the eigenspace clusters of L(w). Cluster tolerances
// are widened until the reduced program closes the gap.
std::optional<Certified> eigenspace_certificate(const MultiplexSpec& spec, double c, ObjectiveKind kind,
                                                const Eigen::VectorXd& w, const Primal& primal,
                                                const SolverOptions& opts) {
  const Eigen::VectorXd& ev = primal.eigenvalues;
  const int n = static_cast<int>(ev.size());
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<double> tols;
  if (opts.cluster_tol) {
    tols.push_back(*opts.cluster_tol);
  } else {
    for (double t : {1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4}) tols.push_back(t * scale);
  }
  std::optional<Certified> best;
  int last2 = -1;
  int lastn = -1;
  for (double tol : tols) {
    std::vector<int> low, high;
    for (int i = 1; i < n; ++i)
      if (std::abs(ev[i] - primal.lambda2) <= tol) low.push_back(i);
    for (int i = 0; i < n; ++i)
      if (std::abs(ev[i] - primal.lambda_n) <= tol) high.push_back(i);
    const int m2 = needs_x(kind) ? static_cast<int>(low.size()) : 0;
    const int mn = needs_y(kind) ? static_cast<int>(high.size()) : 0;
    if (m2 == last2 && mn == lastn) continue;
    last2 = m2;
    lastn = mn;
    if ((needs_x(kind) && low.empty()) || (needs_y(kind) && high.empty())) continue;
    if (kind == ObjectiveKind::MinWidth && std::find(low.begin(), low.end(), high.front()) != low.end()) continue;

    std::vector<ProgramBlock> blocks;
    auto basis_of = [&](const std::vector<int>& idx) {
      Eigen::MatrixXd q(n, idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i) q.col(i) = primal.eigenvectors.col(idx[i]);
      return q;
    };
    if (needs_y(kind)) blocks.push_back({basis_of(high), false});
    if (needs_x(kind)) blocks.push_back({basis_of(low), true});
    ProgramOutput out;
    try {
      out = solve_spectral_program(spec, c, blocks, opts.max_iterations);
    } catch (const DomainError&) {
      continue;
    }
    std::optional<Eigen::MatrixXd> xr, yr;
    std::size_t b = 0;
    if (needs_y(kind)) yr = out.certificates[b++];
    if (needs_x(kind)) xr = out.certificates[b++];
    Certified cand;
    try {
      cand.cert = make_certificate(spec, c, kind, w, primal, xr, yr, "eigenspace");
    } catch (const DomainError&) {
      continue;
    }
    cand.gap = duality_gap(primal.value, cand.cert.dual_value);
    cand.mult2 = static_cast<int>(low.size());
    cand.multn = static_cast<int>(high.size());
    cand.iterations = out.iterations;
    if (!best || cand.gap < best->gap) best = cand;
    if (cand.gap <= 1e-3 * opts.gap_tolerance) break;
  }
  return best;
}

std::vector<ProgramBlock> full_blocks(const MultiplexSpec& spec, ObjectiveKind kind) {
  const int n = spec.total_nodes();
  std::vector<ProgramBlock> blocks;
  if (needs_y(kind)) blocks.push_back({Eigen::MatrixXd::Identity(n, n), false});
  if (needs_x(kind)) blocks.push_back({ones_complement(n), true});
  return blocks;
}

OptimizationResult assemble_result(double c, ObjectiveKind kind, const Eigen::VectorXd& w,
                                   const Primal& primal, const SolverOptions& opts) {
  OptimizationResult r;
  r.objective = kind;
  r.weights = WeightAllocation(w, w.sum());
  if (std::abs(w.sum() - c) <= 1e-12 * std::max(1.0, c)) r.weights = WeightAllocation(w, c);
  r.objective_value = primal.value;
  r.lambda2 = primal.lambda2;
  r.lambda_n = primal.lambda_n;
  r.shift_mu = kind == ObjectiveKind::MinLambdaN ? 0.0 : primal.lambda2;
  r.eigenvalues = primal.eigenvalues;
  const double tol = opts.cluster_tol.value_or(default_multiplicity_tol(primal.eigenvalues));
  const int n = static_cast<int>(primal.eigenvalues.size());
  r.lambda2_multiplicity = n > 1 ? count_near(primal.eigenvalues, 1, tol, 1) : 0;
  r.lambda_n_multiplicity = count_near(primal.eigenvalues, n - 1, tol, 0);
  return r;
}

void finish_status(OptimizationResult& r, const SolverOptions& opts) {
  r.duality_gap = duality_gap(r.objective_value, r.dual.dual_value);
  r.status = r.duality_gap <= opts.gap_tolerance ? SolveStatus::Optimal : SolveStatus::MaxIter;
}

OptimizationResult zero_budget(const MultiplexSpec& spec, ObjectiveKind kind, const SolverOptions& opts) {
  const Eigen::VectorXd w = Eigen::VectorXd::Zero(spec.pair_count());
  const Primal primal = evaluate_primal(spec, w, kind);
  OptimizationResult r = assemble_result(0.0, kind, w, primal, opts);
  std::optional<Eigen::MatrixXd> x, y;
  if (needs_x(kind)) {
    const Eigen::VectorXd v = clumped_vector(spec);
    x = v * v.transpose();
  }
  if (needs_y(kind)) {
    const Eigen::VectorXd u = dominant_top_vector(spec);
    y = u * u.transpose();
  }
  r.dual = make_certificate(spec, 0.0, kind, w, primal, x, y, "closed_form");
  r.method = "zero_budget";
  finish_status(r, opts);
  return r;
}

void check_inputs(const MultiplexSpec& spec, double c) {
  require_valid(spec);
  if (!(c >= 0.0) || !std::isfinite(c)) throw InputError("budget must be a nonnegative finite number");
}

// Among the interior-point weights and the canonical patterns (uniform,
// uniform on the nodal set), keep those matching the best objective within
// 1e-9 relative and return the one of smallest Euclidean norm.
Eigen::VectorXd min_norm_candidate(const MultiplexSpec& spec, double c, ObjectiveKind kind,
                                   const Eigen::VectorXd& solved) {
  const int N = spec.pair_count();
  std::vector<Eigen::VectorXd> cands{solved, Eigen::VectorXd::Constant(N, c / N)};
  if (kind == ObjectiveKind::MinLambdaN) {
    const Eigen::VectorXd pattern = uniform_nodal_pattern(spec);
    if (pattern.size() == N) cands.push_back(c * pattern);
  }
  const double sign = kind == ObjectiveKind::MaxLambda2 ? 1.0 : -1.0;
  std::vector<double> score;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& w : cands) {
    score.push_back(sign * evaluate_primal(spec, w, kind).value);
    best = std::max(best, score.back());
  }
  const double tol = 1e-9 * std::max(1.0, std::abs(best));
  std::size_t pick = 0;
  bool found = false;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (score[i] < best - tol) continue;
    if (!found || cands[i].norm() < cands[pick].norm()) pick = i;
    found = true;
  }
  return cands[pick];
}

OptimizationResult solve_iterative(const MultiplexSpec& spec, double c, ObjectiveKind kind, const SolverOptions& opts) {
  const ProgramOutput out = solve_spectral_program(spec, c, full_blocks(spec, kind), opts.max_iterations);
  const Eigen::VectorXd w = min_norm_candidate(spec, c, kind, out.weights);
  const Primal primal = evaluate_primal(spec, w, kind);
  OptimizationResult r = assemble_result(c, kind, w, primal, opts);
  r.method = "interior_point";
  r.solver_iterations = out.iterations;

  std::optional<Eigen::MatrixXd> xr, yr;
  std::size_t b = 0;
  if (needs_y(kind)) yr = out.certificates[b++];
  if (needs_x(kind)) xr = out.certificates[b++];
  DualCertificate full = make_certificate(spec, c, kind, w, primal, xr, yr, "full");
  const double full_gap = duality_gap(primal.value, full.dual_value);

  const auto reduced = eigenspace_certificate(spec, c, kind, w, primal, opts);
  if (reduced && (reduced->gap <= 1e-3 * opts.gap_tolerance || reduced->gap <= full_gap)) {
    r.dual = reduced->cert;
    if (needs_x(kind)) r.lambda2_multiplicity = reduced->mult2;
    if (needs_y(kind)) r.lambda_n_multiplicity = reduced->multn;
  } else {
    r.dual = full;
  }
  finish_status(r, opts);
  return r;
}

}  // namespace

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::MaxLambda2: return "lambda2";
    case ObjectiveKind::MinLambdaN: return "lambdan";
    case ObjectiveKind::MinWidth: return "width";
  }
  return "unknown";
}

std::optional<ObjectiveKind> parse_objective(const std::string& name) {
  if (name == "lambda2" || name == "MaxLambda2") return ObjectiveKind::MaxLambda2;
  if (name == "lambdan" || name == "MinLambdaN") return ObjectiveKind::MinLambdaN;
  if (name == "width" || name == "MinWidth") return ObjectiveKind::MinWidth;
  return std::nullopt;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIter: return "max_iter";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

double DualCertificate::residual(const std::string& name) const {
  for (const auto& [key, value] : feasibility_residuals)
    if (key == name) return value;
  throw InputError("no residual named " + name);
}

int OptimizationResult::optimal_multiplicity() const {
  return objective == ObjectiveKind::MinLambdaN ? lambda_n_multiplicity : lambda2_multiplicity;
}

double duality_gap(double primal_value, double dual_value) {
  return std::abs(primal_value - dual_value) / std::max(1.0, std::abs(primal_value));
}

Eigen::VectorXd pair_inner_products(const MultiplexSpec& spec, const Eigen::MatrixXd& m) {
  Eigen::VectorXd out(spec.pair_count());
  for (int k = 0; k < spec.pair_count(); ++k) {
    const int a = spec.pair_node1(k);
    const int b = spec.pair_node2(k);
    out[k] = m(a, a) + m(b, b) - m(a, b) - m(b, a);
  }
  return out;
}

double lambda2_dual_bound(const MultiplexSpec& spec, double c, const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd l0 = intralayer_laplacian(spec);
  return (x.array() * l0.array()).sum() + c * pair_inner_products(spec, x).maxCoeff();
}

double lambdan_dual_bound(const MultiplexSpec& spec, double c, const Eigen::MatrixXd& y) {
  const Eigen::MatrixXd l0 = intralayer_laplacian(spec);
  return (y.array() * l0.array()).sum() + c * pair_inner_products(spec, y).minCoeff();
}

double width_dual_bound(const MultiplexSpec& spec, double c, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  const Eigen::MatrixXd d = y - x;
  const Eigen::MatrixXd l0 = intralayer_laplacian(spec);
  return (d.array() * l0.array()).sum() + c * pair_inner_products(spec, d).minCoeff();
}

double evaluate_objective(const MultiplexSpec& spec, const Eigen::VectorXd& weights, ObjectiveKind kind) {
  return evaluate_primal(spec, weights, kind).value;
}

FastPathOutcome uniform_fast_path(const MultiplexSpec& spec, double c) {
  check_inputs(spec, c);
  FastPathOutcome out;
  const double c_star = threshold_c_star(spec);
  if (c > c_star * (1.0 + 1e-12)) {
    out.refusal = "budget exceeds c* = " + std::to_string(c_star);
    return out;
  }
  const int N = spec.pair_count();
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(N, c / N);
  SolverOptions opts;
  const Primal primal = evaluate_primal(spec, w, ObjectiveKind::MaxLambda2);
  OptimizationResult r = assemble_result(c, ObjectiveKind::MaxLambda2, w, primal, opts);
  const Eigen::VectorXd v = clumped_vector(spec);
  r.dual = make_certificate(spec, c, ObjectiveKind::MaxLambda2, w, primal, Eigen::MatrixXd(v * v.transpose()),
                            std::nullopt, "closed_form");
  r.method = "uniform_fast_path";
  finish_status(r, opts);
  out.result = std::move(r);
  return out;
}

FastPathOutcome nodal_fast_path(const MultiplexSpec& spec, double c) {
  check_inputs(spec, c);
  FastPathOutcome out;
  const auto dom = dominant_layer(spec);
  if (dom.layer == 0) {
    out.refusal = "layer spectral radii tie";
    return out;
  }
  if (!dom.simple) {
    out.refusal = "lambda_N^1 is not simple";
    return out;
  }
  if (dom.nodal_pairs.empty()) {
    out.refusal = "nodal set empty";
    return out;
  }
  const Eigen::VectorXd pattern = uniform_nodal_pattern(spec);
  double c1 = 0.0;
  try {
    c1 = threshold_c1_star(spec, pattern).c1_star;
  } catch (const DomainError& e) {
    out.refusal = e.what();
    return out;
  }
  if (c > c1 * (1.0 + 1e-12)) {
    out.refusal = "budget exceeds c1* = " + std::to_string(c1);
    return out;
  }
  const Eigen::VectorXd w = c * pattern;
  SolverOptions opts;
  const Primal primal = evaluate_primal(spec, w, ObjectiveKind::MinLambdaN);
  OptimizationResult r = assemble_result(c, ObjectiveKind::MinLambdaN, w, primal, opts);
  const Eigen::VectorXd u = dominant_top_vector(spec);
  r.dual = make_certificate(spec, c, ObjectiveKind::MinLambdaN, w, primal, std::nullopt,
                            Eigen::MatrixXd(u * u.transpose()), "closed_form");
  r.method = "nodal_fast_path";
  finish_status(r, opts);
  out.result = std::move(r);
  return out;
}

OptimizationResult maximize_lambda2(const MultiplexSpec& spec, double c, const SolverOptions& opts) {
  return optimize(spec, c, ObjectiveKind::MaxLambda2, opts);
}

OptimizationResult minimize_lambda_n(const MultiplexSpec& spec, double c, const SolverOptions& opts) {
  return optimize(spec, c, ObjectiveKind::MinLambdaN, opts);
}

OptimizationResult minimize_width(const MultiplexSpec& spec, double c, const SolverOptions& opts) {
  return optimize(spec, c, ObjectiveKind::MinWidth, opts);
}

OptimizationResult optimize(const MultiplexSpec& spec, double c, ObjectiveKind kind, const SolverOptions& opts) {
  check_inputs(spec, c);
  if (c == 0.0) return zero_budget(spec, kind, opts);
  if (opts.fast_paths) {
    FastPathOutcome fast;
    if (kind == ObjectiveKind::MaxLambda2) fast = uniform_fast_path(spec, c);
    if (kind == ObjectiveKind::MinLambdaN) fast = nodal_fast_path(spec, c);
    if (fast.result && fast.result->status == SolveStatus::Optimal) return *fast.result;
  }
  OptimizationResult r = solve_iterative(spec, c, kind, opts);
  return r;
}

DualCertificate recover_dual_certificate(const MultiplexSpec& spec, double c, ObjectiveKind kind,
                                         const WeightAllocation& weights, const SolverOptions& opts) {
  check_inputs(spec, c);
  const Eigen::VectorXd& w = weights.weights();
  if (w.size() != spec.pair_count()) throw InputError("allocation length does not match the multiplex");
  const Primal primal = evaluate_primal(spec, w, kind);
  if (c == 0.0) return zero_budget(spec, kind, opts).dual;
  const auto reduced = eigenspace_certificate(spec, c, kind, w, primal, opts);
  if (reduced && reduced->gap <= opts.gap_tolerance) return reduced->cert;
  const ProgramOutput out = solve_spectral_program(spec, c, full_blocks(spec, kind), opts.max_iterations);
  std::optional<Eigen::MatrixXd> xr, yr;
  std::size_t b = 0;
  if (needs_y(kind)) yr = out.certificates[b++];
  if (needs_x(kind)) xr = out.certificates[b++];
  DualCertificate full = make_certificate(spec, c, kind, w, primal, xr, yr, "full");
  if (reduced && duality_gap(primal.value, reduced->cert.dual_value) < duality_gap(primal.value, full.dual_value))
    return reduced->cert;
  return full;
}

}  // namespace spectraplex
