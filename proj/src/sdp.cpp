#include "spectraplex/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "spectraplex/errors.hpp"

namespace spectraplex {

namespace {

using Kind = ConicProblem::BlockKind;
using Blocks = std::vector<Eigen::MatrixXd>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a.array() * b.array()).sum();
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

class Engine {
 public:
  explicit Engine(const ConicProblem& p) : p_(p), m_(p.variable_count()), nb_(p.block_count()) {
    total_dim_ = 0;
    for (int j = 0; j < nb_; ++j) total_dim_ += p_.block_dim(j);
  }

  // A(X)_k = sum_j <A_kj, X_j>
  Eigen::VectorXd apply_a(const Blocks& x) const {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(m_);
    for (int k = 0; k < m_; ++k)
      for (int j = 0; j < nb_; ++j)
        if (has(k, j)) r[k] += inner(p_.a[k][j], x[j]);
    return r;
  }

  // sum_k y_k A_kj
  Blocks apply_at(const Eigen::VectorXd& y) const {
    Blocks out(nb_);
    for (int j = 0; j < nb_; ++j) {
      out[j] = Eigen::MatrixXd::Zero(p_.c[j].rows(), p_.c[j].cols());
      for (int k = 0; k < m_; ++k)
        if (has(k, j)) out[j] += y[k] * p_.a[k][j];
    }
    return out;
  }

  bool has(int k, int j) const { return p_.a[k][j].size() > 0; }

  double cost(const Blocks& x) const {
    double v = 0.0;
    for (int j = 0; j < nb_; ++j) v += inner(p_.c[j], x[j]);
    return v;
  }

  double mu(const Blocks& x, const Blocks& s) const {
    double v = 0.0;
    for (int j = 0; j < nb_; ++j) v += inner(x[j], s[j]);
    return v / total_dim_;
  }

  // Largest step keeping x + t dx inside the cone (inf if unbounded).
  double max_step(const Blocks& x, const Blocks& dx) const {
    double step = kInf;
    for (int j = 0; j < nb_; ++j) {
      if (p_.kinds[j] == Kind::Diagonal) {
        for (Eigen::Index i = 0; i < x[j].rows(); ++i)
          if (dx[j](i, 0) < 0.0) step = std::min(step, -x[j](i, 0) / dx[j](i, 0));
      } else {
        Eigen::LLT<Eigen::MatrixXd> llt(x[j]);
        if (llt.info() != Eigen::Success) return 0.0;
        const Eigen::MatrixXd lower = llt.matrixL();
        Eigen::MatrixXd t = lower.triangularView<Eigen::Lower>().solve(dx[j]);
        t = lower.triangularView<Eigen::Lower>().solve(t.transpose()).transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym(t), Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues()[0];
        if (lo < 0.0) step = std::min(step, -1.0 / lo);
      }
    }
    return step;
  }

  // Inverse of each S block; false if some block is not positive definite.
  bool invert(const Blocks& s, Blocks& s_inv) const {
    s_inv.resize(nb_);
    for (int j = 0; j < nb_; ++j) {
      if (p_.kinds[j] == Kind::Diagonal) {
        if ((s[j].array() <= 0.0).any()) return false;
        s_inv[j] = s[j].cwiseInverse();
      } else {
        Eigen::LLT<Eigen::MatrixXd> llt(s[j]);
        if (llt.info() != Eigen::Success) return false;
        s_inv[j] = sym(llt.solve(Eigen::MatrixXd::Identity(s[j].rows(), s[j].cols())));
      }
    }
    return true;
  }

  // M_kl = sum_j tr(A_kj X_j A_lj S_j^-1)
  Eigen::MatrixXd schur(const Blocks& x, const Blocks& s_inv) const {
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m_, m_);
    for (int j = 0; j < nb_; ++j) {
      if (p_.kinds[j] == Kind::Diagonal) {
        const Eigen::VectorXd d = x[j].col(0).cwiseProduct(s_inv[j].col(0));
        for (int l = 0; l < m_; ++l) {
          if (!has(l, j)) continue;
          const Eigen::VectorXd g = d.cwiseProduct(p_.a[l][j].col(0));
          for (int k = 0; k <= l; ++k)
            if (has(k, j)) mat(k, l) += p_.a[k][j].col(0).dot(g);
        }
      } else {
        for (int l = 0; l < m_; ++l) {
          if (!has(l, j)) continue;
          const Eigen::MatrixXd g = (x[j] * p_.a[l][j] * s_inv[j]).transpose();
          for (int k = 0; k <= l; ++k)
            if (has(k, j)) mat(k, l) += inner(p_.a[k][j], g);
        }
      }
    }
    for (int l = 0; l < m_; ++l)
      for (int k = 0; k < l; ++k) mat(l, k) = mat(k, l);
    return mat;
  }

  struct Direction {
    Eigen::VectorXd dy;
    Blocks dx;
    Blocks ds;
  };

  Direction direction(const Eigen::LDLT<Eigen::MatrixXd>& fact, const Blocks& x, const Blocks& s_inv,
                      const Eigen::VectorXd& rp, const Blocks& rd, const Blocks& rc) const {
    Blocks x_rd_sinv(nb_);
    for (int j = 0; j < nb_; ++j) x_rd_sinv[j] = product(j, x[j], rd[j], s_inv[j]);
    const Eigen::VectorXd rhs = rp - apply_a(rc) + apply_a(x_rd_sinv);
    Direction d;
    d.dy = fact.solve(rhs);
    const Blocks aty = apply_at(d.dy);
    d.ds.resize(nb_);
    d.dx.resize(nb_);
    for (int j = 0; j < nb_; ++j) {
      d.ds[j] = rd[j] - aty[j];
      d.dx[j] = rc[j] - product(j, x[j], d.ds[j], s_inv[j]);
      if (p_.kinds[j] == Kind::Dense) d.dx[j] = sym(d.dx[j]);
    }
    return d;
  }

  // X * D * S^-1 for dense blocks, elementwise for diagonal ones.
  Eigen::MatrixXd product(int j, const Eigen::MatrixXd& x, const Eigen::MatrixXd& d,
                          const Eigen::MatrixXd& s_inv) const {
    if (p_.kinds[j] == Kind::Diagonal) return x.cwiseProduct(d).cwiseProduct(s_inv);
    return x * d * s_inv;
  }

  Blocks identity_blocks(const std::vector<double>& scale) const {
    Blocks out(nb_);
    for (int j = 0; j < nb_; ++j) {
      const int d = p_.block_dim(j);
      out[j] = p_.kinds[j] == Kind::Diagonal ? Eigen::MatrixXd::Constant(d, 1, scale[j])
                                             : Eigen::MatrixXd(scale[j] * Eigen::MatrixXd::Identity(d, d));
    }
    return out;
  }

  int total_dim() const { return total_dim_; }
  int blocks() const { return nb_; }
  int vars() const { return m_; }
  const ConicProblem& problem() const { return p_; }

 private:
  const ConicProblem& p_;
  int m_;
  int nb_;
  int total_dim_ = 0;
};

void validate(const ConicProblem& p) {
  if (p.c.size() != p.kinds.size()) throw InputError("conic problem: block data mismatch");
  if (static_cast<int>(p.a.size()) != p.variable_count())
    throw InputError("conic problem: coefficient rows mismatch");
  for (int j = 0; j < p.block_count(); ++j) {
    const auto& cj = p.c[j];
    if (p.kinds[j] == ConicProblem::BlockKind::Dense ? cj.rows() != cj.cols() : cj.cols() != 1)
      throw InputError("conic problem: malformed block shape");
  }
  for (const auto& row : p.a) {
    if (static_cast<int>(row.size()) != p.block_count())
      throw InputError("conic problem: coefficient columns mismatch");
    for (int j = 0; j < p.block_count(); ++j)
      if (row[j].size() > 0 && (row[j].rows() != p.c[j].rows() || row[j].cols() != p.c[j].cols()))
        throw InputError("conic problem: coefficient shape mismatch");
  }
}

}  // namespace

int ConicProblem::add_block(BlockKind kind, Eigen::MatrixXd c_block) {
  kinds.push_back(kind);
  c.push_back(std::move(c_block));
  for (auto& row : a) row.emplace_back();
  return block_count() - 1;
}

int ConicProblem::add_variable(double b_k) {
  b.conservativeResize(b.size() + 1);
  b[b.size() - 1] = b_k;
  a.emplace_back(kinds.size());
  return variable_count() - 1;
}

void ConicProblem::set_coefficient(int k, int j, Eigen::MatrixXd a_kj) { a.at(k).at(j) = std::move(a_kj); }

namespace {

double score_of(const ConicSolution& s) {
  return std::max({s.relative_gap, s.primal_infeasibility, s.dual_infeasibility});
}

// One path-following run from X0 = x_scale xi I, S0 = s_scale eta I.
ConicSolution run_path(const ConicProblem& problem, const ConicOptions& options, double x_scale, double s_scale) {
  Engine eng(problem);
  const int nb = eng.blocks();
  const int m = eng.vars();

  const double b_norm = problem.b.norm();
  double c_norm = 0.0;
  for (const auto& cj : problem.c) c_norm += cj.squaredNorm();
  c_norm = std::sqrt(c_norm);

  std::vector<double> xi(nb), eta(nb);
  for (int j = 0; j < nb; ++j) {
    const double d = problem.block_dim(j);
    double x0 = std::max(10.0, std::sqrt(d));
    double s0 = std::max({10.0, std::sqrt(d), problem.c[j].norm()});
    for (int k = 0; k < m; ++k) {
      if (!eng.has(k, j)) continue;
      const double an = problem.a[k][j].norm();
      x0 = std::max(x0, d * (1.0 + std::abs(problem.b[k])) / (1.0 + an));
      s0 = std::max(s0, an);
    }
    xi[j] = x_scale * x0;
    eta[j] = s_scale * s0;
  }
  Blocks x = eng.identity_blocks(xi);
  Blocks s = eng.identity_blocks(eta);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  ConicSolution best;
  double best_score = kInf;
  int stall = 0;

  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    const Eigen::VectorXd rp = problem.b - eng.apply_a(x);
    const Blocks aty = eng.apply_at(y);
    Blocks rd(nb);
    double rd_norm = 0.0;
    for (int j = 0; j < nb; ++j) {
      rd[j] = problem.c[j] - aty[j] - s[j];
      rd_norm += rd[j].squaredNorm();
    }
    rd_norm = std::sqrt(rd_norm);

    const double pobj = eng.cost(x);
    const double dobj = problem.b.dot(y);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double pinf = rp.norm() / (1.0 + b_norm);
    const double dinf = rd_norm / (1.0 + c_norm);
    const double score = std::max({gap, pinf, dinf});

    if (score < best_score) {
      stall = (score < 0.7 * best_score) ? 0 : stall + 1;
      best_score = score;
      best.y = y;
      best.x = x;
      best.s = s;
      best.primal_objective = pobj;
      best.dual_objective = dobj;
      best.relative_gap = gap;
      best.primal_infeasibility = pinf;
      best.dual_infeasibility = dinf;
      best.iterations = iter;
    } else {
      ++stall;
    }
    if (score <= options.tolerance) {
      best.converged = true;
      break;
    }
    if (stall > 8 || iter == options.max_iterations) break;

    Blocks s_inv;
    if (!eng.invert(s, s_inv)) break;
    const Eigen::MatrixXd schur = eng.schur(x, s_inv);
    Eigen::LDLT<Eigen::MatrixXd> fact(schur);
    if (fact.info() != Eigen::Success) break;

    const double mu = eng.mu(x, s);

    // Predictor.
    Blocks rc(nb);
    for (int j = 0; j < nb; ++j) rc[j] = -x[j];
    const auto pred = eng.direction(fact, x, s_inv, rp, rd, rc);
    const double ap = std::min(1.0, eng.max_step(x, pred.dx));
    const double ad = std::min(1.0, eng.max_step(s, pred.ds));
    double mu_aff = 0.0;
    for (int j = 0; j < nb; ++j) mu_aff += inner(x[j] + ap * pred.dx[j], s[j] + ad * pred.ds[j]);
    mu_aff /= eng.total_dim();
    const double ratio = std::clamp(mu_aff / mu, 0.0, 1.0);
    const double sigma = ratio * ratio * ratio;

    // Corrector.
    for (int j = 0; j < nb; ++j) {
      const Eigen::MatrixXd second = eng.product(j, pred.dx[j], pred.ds[j], s_inv[j]);
      if (problem.kinds[j] == Kind::Diagonal) {
        rc[j] = sigma * mu * s_inv[j] - x[j] - second;
      } else {
        rc[j] = sigma * mu * s_inv[j] - x[j] - sym(second);
      }
    }
    const auto corr = eng.direction(fact, x, s_inv, rp, rd, rc);
    const double tau = std::max(0.9, 1.0 - 10.0 * mu / (1.0 + std::abs(pobj)));
    const double tau_c = std::min(tau, 0.995);
    const double step_p = std::min(1.0, tau_c * eng.max_step(x, corr.dx));
    const double step_d = std::min(1.0, tau_c * eng.max_step(s, corr.ds));
    if (!(step_p > 0.0) || !(step_d > 0.0)) break;

    for (int j = 0; j < nb; ++j) {
      x[j] += step_p * corr.dx[j];
      s[j] += step_d * corr.ds[j];
      if (problem.kinds[j] == Kind::Dense) {
        x[j] = sym(x[j]);
        s[j] = sym(s[j]);
      }
    }
    y += step_d * corr.dy;
  }
  return best;
}

}  // namespace

ConicSolution solve_conic(const ConicProblem& problem, const ConicOptions& options) {
  validate(problem);
  // Stalls are usually a poorly scaled start; retry a few and keep the best.
  // Runs that only lose the last digits to round-off are not retried.
  constexpr double kRestartScore = 1e-8;
  constexpr std::pair<double, double> kStarts[] = {{1.0, 1.0}, {1e-2, 1.0}, {1.0, 1e-2}, {1e2, 1e2}};
  ConicSolution best;
  double best_score = kInf;
  int total_iterations = 0;
  for (const auto& [fx, fs] : kStarts) {
    ConicSolution sol = run_path(problem, options, fx, fs);
    total_iterations += sol.iterations;
    const double score = sol.y.size() == problem.variable_count() ? score_of(sol) : kInf;
    if (score < best_score) {
      best_score = score;
      best = std::move(sol);
    }
    if (best.converged || best_score <= std::max(kRestartScore, options.tolerance)) break;
  }
  best.iterations = total_iterations;
  return best;
}

}  // namespace spectraplex
