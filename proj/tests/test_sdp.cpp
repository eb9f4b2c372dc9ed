#include <doctest.h>

#include <Eigen/Dense>

#include "spectraplex/sdp.hpp"

using namespace spectraplex;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Kind = ConicProblem::BlockKind;

TEST_CASE("scalar LP: maximize y with y <= 3") {
  ConicProblem p;
  MatrixXd c(1, 1);
  c << 3.0;
  const int j = p.add_block(Kind::Diagonal, c);
  const int k = p.add_variable(1.0);
  p.set_coefficient(k, j, MatrixXd::Ones(1, 1));
  const auto s = solve_conic(p);
  CHECK(s.converged);
  CHECK(s.y[0] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("smallest eigenvalue as an SDP") {
  MatrixXd a(3, 3);
  a << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  ConicProblem p;
  const int j = p.add_block(Kind::Dense, a);
  const int k = p.add_variable(1.0);
  p.set_coefficient(k, j, MatrixXd::Identity(3, 3));
  const auto s = solve_conic(p);
  CHECK(s.converged);
  const double oracle = Eigen::SelfAdjointEigenSolver<MatrixXd>(a).eigenvalues()[0];
  CHECK(s.y[0] == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(s.x[0].trace() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(s.relative_gap <= 1e-8);
}

TEST_CASE("mixed blocks: two variables on the simplex") {
  // max y1 + y2 subject to diag(1 - y1, 2 - y2) >= 0 and y1 + y2 <= 2.5
  ConicProblem p;
  MatrixXd c1(2, 1);
  c1 << 1.0, 2.0;
  MatrixXd c2(1, 1);
  c2 << 2.5;
  const int j1 = p.add_block(Kind::Diagonal, c1);
  const int j2 = p.add_block(Kind::Diagonal, c2);
  const int y1 = p.add_variable(1.0);
  const int y2 = p.add_variable(1.0);
  MatrixXd e1(2, 1), e2(2, 1);
  e1 << 1, 0;
  e2 << 0, 1;
  p.set_coefficient(y1, j1, e1);
  p.set_coefficient(y2, j1, e2);
  p.set_coefficient(y1, j2, MatrixXd::Ones(1, 1));
  p.set_coefficient(y2, j2, MatrixXd::Ones(1, 1));
  const auto s = solve_conic(p);
  CHECK(s.converged);
  CHECK(s.y.sum() == doctest::Approx(2.5).epsilon(1e-8));
}
