#include <doctest.h>

#include <Eigen/Dense>

#include "spectraplex/geometry.hpp"

using namespace spectraplex;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("nnls with an interior solution equals least squares") {
  MatrixXd a(4, 2);
  a << 1, 0, 0, 1, 1, 1, 2, 1;
  VectorXd x0(2);
  x0 << 0.7, 1.3;
  const auto r = nonnegative_least_squares(a, a * x0);
  CHECK((r.x - x0).norm() < 1e-10);
  CHECK(r.residual_norm < 1e-10);
}

TEST_CASE("nnls clamps a negative unconstrained component") {
  MatrixXd a = MatrixXd::Identity(2, 2);
  VectorXd b(2);
  b << 1.0, -2.0;
  const auto r = nonnegative_least_squares(a, b);
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(0.0));
  CHECK(r.residual_norm == doctest::Approx(2.0));
}

TEST_CASE("min norm point of a segment and a triangle") {
  MatrixXd seg(2, 2);
  seg << 1, 1, -1, 1;  // columns (1,-1), (1,1)
  auto m = min_norm_point(seg);
  CHECK(m.point[0] == doctest::Approx(1.0));
  CHECK(std::abs(m.point[1]) < 1e-12);
  CHECK(m.distance == doctest::Approx(1.0));

  MatrixXd tri(2, 3);
  tri << 1, -1, 0, 0, -1, 2;
  m = min_norm_point(tri);
  CHECK(m.distance < 1e-10);
  CHECK(m.weights.sum() == doctest::Approx(1.0));
  CHECK((m.weights.array() >= -1e-12).all());
}

TEST_CASE("segment against hull") {
  MatrixXd hull(2, 2);
  hull << 1, 1, -1, 1;  // vertical segment at x = 1
  VectorXd q(2);
  q << 2, 0;
  CHECK(segment_meets_hull(q, hull));
  q << 0.5, 0;
  CHECK_FALSE(segment_meets_hull(q, hull));
  q << 2, 5;
  CHECK_FALSE(segment_meets_hull(q, hull));
  q << -2, 0;
  CHECK_FALSE(segment_meets_hull(q, hull));
}
