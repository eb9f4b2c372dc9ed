#include <doctest.h>

#include "fixtures.hpp"
#include "spectraplex/errors.hpp"
#include "spectraplex/optimizer.hpp"
#include "spectraplex/spectral.hpp"

using namespace spectraplex;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("duality gap arithmetic") {
  CHECK(duality_gap(2.0, 2.0) == 0.0);
  CHECK(duality_gap(1.0, 0.999999) == doctest::Approx(1e-6).epsilon(1e-6));
  CHECK(duality_gap(0.1, 0.2) == doctest::Approx(0.1));
}

TEST_CASE("objective names") {
  CHECK(parse_objective("lambda2") == ObjectiveKind::MaxLambda2);
  CHECK(parse_objective("lambdan") == ObjectiveKind::MinLambdaN);
  CHECK(parse_objective("width") == ObjectiveKind::MinWidth);
  CHECK_FALSE(parse_objective("spread").has_value());
}

TEST_CASE("lambda_2 on identical single edges") {
  const auto s = fixtures::edge_pair();
  auto r = maximize_lambda2(s, 1.0);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.weights.weights()[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.weights.weights()[1] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.objective_value == doctest::Approx(1.0).epsilon(1e-9));

  SolverOptions ipm;
  ipm.fast_paths = false;
  r = maximize_lambda2(s, 5.0, ipm);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.method == "interior_point");
  CHECK(r.objective_value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(r.duality_gap <= 1e-6);

  r = maximize_lambda2(s, 0.0);
  CHECK(r.objective_value == doctest::Approx(0.0));
  CHECK(r.weights.weights().isZero());
  CHECK(r.duality_gap == doctest::Approx(0.0));
}

TEST_CASE("negative budgets are rejected") {
  CHECK_THROWS_AS(maximize_lambda2(fixtures::edge_pair(), -1.0), InputError);
  CHECK_THROWS_AS(minimize_width(fixtures::edge_pair(), -0.5), InputError);
}

TEST_CASE("uniform fast path") {
  const auto s = fixtures::edge_pair();
  auto f = uniform_fast_path(s, 1.5);
  REQUIRE(f.result);
  CHECK(f.result->objective_value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(f.result->duality_gap <= 1e-9);
  f = uniform_fast_path(s, 2.0);
  REQUIRE(f.result);
  CHECK(f.result->objective_value == doctest::Approx(2.0).epsilon(1e-12));
  f = uniform_fast_path(s, 2.1);
  CHECK_FALSE(f.result);
  CHECK_FALSE(f.refusal.empty());
}

TEST_CASE("nodal fast path") {
  const auto s = fixtures::triangle_pair();
  auto f = nodal_fast_path(s, 0.5);
  REQUIRE(f.result);
  VectorXd expected(3);
  expected << 0, 0.5, 0;
  CHECK((f.result->weights.weights() - expected).norm() < 1e-12);
  CHECK(f.result->objective_value == doctest::Approx(5.0).epsilon(1e-12));
  CHECK_FALSE(nodal_fast_path(MultiplexSpec(fixtures::unit_triangle(), fixtures::unit_triangle()), 0.5).result);
  CHECK_FALSE(nodal_fast_path(s, 2.0).result);
}

TEST_CASE("ipm agrees with the fast paths") {
  SolverOptions ipm;
  ipm.fast_paths = false;
  const auto s = fixtures::random_pair(LayerModel::ErdosRenyi, LayerModel::WattsStrogatz, 8, 9);
  const double cs = threshold_c_star(s);
  const auto fast = maximize_lambda2(s, 0.5 * cs);
  const auto slow = maximize_lambda2(s, 0.5 * cs, ipm);
  CHECK(slow.status == SolveStatus::Optimal);
  CHECK(std::abs(fast.objective_value - slow.objective_value) < 1e-5);
  CHECK((slow.weights.weights().array() - 0.5 * cs / 8).abs().maxCoeff() <= 1e-4 * cs / 8);

  const auto t = fixtures::triangle_pair();
  const auto slow_n = minimize_lambda_n(t, 0.5, ipm);
  CHECK(slow_n.status == SolveStatus::Optimal);
  CHECK(slow_n.objective_value == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("lambda_n fixture and large budgets") {
  const auto s = fixtures::triangle_pair();
  auto r = minimize_lambda_n(s, 0.0);
  CHECK(r.objective_value == doctest::Approx(5.0));
  r = minimize_lambda_n(s, 1.0);
  CHECK(r.objective_value == doctest::Approx(5.0).epsilon(1e-6));
  const double c = 1e4 * 3;
  r = minimize_lambda_n(s, c);
  CHECK(r.status == SolveStatus::Optimal);
  const double ratio = r.objective_value / (2.0 * c / 3.0);
  const double l_ave_max = fixtures::spectrum(0.5 * (aligned_layer1_laplacian(s) + aligned_layer2_laplacian(s)))[2];
  CHECK(ratio >= 1.0 - 1e-9);
  CHECK(ratio <= 1.0 + l_ave_max * 3.0 / (2.0 * c) + 1e-9);
}

TEST_CASE("width at zero and small budgets") {
  const auto s = fixtures::triangle_pair();
  CHECK(minimize_width(s, 0.0).objective_value == doctest::Approx(5.0));
  const double c = 0.01 * threshold_c_star(s);
  const auto r = minimize_width(s, c);
  const double target = 5.0 - 2.0 * c / 3.0;
  CHECK(std::abs(r.objective_value - target) <= 0.05 * target);
}

TEST_CASE("width matches lambda_n minimization at large budgets") {
  const auto s = fixtures::random_pair(LayerModel::Geometric, LayerModel::ErdosRenyi, 6, 4);
  const double c = 200.0;
  const auto h = minimize_width(s, c);
  const auto ln = minimize_lambda_n(s, c);
  const double width_at_ln = ln.lambda_n - ln.lambda2;
  CHECK(std::abs(h.objective_value - width_at_ln) / h.objective_value <= 0.05);
  CHECK(h.objective_value <= width_at_ln + 1e-7);
}

TEST_CASE("closed-form certificates of the desk fixtures") {
  const auto s = fixtures::edge_pair();
  const auto r = maximize_lambda2(s, 1.0);
  REQUIRE(r.dual.x);
  VectorXd v(4);
  v << 1, 1, -1, -1;
  v /= 2.0;
  CHECK((*r.dual.x - v * v.transpose()).norm() < 1e-9);
  CHECK(r.dual.xi == doctest::Approx(-1.0));
  CHECK(lambda2_dual_bound(s, 1.0, v * v.transpose()) == doctest::Approx(1.0));

  const auto t = fixtures::triangle_pair();
  VectorXd u = VectorXd::Zero(6);
  u << 1, 0, -1, 0, 0, 0;
  u /= std::sqrt(2.0);
  const MatrixXd y = u * u.transpose();
  const VectorXd inner = pair_inner_products(t, y);
  CHECK(inner[0] == doctest::Approx(0.5));
  CHECK(inner[1] == doctest::Approx(0.0));
  CHECK(inner[2] == doctest::Approx(0.5));
  CHECK(lambdan_dual_bound(t, 0.5, y) == doctest::Approx(5.0));
  const auto rn = minimize_lambda_n(t, 0.5);
  CHECK(rn.duality_gap <= 1e-6);
  REQUIRE(rn.dual.y);
}

TEST_CASE("recovered certificates bound the objective") {
  const auto s = fixtures::random_pair(LayerModel::WattsStrogatz, LayerModel::BarabasiAlbert, 7, 12);
  const double c = 3.0 * threshold_c_star(s);
  for (auto kind : {ObjectiveKind::MaxLambda2, ObjectiveKind::MinLambdaN, ObjectiveKind::MinWidth}) {
    const auto r = optimize(s, c, kind);
    REQUIRE(r.status == SolveStatus::Optimal);
    const auto cert = recover_dual_certificate(s, c, kind, r.weights);
    double bound = 0.0;
    if (kind == ObjectiveKind::MaxLambda2) bound = lambda2_dual_bound(s, c, *cert.x);
    if (kind == ObjectiveKind::MinLambdaN) bound = lambdan_dual_bound(s, c, *cert.y);
    if (kind == ObjectiveKind::MinWidth) bound = width_dual_bound(s, c, *cert.x, *cert.y);
    CHECK(duality_gap(r.objective_value, bound) <= 1e-6);
    // Weak duality on arbitrary feasible weights.
    const WeightAllocation u = WeightAllocation::uniform(7, c);
    const double uv = evaluate_objective(s, u.weights(), kind);
    if (kind == ObjectiveKind::MaxLambda2) CHECK(uv <= bound + 1e-9);
    else CHECK(uv >= bound - 1e-9);
  }
}

TEST_CASE("optimum dominates the uniform baseline") {
  const auto s = fixtures::random_pair(LayerModel::ErdosRenyi, LayerModel::Geometric, 8, 21);
  for (double c : {0.5, 5.0, 40.0}) {
    const VectorXd u = WeightAllocation::uniform(8, c).weights();
    CHECK(maximize_lambda2(s, c).objective_value >= evaluate_objective(s, u, ObjectiveKind::MaxLambda2) - 1e-7);
    CHECK(minimize_lambda_n(s, c).objective_value <= evaluate_objective(s, u, ObjectiveKind::MinLambdaN) + 1e-7);
    CHECK(minimize_width(s, c).objective_value <= evaluate_objective(s, u, ObjectiveKind::MinWidth) + 1e-7);
  }
}
