#include <doctest.h>

#include "fixtures.hpp"
#include "spectraplex/errors.hpp"
#include "spectraplex/oracle.hpp"
#include "spectraplex/spectral.hpp"

using namespace spectraplex;
using Eigen::VectorXd;

TEST_CASE("grid search on identical single edges") {
  const auto g = grid_search_simplex(fixtures::edge_pair(), 1.0, ObjectiveKind::MaxLambda2, 0.05);
  CHECK(g.best_value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.best_weights.weights()[0] == doctest::Approx(0.5));
  CHECK(g.evaluations == 21);
  VectorXd corner(2);
  corner << 1.0, 0.0;
  CHECK(evaluate_objective(fixtures::edge_pair(), corner, ObjectiveKind::MaxLambda2) ==
        doctest::Approx(2.0 - std::sqrt(2.0)));
}

TEST_CASE("grid search on the triangle fixture") {
  const auto g = grid_search_simplex(fixtures::triangle_pair(), 0.5, ObjectiveKind::MinLambdaN, 0.05);
  CHECK(g.best_value == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(g.best_weights.weights()[1] == doctest::Approx(0.5));
}

TEST_CASE("grid search at zero budget") {
  const auto s = fixtures::triangle_pair();
  auto g = grid_search_simplex(s, 0.0, ObjectiveKind::MaxLambda2, 0.05);
  CHECK(g.evaluations == 1);
  CHECK(std::abs(g.best_value) < 1e-12);
  g = grid_search_simplex(s, 0.0, ObjectiveKind::MinLambdaN, 0.05);
  CHECK(g.best_value == doctest::Approx(5.0));
}

TEST_CASE("grid search refusals") {
  const auto big = fixtures::random_pair(LayerModel::ErdosRenyi, LayerModel::ErdosRenyi, 6, 1);
  CHECK_THROWS_AS(grid_search_simplex(big, 1.0, ObjectiveKind::MaxLambda2, 0.1), InputError);
  CHECK_THROWS_AS(grid_search_simplex(fixtures::edge_pair(), 1.0, ObjectiveKind::MaxLambda2, 0.3), InputError);
}

TEST_CASE("lipschitz slack") { CHECK(grid_lipschitz_slack(3, 0.01) == doctest::Approx(0.12)); }

TEST_CASE("kkt residuals of a closed-form solution") {
  const auto s = fixtures::edge_pair();
  const auto r = maximize_lambda2(s, 1.0);
  const auto k = kkt_check(s, 1.0, r);
  CHECK(k.worst() <= 1e-9);
  CHECK_FALSE(k.vacuous);
}

TEST_CASE("kkt negative control on perturbed weights") {
  const auto s = fixtures::random_pair(LayerModel::WattsStrogatz, LayerModel::Geometric, 7, 14);
  const double c = 3.0 * threshold_c_star(s);
  auto r = maximize_lambda2(s, c);
  REQUIRE(kkt_check(s, c, r).worst() <= 1e-6);
  VectorXd w = VectorXd::Zero(7);
  w[0] = c;
  r.weights = WeightAllocation(w, c);
  r.eigenvalues = fixtures::spectrum(assemble_supra_laplacian(s, w));
  r.lambda2 = r.objective_value = r.eigenvalues[1];
  CHECK(kkt_check(s, c, r).complementarity > 1e-3);
}

TEST_CASE("kkt at zero budget is vacuous") {
  const auto s = fixtures::triangle_pair();
  const auto k = kkt_check(s, 0.0, maximize_lambda2(s, 0.0));
  CHECK(k.vacuous);
  CHECK(k.worst() <= 1e-9);
}

TEST_CASE("monotonicity probe and its self-tests") {
  const auto s = fixtures::random_pair(LayerModel::BarabasiAlbert, LayerModel::ErdosRenyi, 8, 3);
  CHECK(monotonicity_probe(s, 100, 1).holds);
  CHECK(monotonicity_probe(s, 100, 1, 0.0).holds);
  const auto inverted = monotonicity_probe(s, 100, 1, -1.0);
  CHECK(inverted.holds);
  CHECK(inverted.trials == 100);
}
