#include <doctest.h>

#include "fixtures.hpp"
#include "spectraplex/embedding.hpp"
#include "spectraplex/errors.hpp"
#include "spectraplex/spectral.hpp"

using namespace spectraplex;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("rank one gram matrix") {
  VectorXd v(4);
  v << 1, 1, -1, -1;
  v /= 2.0;
  const auto e = gram_embed(v * v.transpose());
  CHECK(e.effective_dimension == 1);
  CHECK((e.points.col(0).cwiseAbs() - VectorXd::Constant(4, 0.5)).norm() < 1e-12);
  CHECK((e.points * e.points.transpose() - v * v.transpose()).norm() < 1e-12);
}

TEST_CASE("centred identity is three dimensional") {
  const MatrixXd x = (MatrixXd::Identity(4, 4) - MatrixXd::Constant(4, 4, 0.25)) / 3.0;
  const auto e = gram_embed(x);
  CHECK(e.effective_dimension == 3);
  CHECK((e.points * e.points.transpose() - x).norm() < 1e-12);
}

TEST_CASE("gram embedding rejects zero and indefinite input") {
  CHECK_THROWS_AS(gram_embed(MatrixXd::Zero(3, 3)), InputError);
  MatrixXd x = MatrixXd::Identity(2, 2);
  x(1, 1) = -0.5;
  CHECK_THROWS_AS(gram_embed(x), InputError);
}

TEST_CASE("projection residual on exact eigenvectors") {
  const auto s = fixtures::edge_pair();
  const auto r = maximize_lambda2(s, 1.0);
  const auto u = certificate_embedding(r, EmbeddingSource::Lambda2Dual);
  const MatrixXd l = assemble_supra_laplacian(s, r.weights);
  CHECK(projection_residual(u, l, 1.0, 50) <= 1e-8);

  const auto t = fixtures::triangle_pair();
  const auto rn = minimize_lambda_n(t, 0.5);
  const auto v = certificate_embedding(rn, EmbeddingSource::LambdanDual);
  CHECK(projection_residual(v, assemble_supra_laplacian(t, rn.weights), 5.0, 50) <= 1e-8);

  // Negative control: the certificate against perturbed weights.
  VectorXd w(3);
  w << 0.4, 0.0, 0.1;
  CHECK(projection_residual(v, assemble_supra_laplacian(t, w), 5.0, 50) > 1e-3);
}

TEST_CASE("clumped embedding below c star") {
  const auto s = fixtures::edge_pair();
  const auto e = certificate_embedding(maximize_lambda2(s, 1.0), EmbeddingSource::Lambda2Dual);
  const auto c = clump_check(e, s);
  CHECK(c.clumped);
  CHECK(c.h_norm == doctest::Approx(0.5).epsilon(1e-9));

  EmbeddingRealization zero;
  zero.points = MatrixXd::Zero(4, 1);
  zero.effective_dimension = 0;
  CHECK_FALSE(clump_check(zero, s).clumped);
}

TEST_CASE("clumping breaks just above c star") {
  const auto s = fixtures::random_pair(LayerModel::WattsStrogatz, LayerModel::ErdosRenyi, 8, 6);
  const double cs = threshold_c_star(s);
  const auto below = maximize_lambda2(s, 0.9 * cs);
  CHECK(clump_check(certificate_embedding(below, EmbeddingSource::Lambda2Dual), s).clumped);
  const auto above = maximize_lambda2(s, 1.05 * cs);
  CHECK_FALSE(clump_check(certificate_embedding(above, EmbeddingSource::Lambda2Dual), s).clumped);
}

TEST_CASE("antipodal check") {
  EmbeddingRealization e;
  e.points.resize(4, 2);
  e.points << 1, 2, -3, 0.5, -1, -2, 3, -0.5;
  e.effective_dimension = 2;
  CHECK(antipodal_check(e, fixtures::edge_pair(), 1e-12));

  const auto t = fixtures::triangle_pair();
  const auto big = minimize_lambda_n(t, 1e4 * 3);
  CHECK(antipodal_check(certificate_embedding(big, EmbeddingSource::LambdanDual), t, 0.05));
  const auto small = minimize_lambda_n(t, 0.5);
  CHECK_FALSE(antipodal_check(certificate_embedding(small, EmbeddingSource::LambdanDual), t, 0.05));
}

TEST_CASE("small budget embedding lives on the dominant layer") {
  const auto t = fixtures::triangle_pair();
  auto rep = small_budget_embedding_check(certificate_embedding(minimize_lambda_n(t, 0.5), EmbeddingSource::LambdanDual), t);
  CHECK(rep.holds);
  CHECK(rep.gamma == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.other_layer_max < 1e-5);

  const MultiplexSpec swapped(fixtures::unit_triangle(), fixtures::weighted_triangle());
  const auto rs = minimize_lambda_n(swapped, 0.5);
  REQUIRE(rs.dual.y);
  const auto es = certificate_embedding(rs, EmbeddingSource::LambdanDual);
  CHECK(small_budget_embedding_check(es, swapped).holds);
  CHECK(es.points.topRows(3).norm() < 1e-5);

  rep = small_budget_embedding_check(certificate_embedding(minimize_lambda_n(t, 3.0), EmbeddingSource::LambdanDual), t);
  CHECK_FALSE(rep.holds);
}

TEST_CASE("procrustes distance ignores rotations") {
  MatrixXd a(3, 2);
  a << 1, 0, 0, 1, -1, -1;
  const double th = 0.7;
  MatrixXd r(2, 2);
  r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  CHECK(procrustes_distance(a, a * r) < 1e-12);
  CHECK(procrustes_distance(a, a.leftCols(1)) > 0.5);
}

TEST_CASE("scaled embedding of identical single edges") {
  const auto s = fixtures::edge_pair();
  const auto se = scaled_embedding(s, 1.0);
  CHECK(se.primal_value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(se.dual_value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(se.relative_gap <= 1e-6);
  CHECK(se.lambda2 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(scaled_embedding(s, 0.0), DomainError);
}

TEST_CASE("scaled embedding constraints are tight on the support") {
  const auto s = fixtures::random_pair(LayerModel::Geometric, LayerModel::BarabasiAlbert, 8, 17);
  const double c = 2.0 * threshold_c_star(s);
  const auto se = scaled_embedding(s, c);
  CHECK(se.relative_gap <= 1e-6);
  CHECK(se.lambda2 == doctest::Approx(maximize_lambda2(s, c).objective_value).epsilon(1e-6));
  CHECK(se.dual_value == doctest::Approx(1.0 / se.lambda2).epsilon(1e-6));
  CHECK((se.gram * VectorXd::Ones(16)).norm() < 1e-8);
  const double wmax = se.scaled_weights.maxCoeff();
  for (int k = 0; k < 8; ++k) {
    CHECK(se.constraint_values[k] <= 1.0 + 1e-6);
    if (se.scaled_weights[k] > 1e-6 * wmax) CHECK(std::abs(se.constraint_values[k] - 1.0) <= 1e-6);
  }
}

TEST_CASE("separator validation") {
  const auto s = fixtures::edge_pair();
  const auto edges = support_edges(s, VectorXd::Ones(2));
  CHECK(edges.size() == 4);
  SeparatorSpec ok{{0, 3}, {1}, {2}};
  CHECK_NOTHROW(validate_separator(ok, 4, edges));
  SeparatorSpec touching{{0}, {1}, {2, 3}};
  CHECK_THROWS_AS(validate_separator(touching, 4, edges), InputError);
  SeparatorSpec missing{{0}, {1}, {2}};
  CHECK_THROWS_AS(validate_separator(missing, 4, edges), InputError);
}

TEST_CASE("shadow check: trivial and collinear cases") {
  const auto s = fixtures::triangle_pair();
  VectorXd w = VectorXd::Zero(3);
  w[0] = 1.0;
  const auto edges = support_edges(s, w);

  EmbeddingRealization e;
  e.points.resize(6, 1);
  e.points << 1, 1, 1, -1, -1, -1;
  e.effective_dimension = 1;
  // S = matched pair (0, 3): conv contains the origin.
  SeparatorSpec sep{{0, 3}, {1, 2}, {4, 5}};
  auto rep = separator_shadow_check(e, sep, edges);
  CHECK(rep.holds);
  CHECK(rep.trivial);

  // Shift layer 1 outward: layer-1 side sits behind the separator point.
  e.points << 2, 3, 3, -1, -1, -1;
  SeparatorSpec single{{0}, {1, 2}, {3, 4, 5}};
  rep = separator_shadow_check(e, single, edges);
  CHECK(rep.holds);
  CHECK_FALSE(rep.trivial);
  CHECK(rep.shadowed_component == 1);
}

TEST_CASE("shadow check on a geometric multiplex above c star") {
  const auto s = fixtures::random_pair(LayerModel::Geometric, LayerModel::Geometric, 10, 31);
  const double c = 2.0 * threshold_c_star(s);
  const auto se = scaled_embedding(s, c);
  const auto seps = fiedler_separators(s, se.weights, {0.25, 0.5, 0.75});
  REQUIRE(seps.size() >= 1);
  const auto edges = support_edges(s, se.weights);
  for (const auto& sep : seps) CHECK(separator_shadow_check(se.embedding, sep, edges).holds);
}

TEST_CASE("tensions in the clumped regime equal the weights") {
  const auto s = fixtures::random_pair(LayerModel::ErdosRenyi, LayerModel::WattsStrogatz, 8, 8);
  const double c = 0.5 * threshold_c_star(s);
  const auto se = scaled_embedding(s, c);
  const auto t = tension_residual(se.embedding, s, se.weights, se.lambda2);
  CHECK(t.max_residual <= 1e-4 * t.max_point_norm);
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    if (t.edges[e].interlayer) CHECK(std::abs(t.stiffness[e] - t.edges[e].weight) <= 1e-5);
  }
}

TEST_CASE("unbalanced node leaves a residual") {
  const auto s = fixtures::edge_pair();
  EmbeddingRealization e;
  e.points.resize(4, 1);
  e.points << 1, 1, -1, -1;
  e.effective_dimension = 1;
  // Node 0 only touches its coincident layer neighbour.
  VectorXd w(2);
  w << 0.0, 1.0;
  const auto t = tension_residual(e, s, w, 1.0);
  CHECK(t.max_residual > 1e-3);
}

TEST_CASE("symmetric configuration gives symmetric tensions") {
  const auto s = fixtures::edge_pair();
  EmbeddingRealization e;
  e.points.resize(4, 1);
  e.points << 0.5, 0.5, -0.5, -0.5;
  e.effective_dimension = 1;
  const auto t = tension_residual(e, s, VectorXd::Ones(2), 1.0);
  // Intralayer edges are coincident; the two interlayer tensions match.
  REQUIRE(t.edges.size() == 2);
  CHECK(t.excluded.size() == 2);
  CHECK(t.tensions[0] == doctest::Approx(t.tensions[1]));
  CHECK(t.max_residual < 1e-12);

  EmbeddingRealization flat;
  flat.points = MatrixXd::Zero(4, 1);
  CHECK_THROWS(tension_residual(flat, s, VectorXd::Ones(2), 1.0));
}
