#include <algorithm>
#include <set>

#include <doctest.h>

#include "fixtures.hpp"
#include "spectraplex/errors.hpp"

using namespace spectraplex;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("layer laplacian of a single edge") {
  MatrixXd expected(2, 2);
  expected << 1, -1, -1, 1;
  CHECK(build_layer_laplacian(LayerGraph(2, {{0, 1, 1.0}})).isApprox(expected));
}

TEST_CASE("layer laplacian of the weighted triangle") {
  MatrixXd expected(3, 3);
  expected << 3, -1, -2, -1, 2, -1, -2, -1, 3;
  CHECK(build_layer_laplacian(fixtures::weighted_triangle()).isApprox(expected));
}

TEST_CASE("layer without edges has a zero laplacian") {
  CHECK(build_layer_laplacian(LayerGraph(3, {})).isZero());
}

TEST_CASE("invalid edges are rejected") {
  CHECK_THROWS_AS(LayerGraph(2, {{0, 2, 1.0}}), InputError);
  CHECK_THROWS_AS(LayerGraph(2, {{0, 1, -1.0}}), InputError);
  CHECK_THROWS_AS(LayerGraph(2, {{0, 1, 1.0}, {1, 0, 1.0}}), InputError);
  CHECK_THROWS_AS(LayerGraph(2, {{1, 1, 1.0}}), InputError);
}

TEST_CASE("supra laplacian of two single edges at unit coupling") {
  const auto s = fixtures::edge_pair();
  const MatrixXd l = assemble_supra_laplacian(s, VectorXd::Ones(2));
  CHECK(l.isApprox(fixtures::supra_by_hand(s, VectorXd::Ones(2))));
  const VectorXd ev = fixtures::spectrum(l);
  CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(2.0));
  CHECK(ev[2] == doctest::Approx(2.0));
  CHECK(ev[3] == doctest::Approx(4.0));
}

TEST_CASE("zero coupling gives the block diagonal") {
  const auto s = fixtures::triangle_pair();
  const MatrixXd l = assemble_supra_laplacian(s, VectorXd::Zero(3));
  CHECK(l.topLeftCorner(3, 3).isApprox(build_layer_laplacian(s.layer1())));
  CHECK(l.bottomRightCorner(3, 3).isApprox(build_layer_laplacian(s.layer2())));
  CHECK(l.topRightCorner(3, 3).isZero());
  CHECK(l.isApprox(intralayer_laplacian(s)));
}

TEST_CASE("weight on the nodal pair keeps eigenvalue 5") {
  const auto s = fixtures::triangle_pair();
  VectorXd v(6);
  v << 1, 0, -1, 0, 0, 0;
  v /= std::sqrt(2.0);
  for (double c : {0.1, 0.5, 1.0}) {
    VectorXd w(3);
    w << 0, c, 0;
    const MatrixXd l = assemble_supra_laplacian(s, w);
    CHECK((l * v - 5.0 * v).norm() < 1e-12);
  }
}

TEST_CASE("supra laplacian length mismatch") {
  CHECK_THROWS_AS(assemble_supra_laplacian(fixtures::edge_pair(), VectorXd::Ones(3)), InputError);
}

TEST_CASE("pair laplacians sum with L0 to the supra laplacian") {
  const auto s = fixtures::random_pair(LayerModel::ErdosRenyi, LayerModel::WattsStrogatz, 8, 3);
  VectorXd w = VectorXd::LinSpaced(8, 0.1, 1.5);
  MatrixXd l = intralayer_laplacian(s);
  for (int k = 0; k < 8; ++k) l += w[k] * pair_laplacian(s, k);
  CHECK(l.isApprox(assemble_supra_laplacian(s, w)));
  CHECK(l.isApprox(fixtures::supra_by_hand(s, w)));
}

TEST_CASE("non-identity matching is sorted by layer-1 endpoint") {
  const MultiplexSpec s(fixtures::unit_triangle(), fixtures::weighted_triangle(), {{2, 0}, {0, 1}, {1, 2}});
  CHECK(s.matching()[0] == MatchedPair{0, 1});
  CHECK(s.pair_node2(0) == 4);
  VectorXd w(3);
  w << 0.3, 0.7, 1.1;
  CHECK(assemble_supra_laplacian(s, w).isApprox(fixtures::supra_by_hand(s, w)));
}

TEST_CASE("weight allocation validation") {
  VectorXd w(2);
  w << 0.5, 0.5;
  CHECK(WeightAllocation(w, 1.0).budget() == 1.0);
  CHECK_THROWS_AS(WeightAllocation(w, 2.0), InputError);
  w << -0.1, 1.1;
  CHECK_THROWS_AS(WeightAllocation(w, 1.0), InputError);
  CHECK(WeightAllocation::uniform(4, 2.0).weights().isApproxToConstant(0.5));
}

TEST_CASE("multiplex validation") {
  const auto ok = validate_multiplex(MultiplexSpec(fixtures::unit_triangle(), fixtures::unit_triangle()));
  CHECK(ok.valid);
  CHECK(ok.layer_size == 3);
  CHECK(ok.total_nodes == 6);

  const auto bad2 = validate_multiplex(MultiplexSpec(fixtures::unit_triangle(), LayerGraph(3, {{0, 1, 1.0}})));
  CHECK_FALSE(bad2.valid);
  CHECK(std::find(bad2.reasons.begin(), bad2.reasons.end(), "layer 2 not connected") != bad2.reasons.end());

  const auto bad3 =
      validate_multiplex(MultiplexSpec(fixtures::unit_triangle(), fixtures::unit_triangle(), {{0, 0}, {1, 1}}));
  CHECK_FALSE(bad3.valid);
  CHECK(std::find(bad3.reasons.begin(), bad3.reasons.end(), "matching not perfect") != bad3.reasons.end());
  CHECK_THROWS_AS(require_valid(MultiplexSpec(fixtures::unit_triangle(), fixtures::unit_triangle(), {{0, 0}})),
                  InputError);
}

TEST_CASE("complete ER graph") {
  ModelParams p;
  p.n = 5;
  p.p = 1.0;
  const auto g = generate_layer(LayerModel::ErdosRenyi, p, 0);
  CHECK(g.edges().size() == 10);
}

TEST_CASE("unrewired WS graph is a cycle") {
  ModelParams p;
  p.n = 6;
  p.k = 2;
  p.p = 0.0;
  const auto g = generate_layer(LayerModel::WattsStrogatz, p, 0);
  REQUIRE(g.edges().size() == 6);
  std::set<std::pair<int, int>> got;
  for (const auto& e : g.edges()) got.insert({std::min(e.i, e.j), std::max(e.i, e.j)});
  for (int i = 0; i < 6; ++i) CHECK(got.count({std::min(i, (i + 1) % 6), std::max(i, (i + 1) % 6)}) == 1);
}

TEST_CASE("BA graph edge count") {
  ModelParams p;
  p.n = 10;
  p.m = 2;
  const auto g = generate_layer(LayerModel::BarabasiAlbert, p, 7);
  CHECK(g.node_count() == 10);
  CHECK(g.edges().size() == 16);
  CHECK(g.is_connected());
}

TEST_CASE("generators are deterministic and connected") {
  ModelParams p;
  p.n = 15;
  for (auto m : {LayerModel::BarabasiAlbert, LayerModel::ErdosRenyi, LayerModel::Geometric,
                 LayerModel::WattsStrogatz}) {
    const auto a = generate_layer(m, p, 42);
    const auto b = generate_layer(m, p, 42);
    CHECK(a == b);
    CHECK(a.is_connected());
  }
}

TEST_CASE("impossible connectivity raises a generation error") {
  ModelParams p;
  p.n = 20;
  p.p = 0.0;
  CHECK_THROWS_AS(generate_layer(LayerModel::ErdosRenyi, p, 1), GenerationError);
}

TEST_CASE("model names") {
  CHECK(parse_layer_model("ws") == LayerModel::WattsStrogatz);
  CHECK(parse_layer_model("geo") == LayerModel::Geometric);
  CHECK_FALSE(parse_layer_model("lattice").has_value());
}
