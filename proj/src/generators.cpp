#include "spectraplex/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "spectraplex/errors.hpp"

namespace spectraplex {

namespace {

using Rng = std::mt19937_64;
using EdgeSet = std::set<std::pair<int, int>>;

Rng make_rng(std::uint64_t seed, int attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(attempt)};
  return Rng(seq);
}

std::vector<Edge> to_edges(const EdgeSet& set) {
  std::vector<Edge> edges;
  edges.reserve(set.size());
  for (const auto& [i, j] : set) edges.push_back({i, j, 1.0});
  return edges;
}

// Starts from m isolated seed nodes; each new node attaches to m distinct
// targets drawn proportionally to degree (uniformly while all degrees are 0).
EdgeSet barabasi_albert(const ModelParams& prm, Rng& rng) {
  if (prm.m < 1 || prm.m >= prm.n) throw InputError("barabasi_albert needs 1 <= m < n");
  EdgeSet edges;
  std::vector<int> repeated;
  std::vector<int> targets(prm.m);
  for (int i = 0; i < prm.m; ++i) targets[i] = i;
  for (int source = prm.m; source < prm.n; ++source) {
    for (int t : targets) {
      edges.insert(std::minmax(source, t));
      repeated.push_back(t);
      repeated.push_back(source);
    }
    std::set<int> chosen;
    std::uniform_int_distribution<std::size_t> pick(0, repeated.size() - 1);
    while (static_cast<int>(chosen.size()) < prm.m) chosen.insert(repeated[pick(rng)]);
    targets.assign(chosen.begin(), chosen.end());
  }
  return edges;
}

EdgeSet erdos_renyi(const ModelParams& prm, Rng& rng) {
  if (prm.p < 0.0 || prm.p > 1.0) throw InputError("erdos_renyi needs 0 <= p <= 1");
  EdgeSet edges;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < prm.n; ++i)
    for (int j = i + 1; j < prm.n; ++j)
      if (u(rng) < prm.p) edges.insert({i, j});
  return edges;
}

EdgeSet geometric(const ModelParams& prm, Rng& rng) {
  if (!(prm.radius > 0.0)) throw InputError("geometric needs radius > 0");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> pts(prm.n);
  for (auto& pt : pts) {
    pt.first = u(rng);
    pt.second = u(rng);
  }
  EdgeSet edges;
  for (int i = 0; i < prm.n; ++i)
    for (int j = i + 1; j < prm.n; ++j)
      if (std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second) <= prm.radius)
        edges.insert({i, j});
  return edges;
}

// Ring lattice with k/2 neighbours per side; every lattice edge (i, i+j) is
// rewired to (i, random) with probability p, skipping self loops and
// duplicates.
EdgeSet watts_strogatz(const ModelParams& prm, Rng& rng) {
  if (prm.k < 2 || prm.k % 2 != 0 || prm.k >= prm.n)
    throw InputError("watts_strogatz needs even k with 2 <= k < n");
  if (prm.p < 0.0 || prm.p > 1.0) throw InputError("watts_strogatz needs 0 <= p <= 1");
  EdgeSet edges;
  const int half = prm.k / 2;
  for (int i = 0; i < prm.n; ++i)
    for (int j = 1; j <= half; ++j) edges.insert(std::minmax(i, (i + j) % prm.n));

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> node(0, prm.n - 1);
  for (int j = 1; j <= half; ++j) {
    for (int i = 0; i < prm.n; ++i) {
      if (u(rng) >= prm.p) continue;
      const std::pair<int, int> old_edge = std::minmax(i, (i + j) % prm.n);
      if (!edges.count(old_edge)) continue;
      int degree = 0;
      for (const auto& [a, b] : edges) degree += (a == i || b == i);
      if (degree >= prm.n - 1) continue;
      int target = node(rng);
      while (target == i || edges.count(std::minmax(i, target))) target = node(rng);
      edges.erase(old_edge);
      edges.insert(std::minmax(i, target));
    }
  }
  return edges;
}

}  // namespace

LayerGraph generate_layer(LayerModel model, const ModelParams& params, std::uint64_t seed) {
  if (params.n <= 0) throw InputError("model needs n > 0");
  for (int attempt = 0; attempt < kGenerationRetryCap; ++attempt) {
    Rng rng = make_rng(seed, attempt);
    EdgeSet edges;
    switch (model) {
      case LayerModel::BarabasiAlbert: edges = barabasi_albert(params, rng); break;
      case LayerModel::ErdosRenyi: edges = erdos_renyi(params, rng); break;
      case LayerModel::Geometric: edges = geometric(params, rng); break;
      case LayerModel::WattsStrogatz: edges = watts_strogatz(params, rng); break;
    }
    LayerGraph layer(params.n, to_edges(edges));
    if (layer.is_connected()) return layer;
  }
  throw GenerationError("no connected " + to_string(model) + " sample after " +
                        std::to_string(kGenerationRetryCap) + " attempts");
}

std::optional<LayerModel> parse_layer_model(const std::string& name) {
  if (name == "ba" || name == "barabasi_albert") return LayerModel::BarabasiAlbert;
  if (name == "er" || name == "erdos_renyi") return LayerModel::ErdosRenyi;
  if (name == "geo" || name == "geometric") return LayerModel::Geometric;
  if (name == "ws" || name == "watts_strogatz") return LayerModel::WattsStrogatz;
  return std::nullopt;
}

std::string to_string(LayerModel model) {
  switch (model) {
    case LayerModel::BarabasiAlbert: return "barabasi_albert";
    case LayerModel::ErdosRenyi: return "erdos_renyi";
    case LayerModel::Geometric: return "geometric";
    case LayerModel::WattsStrogatz: return "watts_strogatz";
  }
  return "unknown";
}

}  // namespace spectraplex
