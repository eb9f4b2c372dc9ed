#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "spectraplex/graph.hpp"

namespace spectraplex {

enum class LayerModel { BarabasiAlbert, ErdosRenyi, Geometric, WattsStrogatz };

/// Parameters for all models; each model reads only its own fields.
struct ModelParams {
  int n = 30;
  int m = 2;             // BA: edges attached per new node
  double p = 0.2;        // ER: edge probability; WS: rewiring probability
  double radius = 0.3;   // Geo: Euclidean threshold in the unit square
  int k = 4;             // WS: ring-lattice degree (even)
};

/// Retry budget for producing a connected sample.
inline constexpr int kGenerationRetryCap = 100;

/// Deterministic for a fixed seed. Disconnected samples are redrawn with
/// sub-seeds 1, 2, ... up to kGenerationRetryCap, then GenerationError.
LayerGraph generate_layer(LayerModel model, const ModelParams& params, std::uint64_t seed);

std::optional<LayerModel> parse_layer_model(const std::string& name);
std::string to_string(LayerModel model);

}  // namespace spectraplex
