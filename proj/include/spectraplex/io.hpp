#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spectraplex/centrality.hpp"
#include "spectraplex/embedding.hpp"
#include "spectraplex/graph.hpp"
#include "spectraplex/optimizer.hpp"
#include "spectraplex/spectral.hpp"
#include "spectraplex/sweep.hpp"

namespace spectraplex {

using Json = nlohmann::json;

/// {"n": N, "edges": [[i, j, w], ...]}; a two-element edge has weight 1.
Json layer_to_json(const LayerGraph& layer);
LayerGraph layer_from_json(const Json& j);

/// {"layer1": layer, "layer2": layer, "matching": [[a, b], ...]}; the
/// matching may be omitted for the identity pairing.
Json multiplex_to_json(const MultiplexSpec& spec);
MultiplexSpec multiplex_from_json(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Json read_json_file(const std::string& path);

Json result_to_json(const OptimizationResult& result, int head_tail = 3);
Json thresholds_to_json(const ThresholdReport& report);
Json sweep_to_json(const SweepResult& sweep);
/// Columns: c, objective_opt, objective_uniform, multiplicity, emb_dim,
/// status, gap and the bound columns.
std::string sweep_to_csv(const SweepResult& sweep);

/// Columns: node, layer, x1..xd.
std::string embedding_to_csv(const EmbeddingRealization& emb, const MultiplexSpec& spec);
Json embedding_to_json(const EmbeddingRealization& emb, const MultiplexSpec& spec);

Json correlations_to_json(const std::vector<CorrelationEntry>& table);
std::string correlations_to_csv(const std::vector<CorrelationEntry>& table);

}  // namespace spectraplex
