#include "spectraplex/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "spectraplex/errors.hpp"

namespace spectraplex {

namespace {

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i).transpose()));
  return a;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

Json layer_to_json(const LayerGraph& layer) {
  Json edges = Json::array();
  for (const auto& e : layer.edges()) edges.push_back({e.i, e.j, e.weight});
  return {{"n", layer.node_count()}, {"edges", edges}};
}

LayerGraph layer_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || (e.size() != 2 && e.size() != 3)) throw InputError("edge must be [i, j] or [i, j, w]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<double>() : 1.0});
    }
    return LayerGraph(n, std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed layer JSON: ") + e.what());
  }
}

Json multiplex_to_json(const MultiplexSpec& spec) {
  Json matching = Json::array();
  for (const auto& p : spec.matching()) matching.push_back({p.layer1, p.layer2});
  return {{"layer1", layer_to_json(spec.layer1())}, {"layer2", layer_to_json(spec.layer2())}, {"matching", matching}};
}

MultiplexSpec multiplex_from_json(const Json& j) {
  try {
    std::vector<MatchedPair> matching;
    if (j.contains("matching")) {
      for (const auto& p : j.at("matching")) {
        if (!p.is_array() || p.size() != 2) throw InputError("matching entries must be [a, b]");
        matching.push_back({p[0].get<int>(), p[1].get<int>()});
      }
    }
    return MultiplexSpec(layer_from_json(j.at("layer1")), layer_from_json(j.at("layer2")), std::move(matching));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed multiplex JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json result_to_json(const OptimizationResult& r, int head_tail) {
  const int n = static_cast<int>(r.eigenvalues.size());
  const int k = std::min(head_tail, n);
  Json residuals = Json::object();
  for (const auto& [name, value] : r.dual.feasibility_residuals) residuals[name] = value;
  return {
      {"objective", to_string(r.objective)},
      {"budget", r.weights.budget()},
      {"weights", vector_json(r.weights.weights())},
      {"objective_value", r.objective_value},
      {"lambda2", r.lambda2},
      {"lambda_n", r.lambda_n},
      {"mu", r.shift_mu},
      {"xi", r.dual.xi},
      {"dual_value", r.dual.dual_value},
      {"gap", r.duality_gap},
      {"status", to_string(r.status)},
      {"method", r.method},
      {"certificate", r.dual.origin},
      {"iterations", r.solver_iterations},
      {"lambda2_multiplicity", r.lambda2_multiplicity},
      {"lambda_n_multiplicity", r.lambda_n_multiplicity},
      {"eigenvalue_head", vector_json(r.eigenvalues.head(k))},
      {"eigenvalue_tail", vector_json(r.eigenvalues.tail(k))},
      {"residuals", residuals},
  };
}

Json thresholds_to_json(const ThresholdReport& t) {
  Json transitions = Json::array();
  for (const auto& tr : t.transitions)
    transitions.push_back(
        {{"budget", tr.budget}, {"kind", tr.kind}, {"before", tr.multiplicity_before}, {"after", tr.multiplicity_after}});
  Json j = {{"c_star", t.c_star}, {"transitions", transitions}};
  j["c1_star"] = t.c1_star ? Json(*t.c1_star) : Json(nullptr);
  if (!t.c1_star_note.empty()) j["c1_star_note"] = t.c1_star_note;
  if (t.q_matrix.size() > 0) j["q_matrix"] = matrix_json(t.q_matrix);
  return j;
}

Json sweep_to_json(const SweepResult& s) {
  Json records = Json::array();
  for (const auto& r : s.records) {
    Json rec = {{"c", r.budget}, {"ok", r.ok}};
    if (!r.ok) {
      rec["error"] = r.error;
    } else {
      rec["objective_opt"] = r.objective_opt;
      rec["objective_uniform"] = r.objective_uniform;
      rec["lambda2"] = r.lambda2;
      rec["lambda_n"] = r.lambda_n;
      rec["gap"] = r.duality_gap;
      rec["status"] = to_string(r.status);
      rec["weights"] = vector_json(r.weights);
      rec["eigenvalue_head"] = vector_json(r.head_eigenvalues);
      rec["eigenvalue_tail"] = vector_json(r.tail_eigenvalues);
      rec["multiplicity"] = r.multiplicity;
      rec["emb_dim"] = r.embedding_dimension;
    }
    records.push_back(rec);
  }
  Json transitions = Json::array();
  for (const auto& tr : s.transitions)
    transitions.push_back(
        {{"budget", tr.budget}, {"kind", tr.kind}, {"before", tr.multiplicity_before}, {"after", tr.multiplicity_after}});
  return {{"objective", to_string(s.objective)}, {"records", records}, {"transitions", transitions}};
}

std::string sweep_to_csv(const SweepResult& s) {
  std::ostringstream os;
  os << "c,objective_opt,objective_uniform,multiplicity,emb_dim,status,gap,"
        "lambda2_linear_cap,lambda2_ave_cap,lambdan_lower,lambdan_upper_large_c,width_lower\n";
  for (const auto& r : s.records) {
    if (!r.ok) {
      os << fmt(r.budget) << ",,,,,error,,,,,,\n";
      continue;
    }
    os << fmt(r.budget) << ',' << fmt(r.objective_opt) << ',' << fmt(r.objective_uniform) << ',' << r.multiplicity
       << ',' << r.embedding_dimension << ',' << to_string(r.status) << ',' << fmt(r.duality_gap) << ','
       << fmt(r.bounds.lambda2_linear_cap) << ',' << fmt(r.bounds.lambda2_ave_cap) << ','
       << fmt(r.bounds.lambdan_lower) << ',' << fmt(r.bounds.lambdan_upper_large_c) << ','
       << fmt(r.bounds.width_lower) << '\n';
  }
  return os.str();
}

std::string embedding_to_csv(const EmbeddingRealization& emb, const MultiplexSpec& spec) {
  std::ostringstream os;
  os << "node,layer";
  for (Eigen::Index d = 0; d < emb.points.cols(); ++d) os << ",x" << d + 1;
  os << '\n';
  for (Eigen::Index i = 0; i < emb.points.rows(); ++i) {
    os << i << ',' << layer_of(spec, static_cast<int>(i));
    for (Eigen::Index d = 0; d < emb.points.cols(); ++d) os << ',' << fmt(emb.points(i, d));
    os << '\n';
  }
  return os.str();
}

Json embedding_to_json(const EmbeddingRealization& emb, const MultiplexSpec& spec) {
  Json layers = Json::array();
  for (Eigen::Index i = 0; i < emb.points.rows(); ++i) layers.push_back(layer_of(spec, static_cast<int>(i)));
  return {{"source", to_string(emb.source)},
          {"effective_dimension", emb.effective_dimension},
          {"visual_dimension", emb.visual_dimension},
          {"rank_tol", emb.rank_tol},
          {"layers", layers},
          {"points", matrix_json(emb.points)}};
}

Json correlations_to_json(const std::vector<CorrelationEntry>& table) {
  Json a = Json::array();
  for (const auto& e : table)
    a.push_back({{"measure", e.measure}, {"layer", e.layer}, {"value", e.value ? Json(*e.value) : Json(nullptr)}});
  return a;
}

std::string correlations_to_csv(const std::vector<CorrelationEntry>& table) {
  std::ostringstream os;
  os << "measure,layer,pearson\n";
  for (const auto& e : table) os << e.measure << ',' << e.layer << ',' << (e.value ? fmt(*e.value) : "undefined") << '\n';
  return os.str();
}

}  // namespace spectraplex
