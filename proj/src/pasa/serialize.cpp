#include "pasa/serialize.hpp"

#include <utility>

#include "pasa/errors.hpp"

namespace pasa {
namespace {

std::vector<double> to_flat_rows(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Json matrix_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

const Json& field(const Json& value, const char* name) {
  if (!value.contains(name)) {
    throw ConfigError(std::string("BlockSummary JSON: missing field '") + name + "'");
  }
  return value.at(name);
}

double number_field(const Json& value, const char* name) {
  const Json& f = field(value, name);
  if (!f.is_number()) {
    throw ConfigError(std::string("BlockSummary JSON: field '") + name +
                      "' must be a number");
  }
  return f.get<double>();
}

std::vector<double> array_field(const Json& value, const char* name) {
  const Json& f = field(value, name);
  if (!f.is_array()) {
    throw ConfigError(std::string("BlockSummary JSON: field '") + name +
                      "' must be an array");
  }
  std::vector<double> out;
  out.reserve(f.size());
  for (const Json& item : f) {
    if (!item.is_number()) {
      throw ConfigError(std::string("BlockSummary JSON: field '") + name +
                        "' must contain only numbers");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

}  // namespace

Json block_summary_to_json(const BlockSummary& summary) {
  Json out;
  out["block_id"] = summary.block_id;
  out["n_k"] = summary.n_k;
  out["beta_k"] = to_vector(summary.beta_k);
  out["J_k"] = to_flat_rows(summary.j_k);
  out["phi_k"] = summary.phi_k;
  return out;
}

BlockSummary block_summary_from_json(const Json& value) {
  if (!value.is_object()) throw ConfigError("BlockSummary JSON: expected an object");
  BlockSummary summary;
  summary.block_id = static_cast<std::int64_t>(number_field(value, "block_id"));
  summary.n_k = static_cast<std::int64_t>(number_field(value, "n_k"));
  const std::vector<double> beta = array_field(value, "beta_k");
  if (beta.empty()) throw ConfigError("BlockSummary JSON: 'beta_k' must be non-empty");
  const auto p = static_cast<Eigen::Index>(beta.size());
  summary.beta_k = Eigen::Map<const Eigen::VectorXd>(beta.data(), p);
  const std::vector<double> j = array_field(value, "J_k");
  if (j.size() != beta.size() * beta.size()) {
    throw ConfigError("BlockSummary JSON: 'J_k' must hold p*p row-major entries");
  }
  summary.j_k.resize(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index c = 0; c < p; ++c) {
      summary.j_k(i, c) = j[static_cast<std::size_t>(i * p + c)];
    }
  }
  summary.phi_k = number_field(value, "phi_k");
  return summary;
}

BlockSummary block_summary_from_string(const std::string& text) {
  Json value;
  try {
    value = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid BlockSummary JSON: ") + e.what());
  }
  return block_summary_from_json(value);
}

Json estimate_to_json(const PasaEstimate& estimate, double level) {
  const std::vector<WaldInterval> intervals = wald_intervals(estimate, level);
  Json out;
  out["schema_version"] = 1;
  out["beta"] = to_vector(estimate.beta);
  out["cov"] = matrix_rows(estimate.cov);
  Json se = Json::array();
  Json bands = Json::array();
  for (const WaldInterval& interval : intervals) {
    se.push_back(interval.se);
    bands.push_back(Json{{"lower", interval.lower}, {"upper", interval.upper}});
  }
  out["se"] = std::move(se);
  out["intervals"] = std::move(bands);
  out["total_n"] = estimate.total_n;
  out["K"] = estimate.k_blocks;
  out["level"] = level;
  out["timing_ms"] = Json{{"c_time", estimate.timing.c_time_s * 1e3},
                          {"r_time", estimate.timing.r_time_s * 1e3},
                          {"combine", estimate.timing.combine_s * 1e3},
                          {"total_wall", estimate.timing.total_wall_s * 1e3}};
  return out;
}

Json report_to_json(const ReplicationReport& report) {
  Json out;
  out["schema_version"] = 1;
  out["family"] = report.family;
  out["strategy"] = report.strategy;
  out["k"] = report.k_blocks;
  out["q"] = report.q_batches;
  out["n"] = report.n;
  out["p"] = report.p;
  out["reps"] = report.reps;
  out["failures"] = report.failures;
  out["a_bias"] = report.a_bias;
  out["ase"] = report.ase;
  out["ese"] = report.ese;
  out["cp"] = report.cp;
  out["c_time_s"] = report.c_time_s;
  out["r_time_s"] = report.r_time_s;
  if (!report.per_rep.empty()) {
    Json reps = Json::array();
    for (const RepRecord& rep : report.per_rep) {
      reps.push_back(Json{{"beta", to_vector(rep.beta)},
                          {"se", to_vector(rep.se)},
                          {"c_time_s", rep.c_time_s},
                          {"r_time_s", rep.r_time_s}});
    }
    out["per_rep"] = std::move(reps);
  }
  return out;
}

Json bench_results_to_json(const std::vector<BenchResult>& results) {
  Json out;
  out["schema_version"] = 1;
  Json cells = Json::array();
  for (const BenchResult& result : results) {
    cells.push_back(Json{{"family", result.family},
                         {"strategy", result.strategy},
                         {"k", result.k_blocks},
                         {"q", result.q_batches},
                         {"n", result.n},
                         {"runs", result.runs},
                         {"c_time_s", result.c_time_s},
                         {"r_time_s", result.r_time_s}});
  }
  out["cells"] = std::move(cells);
  return out;
}

Json trace_to_json(const SelectionTrace& trace) {
  Json out;
  out["schema_version"] = 1;
  out["base_auc"] = trace.base_auc;
  Json steps = Json::array();
  for (const SelectionStep& step : trace.steps) {
    steps.push_back(Json{{"term", step.term}, {"auc", step.auc}});
  }
  out["steps"] = std::move(steps);
  out["final_terms"] = trace.final_terms;
  out["final_auc"] = trace.final_auc;
  out["models_evaluated"] = trace.models_evaluated;
  out["removed"] = trace.removed;
  out["final_fn"] = trace.final_fn;
  out["final_fp"] = trace.final_fp;
  out["total_time_s"] = trace.total_time_s;
  return out;
}

}  // namespace pasa
