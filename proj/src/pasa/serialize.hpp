#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pasa/combiner.hpp"
#include "pasa/replicate.hpp"
#include "pasa/select.hpp"
#include "pasa/summary.hpp"

namespace pasa {

// ordered_json keeps insertion order, giving reports a stable field layout.
using Json = nlohmann::ordered_json;

// Wire format for block-level checkpointing:
// {block_id, n_k, beta_k, J_k (row-major), phi_k}.
Json block_summary_to_json(const BlockSummary& summary);
BlockSummary block_summary_from_json(const Json& value);
BlockSummary block_summary_from_string(const std::string& text);

// {schema_version, beta, cov, se, intervals, total_n, K, timing_ms}.
Json estimate_to_json(const PasaEstimate& estimate, double level);

Json report_to_json(const ReplicationReport& report);
Json bench_results_to_json(const std::vector<BenchResult>& results);
Json trace_to_json(const SelectionTrace& trace);

}  // namespace pasa
