#include <Eigen/Dense>
#include <string>
#include <vector>

#include "doctest.h"
#include "pasa/errors.hpp"
#include "pasa/report.hpp"
#include "pasa/serialize.hpp"

namespace {

using namespace pasa;

BlockSummary sample_summary() {
  BlockSummary summary;
  summary.block_id = 3;
  summary.n_k = 1200;
  summary.beta_k.resize(2);
  summary.beta_k << 0.5, -1.25;
  summary.j_k.resize(2, 2);
  summary.j_k << 4.0, 1.5, 1.5, 3.0;
  summary.phi_k = 1.1;
  return summary;
}

PasaEstimate sample_estimate() {
  PasaEstimate est;
  est.beta.resize(2);
  est.beta << 1.0, -2.0;
  est.cov.resize(2, 2);
  est.cov << 0.04, 0.01, 0.01, 0.09;
  est.total_n = 5000;
  est.k_blocks = 5;
  est.timing.c_time_s = 0.25;
  est.timing.r_time_s = 0.1;
  est.timing.combine_s = 0.01;
  est.timing.total_wall_s = 0.12;
  return est;
}

}  // namespace

TEST_CASE("block summary survives a json round trip exactly") {
  const BlockSummary original = sample_summary();
  const Json encoded = block_summary_to_json(original);
  const BlockSummary decoded = block_summary_from_json(encoded);
  CHECK(decoded.block_id == original.block_id);
  CHECK(decoded.n_k == original.n_k);
  CHECK(decoded.beta_k == original.beta_k);
  CHECK(decoded.j_k == original.j_k);
  CHECK(decoded.phi_k == original.phi_k);

  // And through text: doubles are emitted at round-trip precision.
  const BlockSummary reparsed = block_summary_from_string(encoded.dump());
  CHECK(reparsed.beta_k == original.beta_k);
  CHECK(reparsed.j_k == original.j_k);
  CHECK(reparsed.phi_k == original.phi_k);
}

TEST_CASE("block summary json uses the agreed field names and layout") {
  const Json encoded = block_summary_to_json(sample_summary());
  CHECK(encoded.contains("block_id"));
  CHECK(encoded.contains("n_k"));
  CHECK(encoded.contains("beta_k"));
  CHECK(encoded.contains("J_k"));
  CHECK(encoded.contains("phi_k"));
  // J_k is flat row-major: [J00, J01, J10, J11].
  const std::vector<double> j = encoded["J_k"].get<std::vector<double>>();
  CHECK(j == std::vector<double>{4.0, 1.5, 1.5, 3.0});
}

TEST_CASE("block summary json validates fields") {
  Json good = block_summary_to_json(sample_summary());

  Json missing = good;
  missing.erase("phi_k");
  CHECK_THROWS_AS((void)block_summary_from_json(missing), ConfigError);

  Json wrong_type = good;
  wrong_type["beta_k"] = "not an array";
  CHECK_THROWS_AS((void)block_summary_from_json(wrong_type), ConfigError);

  Json wrong_items = good;
  wrong_items["beta_k"] = Json::array({1.0, "x"});
  CHECK_THROWS_AS((void)block_summary_from_json(wrong_items), ConfigError);

  Json bad_shape = good;
  bad_shape["J_k"] = Json::array({1.0, 2.0, 3.0});  // not p*p
  CHECK_THROWS_AS((void)block_summary_from_json(bad_shape), ConfigError);

  Json empty_beta = good;
  empty_beta["beta_k"] = Json::array();
  CHECK_THROWS_AS((void)block_summary_from_json(empty_beta), ConfigError);

  CHECK_THROWS_AS((void)block_summary_from_json(Json::array()), ConfigError);
  CHECK_THROWS_AS((void)block_summary_from_string("{not json"), ConfigError);
}

TEST_CASE("estimate json carries the full inference payload") {
  const Json out = estimate_to_json(sample_estimate(), 0.95);
  CHECK(out["schema_version"] == 1);
  CHECK(out["beta"] == Json::array({1.0, -2.0}));
  CHECK(out["cov"].size() == 2);
  CHECK(out["cov"][1] == Json::array({0.01, 0.09}));
  CHECK(out["total_n"] == 5000);
  CHECK(out["K"] == 5);
  CHECK(out["level"] == 0.95);
  REQUIRE(out["se"].size() == 2);
  CHECK(out["se"][0].get<double>() == doctest::Approx(0.2));
  CHECK(out["se"][1].get<double>() == doctest::Approx(0.3));
  REQUIRE(out["intervals"].size() == 2);
  const double z = 1.959963984540054;
  CHECK(out["intervals"][0]["lower"].get<double>() ==
        doctest::Approx(1.0 - z * 0.2).epsilon(1e-9));
  CHECK(out["intervals"][0]["upper"].get<double>() ==
        doctest::Approx(1.0 + z * 0.2).epsilon(1e-9));
  CHECK(out["timing_ms"]["c_time"].get<double>() == doctest::Approx(250.0));
  CHECK(out["timing_ms"]["total_wall"].get<double>() == doctest::Approx(120.0));

  // Field order is stable (ordered_json) so reports diff cleanly.
  const std::string text = out.dump();
  CHECK(text.find("\"schema_version\"") < text.find("\"beta\""));
  CHECK(text.find("\"beta\"") < text.find("\"cov\""));
  CHECK(text.find("\"cov\"") < text.find("\"timing_ms\""));
}

TEST_CASE("report and bench json match their structs") {
  ReplicationReport report;
  report.family = "bernoulli";
  report.strategy = "pasa";
  report.k_blocks = 10;
  report.q_batches = 5;
  report.n = 100000;
  report.p = 5;
  report.reps = 500;
  report.failures = 0;
  report.a_bias = 3.1e-3;
  report.ase = 3.8e-3;
  report.ese = 3.9e-3;
  report.cp = 0.951;
  report.c_time_s = 1.5;
  report.r_time_s = 0.4;

  const Json out = report_to_json(report);
  CHECK(out["family"] == "bernoulli");
  CHECK(out["k"] == 10);
  CHECK(out["q"] == 5);
  CHECK(out["reps"] == 500);
  CHECK(out["cp"].get<double>() == doctest::Approx(0.951));
  CHECK_FALSE(out.contains("per_rep"));

  RepRecord rep;
  rep.beta = Eigen::VectorXd::Ones(2);
  rep.se = Eigen::VectorXd::Constant(2, 0.1);
  report.per_rep.push_back(rep);
  const Json kept = report_to_json(report);
  REQUIRE(kept.contains("per_rep"));
  CHECK(kept["per_rep"][0]["beta"] == Json::array({1.0, 1.0}));

  BenchResult cell;
  cell.family = "gaussian";
  cell.strategy = "pasa";
  cell.k_blocks = 10;
  cell.q_batches = 10;
  cell.n = 1000000;
  cell.runs = 10;
  cell.c_time_s = 2.0;
  cell.r_time_s = 0.5;
  const Json bench = bench_results_to_json({cell});
  REQUIRE(bench["cells"].size() == 1);
  CHECK(bench["cells"][0]["strategy"] == "pasa");
  CHECK(bench["cells"][0]["r_time_s"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("selection trace json keeps the step order") {
  SelectionTrace trace;
  trace.base_auc = 0.70;
  trace.steps = {{"a*b", 0.74}, {"c*d", 0.75}};
  trace.final_terms = {"(intercept)", "a", "a*b", "c*d"};
  trace.final_auc = 0.75;
  trace.models_evaluated = 31;
  trace.removed = {"broken"};
  trace.final_fn = 12;
  trace.final_fp = 34;

  const Json out = trace_to_json(trace);
  CHECK(out["base_auc"].get<double>() == doctest::Approx(0.70));
  REQUIRE(out["steps"].size() == 2);
  CHECK(out["steps"][0]["term"] == "a*b");
  CHECK(out["steps"][1]["auc"].get<double>() == doctest::Approx(0.75));
  CHECK(out["removed"] == Json::array({"broken"}));
  CHECK(out["final_fn"] == 12);
  CHECK(out["models_evaluated"] == 31);
}

TEST_CASE("report formats render in all three styles") {
  CHECK(parse_format("json") == ReportFormat::json);
  CHECK(parse_format("csv") == ReportFormat::csv);
  CHECK(parse_format("table") == ReportFormat::table);
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);

  ReplicationReport report;
  report.family = "gaussian";
  report.strategy = "pasa";
  report.k_blocks = 10;
  report.q_batches = 2;
  report.n = 1000;
  report.p = 3;
  report.reps = 50;
  report.a_bias = 1.0e-3;
  report.ase = 2.0e-3;
  report.ese = 2.1e-3;
  report.cp = 0.95;

  const std::string table = emit_reports({report}, ReportFormat::table);
  CHECK(table.find("A.bias") != std::string::npos);
  CHECK(table.find("ASE") != std::string::npos);
  CHECK(table.find("ESE") != std::string::npos);
  CHECK(table.find("CP") != std::string::npos);
  CHECK(table.find("pasa") != std::string::npos);

  const std::string csv = emit_reports({report}, ReportFormat::csv);
  CHECK(csv.find("family,") != std::string::npos);
  CHECK(csv.find("gaussian,") != std::string::npos);

  const std::string json_text = emit_reports({report}, ReportFormat::json);
  const Json parsed = Json::parse(json_text);
  CHECK(parsed.is_array());
  CHECK(parsed[0]["family"] == "gaussian");

  const std::string est_table =
      emit_estimate(sample_estimate(), 0.95, ReportFormat::table);
  CHECK(est_table.find("estimate") != std::string::npos);
  CHECK(est_table.find("se") != std::string::npos);
  const Json est_json =
      Json::parse(emit_estimate(sample_estimate(), 0.95, ReportFormat::json));
  CHECK(est_json["schema_version"] == 1);

  BenchResult cell;
  cell.family = "gaussian";
  cell.strategy = "offline";
  cell.k_blocks = 1;
  cell.q_batches = 1;
  cell.n = 100;
  cell.runs = 3;
  const std::string bench_table = emit_bench({cell}, ReportFormat::table);
  CHECK(bench_table.find("offline") != std::string::npos);
  CHECK(bench_table.find("C.Time") != std::string::npos);

  SelectionTrace trace;
  trace.base_auc = 0.7;
  trace.final_auc = 0.7;
  trace.final_terms = {"(intercept)"};
  const std::string trace_table = emit_trace(trace, ReportFormat::table);
  CHECK(trace_table.find("AUC") != std::string::npos);
  const Json trace_json = Json::parse(emit_trace(trace, ReportFormat::json));
  CHECK(trace_json["final_auc"].get<double>() == doctest::Approx(0.7));
}
