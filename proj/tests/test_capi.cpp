#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pasa/pasa.h"

namespace {

using Json = nlohmann::ordered_json;

// Tiny deterministic generator so the tests need no library internals.
struct Lcg {
  std::uint64_t state;
  double unit() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
  double normal() {
    const double u = std::max(unit(), 1e-12);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * unit());
  }
};

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out = s;
  pasa_free_string(s);
  return out;
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::string(pasa_version()) == "1.0.0");
  CHECK(std::string(pasa_last_error()).empty());
  pasa_free_string(nullptr);  // must be a no-op
}

TEST_CASE("stream lifecycle recovers noiseless coefficients") {
  pasa_stream* stream = nullptr;
  REQUIRE(pasa_stream_new("gaussian_identity", 2, &stream) == PASA_OK);
  REQUIRE(stream != nullptr);

  double beta[2] = {0, 0};
  CHECK(pasa_stream_beta(stream, beta) == PASA_ERR_CONFIG);
  CHECK(std::string(pasa_last_error()).find("batch") != std::string::npos);
  CHECK(pasa_stream_rows_seen(stream) == 0);

  // y = 1 + 2x with no noise, fed in three batches.
  Lcg rng{12345};
  std::vector<double> x;
  std::vector<double> y;
  for (int batch = 0; batch < 3; ++batch) {
    x.clear();
    y.clear();
    for (int i = 0; i < 50; ++i) {
      const double v = rng.normal();
      x.push_back(1.0);
      x.push_back(v);
      y.push_back(1.0 + 2.0 * v);
    }
    REQUIRE(pasa_stream_update(stream, x.data(), y.data(), 50) == PASA_OK);
  }
  CHECK(pasa_stream_rows_seen(stream) == 150);
  REQUIRE(pasa_stream_beta(stream, beta) == PASA_OK);
  CHECK(beta[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(beta[1] == doctest::Approx(2.0).epsilon(1e-9));

  char* summary_text = nullptr;
  REQUIRE(pasa_stream_summary_json(stream, 7, &summary_text) == PASA_OK);
  const Json summary = Json::parse(take(summary_text));
  CHECK(summary["block_id"] == 7);
  CHECK(summary["n_k"] == 150);
  CHECK(summary["beta_k"].size() == 2);
  CHECK(summary["J_k"].size() == 4);
  CHECK(summary["phi_k"].get<double>() < 1e-12);  // noiseless fit

  pasa_stream_free(stream);
}

TEST_CASE("stream argument validation") {
  pasa_stream* stream = nullptr;
  CHECK(pasa_stream_new("poisson_log", 2, &stream) == PASA_ERR_CONFIG);
  CHECK(std::string(pasa_last_error()).find("poisson_log") != std::string::npos);
  CHECK(pasa_stream_new("gaussian_identity", 0, &stream) == PASA_ERR_CONFIG);
  CHECK(pasa_stream_new("gaussian_identity", 2, nullptr) == PASA_ERR_CONFIG);

  REQUIRE(pasa_stream_new("bernoulli_logit", 2, &stream) == PASA_OK);
  const double x[4] = {1.0, 0.5, 1.0, -0.5};
  const double y[2] = {1.0, 0.0};
  CHECK(pasa_stream_update(nullptr, x, y, 2) == PASA_ERR_CONFIG);
  CHECK(pasa_stream_update(stream, nullptr, y, 2) == PASA_ERR_CONFIG);
  CHECK(pasa_stream_update(stream, x, y, 0) == PASA_ERR_CONFIG);

  // Bad labels are rejected as input errors.
  const double y_bad[2] = {2.0, 0.0};
  CHECK(pasa_stream_update(stream, x, y_bad, 2) == PASA_ERR_CONFIG);
  pasa_stream_free(stream);
  pasa_stream_free(nullptr);  // no-op
}

TEST_CASE("numeric failures map to the numeric status") {
  pasa_stream* stream = nullptr;
  REQUIRE(pasa_stream_new("gaussian_identity", 2, &stream) == PASA_OK);
  // Second column identically zero: rank deficient.
  std::vector<double> x;
  std::vector<double> y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(1.0);
    x.push_back(0.0);
    y.push_back(static_cast<double>(i));
  }
  CHECK(pasa_stream_update(stream, x.data(), y.data(), 20) == PASA_ERR_NUMERIC);
  CHECK(!std::string(pasa_last_error()).empty());
  pasa_stream_free(stream);
}

TEST_CASE("combine fuses json summaries and checks them") {
  // Two blocks written by streams over the same low-noise line.
  std::vector<std::string> summaries;
  Lcg rng{777};
  for (int block = 0; block < 2; ++block) {
    pasa_stream* stream = nullptr;
    REQUIRE(pasa_stream_new("gaussian_identity", 2, &stream) == PASA_OK);
    std::vector<double> x;
    std::vector<double> y;
    for (int i = 0; i < 60; ++i) {
      const double v = rng.normal();
      x.push_back(1.0);
      x.push_back(v);
      y.push_back(0.5 - 1.5 * v + 0.01 * rng.normal());
    }
    REQUIRE(pasa_stream_update(stream, x.data(), y.data(), 60) == PASA_OK);
    char* text = nullptr;
    REQUIRE(pasa_stream_summary_json(stream, block, &text) == PASA_OK);
    summaries.push_back(take(text));
    pasa_stream_free(stream);
  }

  std::vector<const char*> pointers;
  for (const std::string& s : summaries) pointers.push_back(s.c_str());
  char* out = nullptr;
  REQUIRE(pasa_combine_json(pointers.data(), pointers.size(), 0.95, &out) == PASA_OK);
  const Json estimate = Json::parse(take(out));
  CHECK(estimate["schema_version"] == 1);
  CHECK(estimate["K"] == 2);
  CHECK(estimate["total_n"] == 120);
  CHECK(estimate["beta"][0].get<double>() == doctest::Approx(0.5).epsilon(0.02));
  CHECK(estimate["beta"][1].get<double>() == doctest::Approx(-1.5).epsilon(0.02));
  REQUIRE(estimate["intervals"].size() == 2);
  CHECK(estimate["intervals"][0].contains("lower"));

  // Malformed input -> config error with context.
  const char* bad[] = {"{\"nope\": 1}"};
  CHECK(pasa_combine_json(bad, 1, 0.95, &out) == PASA_ERR_CONFIG);
  CHECK(std::string(pasa_last_error()).find("missing field") != std::string::npos);
  CHECK(pasa_combine_json(pointers.data(), 0, 0.95, &out) == PASA_ERR_CONFIG);
  CHECK(pasa_combine_json(pointers.data(), pointers.size(), 1.5, &out) ==
        PASA_ERR_CONFIG);
}

TEST_CASE("combine_dir reads every json file in a directory") {
  const auto dir = temp_dir("pasa_capi_combine");

  // Hand-written summaries with known fusion: both blocks share J and phi,
  // so the fused beta is the average of the block betas.
  const char* a =
      "{\"block_id\": 0, \"n_k\": 100, \"beta_k\": [1.0, 2.0],"
      " \"J_k\": [2.0, 0.0, 0.0, 2.0], \"phi_k\": 1.0}";
  const char* b =
      "{\"block_id\": 1, \"n_k\": 100, \"beta_k\": [3.0, 6.0],"
      " \"J_k\": [2.0, 0.0, 0.0, 2.0], \"phi_k\": 1.0}";
  {
    std::ofstream(dir / "a.json") << a;
    std::ofstream(dir / "b.json") << b;
    std::ofstream(dir / "notes.txt") << "ignored";
  }

  char* out = nullptr;
  REQUIRE(pasa_combine_dir(dir.string().c_str(), 0.95, "json", &out) == PASA_OK);
  const Json estimate = Json::parse(take(out));
  CHECK(estimate["K"] == 2);
  CHECK(estimate["total_n"] == 200);
  CHECK(estimate["beta"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(estimate["beta"][1].get<double>() == doctest::Approx(4.0).epsilon(1e-12));

  // Table rendering goes through the same path.
  REQUIRE(pasa_combine_dir(dir.string().c_str(), 0.95, "table", &out) == PASA_OK);
  CHECK(take(out).find("estimate") != std::string::npos);

  // A corrupt file is reported by name.
  std::ofstream(dir / "c.json") << "{broken";
  CHECK(pasa_combine_dir(dir.string().c_str(), 0.95, "json", &out) ==
        PASA_ERR_CONFIG);
  CHECK(std::string(pasa_last_error()).find("c.json") != std::string::npos);
  std::filesystem::remove(dir / "c.json");

  // Empty directory.
  const auto empty = temp_dir("pasa_capi_empty");
  CHECK(pasa_combine_dir(empty.string().c_str(), 0.95, "json", &out) ==
        PASA_ERR_CONFIG);
  CHECK(pasa_combine_dir("/nonexistent/pasa_dir", 0.95, "json", &out) ==
        PASA_ERR_CONFIG);

  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(empty);
}

TEST_CASE("fit driver runs from toml text") {
  const char* toml =
      "[sim]\n"
      "family = \"gaussian\"\n"
      "n = 2000\n"
      "beta0 = [0.5, -0.25, 0.75]\n"
      "seed = 5\n"
      "[run]\n"
      "strategy = \"pasa\"\n"
      "k = 4\n"
      "q = 2\n"
      "threads = 1\n";
  char* out = nullptr;
  REQUIRE(pasa_fit(toml, -1, -1, "json", &out) == PASA_OK);
  const Json estimate = Json::parse(take(out));
  CHECK(estimate["K"] == 4);
  CHECK(estimate["total_n"] == 2000);
  CHECK(estimate["beta"].size() == 3);
  CHECK(estimate["beta"][0].get<double>() == doctest::Approx(0.5).epsilon(0.2));

  // Same config with a seed override changes the simulated data.
  char* out2 = nullptr;
  REQUIRE(pasa_fit(toml, 99, -1, "json", &out2) == PASA_OK);
  const Json other = Json::parse(take(out2));
  CHECK(other["beta"][0].get<double>() != estimate["beta"][0].get<double>());

  // Unknown keys in owned sections fail loudly.
  const char* typo_toml =
      "[sim]\n"
      "family = \"gaussian\"\n"
      "n = 100\n"
      "beta0 = [1.0, 0.5]\n"
      "[run]\n"
      "strateyg = \"pasa\"\n";
  CHECK(pasa_fit(typo_toml, -1, -1, "json", &out) == PASA_ERR_CONFIG);
  CHECK(std::string(pasa_last_error()).find("strateyg") != std::string::npos);
  // Bad TOML syntax, bad format, missing output pointer.
  CHECK(pasa_fit("not toml", -1, -1, "json", &out) == PASA_ERR_CONFIG);
  CHECK(pasa_fit(toml, -1, -1, "yaml", &out) == PASA_ERR_CONFIG);
  CHECK(pasa_fit(toml, -1, -1, "json", nullptr) == PASA_ERR_CONFIG);
  CHECK(pasa_fit(nullptr, -1, -1, "json", &out) == PASA_ERR_CONFIG);
}

TEST_CASE("fit driver reads csv when configured") {
  const auto dir = temp_dir("pasa_capi_csv");
  const auto csv_path = dir / "data.csv";

  const char* sim_toml =
      "[sim]\n"
      "family = \"gaussian\"\n"
      "n = 500\n"
      "beta0 = [1.0, 2.0]\n"
      "seed = 3\n";
  REQUIRE(pasa_simulate_csv(sim_toml, -1, csv_path.string().c_str()) == PASA_OK);

  const std::string fit_toml = std::string(
                                   "[sim]\n"
                                   "family = \"gaussian\"\n"
                                   "n = 500\n"
                                   "beta0 = [1.0, 2.0]\n"
                                   "[csv]\n"
                                   "path = \"") +
                               csv_path.string() +
                               "\"\n"
                               "outcome = \"y\"\n"
                               "numeric = [\"x2\"]\n"
                               "[run]\n"
                               "strategy = \"offline\"\n"
                               "threads = 1\n";
  char* out = nullptr;
  REQUIRE(pasa_fit(fit_toml.c_str(), -1, -1, "json", &out) == PASA_OK);
  const Json estimate = Json::parse(take(out));
  CHECK(estimate["beta"].size() == 2);
  CHECK(estimate["beta"][0].get<double>() == doctest::Approx(1.0).epsilon(0.25));
  CHECK(estimate["beta"][1].get<double>() == doctest::Approx(2.0).epsilon(0.25));
  std::filesystem::remove_all(dir);
}

TEST_CASE("replicate driver reports metrics") {
  const char* toml =
      "[sim]\n"
      "family = \"bernoulli\"\n"
      "n = 4000\n"
      "beta0 = [0.3, -0.5, 0.4]\n"
      "[run]\n"
      "strategy = \"pasa\"\n"
      "k = 4\n"
      "q = 2\n"
      "threads = 1\n"
      "[replicate]\n"
      "reps = 5\n"
      "base_seed = 11\n";
  char* out = nullptr;
  REQUIRE(pasa_replicate(toml, -1, -1, "json", &out) == PASA_OK);
  const Json reports = Json::parse(take(out));
  REQUIRE(reports.is_array());
  REQUIRE(reports.size() == 1);
  CHECK(reports[0]["reps"] == 5);
  CHECK(reports[0]["family"] == "bernoulli_logit");
  CHECK(reports[0]["cp"].get<double>() >= 0.0);
  CHECK(reports[0]["cp"].get<double>() <= 1.0);
  CHECK(reports[0]["a_bias"].get<double>() > 0.0);
}

TEST_CASE("bench driver times the requested cells") {
  const char* toml =
      "[sim]\n"
      "family = \"gaussian\"\n"
      "n = 3000\n"
      "beta0 = [0.5, -0.5]\n"
      "[run]\n"
      "threads = 1\n"
      "[bench]\n"
      "runs = 2\n"
      "cells = [\"offline\", \"pasa:3x2\"]\n";
  char* out = nullptr;
  REQUIRE(pasa_bench(toml, -1, -1, "json", &out) == PASA_OK);
  const Json bench = Json::parse(take(out));
  REQUIRE(bench["cells"].size() == 2);
  CHECK(bench["cells"][0]["strategy"] == "offline");
  CHECK(bench["cells"][1]["k"] == 3);
  CHECK(bench["cells"][1]["q"] == 2);
  CHECK(bench["cells"][1]["c_time_s"].get<double>() >= 0.0);
}

TEST_CASE("select driver runs the synthetic benchmark") {
  const char* toml =
      "[select]\n"
      "n = 20000\n"
      "seed = 2\n"
      "gamma = 0.9\n"
      "k = 5\n"
      "q = 1\n"
      "train_blocks = 4\n"
      "[run]\n"
      "threads = 1\n";
  char* out = nullptr;
  REQUIRE(pasa_select(toml, -1, -1, "json", &out) == PASA_OK);
  const Json trace = Json::parse(take(out));
  CHECK(trace["base_auc"].get<double>() > 0.5);
  CHECK(trace["final_auc"].get<double>() >= trace["base_auc"].get<double>());
  CHECK(trace["models_evaluated"].get<int>() >= 1);
}

TEST_CASE("auc utility matches a hand-computed value") {
  const double scores[4] = {0.3, 0.4, 0.5, 0.7};
  const double labels[4] = {0.0, 1.0, 0.0, 1.0};
  double value = 0.0;
  REQUIRE(pasa_auc(scores, labels, 4, &value) == PASA_OK);
  CHECK(value == doctest::Approx(0.75));

  CHECK(pasa_auc(scores, labels, 0, &value) == PASA_ERR_CONFIG);
  CHECK(pasa_auc(nullptr, labels, 4, &value) == PASA_ERR_CONFIG);
  const double one_class[2] = {1.0, 1.0};
  CHECK(pasa_auc(scores, one_class, 2, &value) == PASA_ERR_CONFIG);
  const double bad_label[4] = {0.0, 1.0, 0.5, 1.0};
  CHECK(pasa_auc(scores, bad_label, 4, &value) == PASA_ERR_CONFIG);
}
