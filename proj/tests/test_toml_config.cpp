#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "pasa/config.hpp"
#include "pasa/errors.hpp"
#include "pasa/toml.hpp"

namespace {

using namespace pasa;

std::string error_text(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("toml parser handles sections, comments and types") {
  const toml::Document doc = toml::parse(
      "# top comment\n"
      "title = \"pasa\"  # trailing comment\n"
      "count = 42\n"
      "big = 1_000_000\n"
      "ratio = 0.25\n"
      "neg = -1.5e-2\n"
      "flag = true\n"
      "off = false\n"
      "\n"
      "[sim]\n"
      "beta0 = [0.3, -0.2, 1]\n"
      "names = ['a', \"b\"]\n"
      "empty = []\n"
      "trailing = [1, 2,]\n"
      "multi = [\n"
      "  1.0,\n"
      "  2.0,  # inline comment\n"
      "]\n"
      "[sim.nested]\n"
      "deep = 'single # not a comment'\n"
      "escaped = \"line\\nbreak\"\n");

  CHECK(doc.get_string("title", "") == "pasa");
  CHECK(doc.get_int("count", 0) == 42);
  CHECK(doc.get_int("big", 0) == 1000000);
  CHECK(doc.get_double("ratio", 0.0) == 0.25);
  CHECK(doc.get_double("neg", 0.0) == -0.015);
  CHECK(doc.get_bool("flag", false));
  CHECK_FALSE(doc.get_bool("off", true));
  // Integers coerce to double in numeric arrays and scalar lookups.
  CHECK(doc.get_double("count", 0.0) == 42.0);
  CHECK(doc.require_double_array("sim.beta0") ==
        std::vector<double>{0.3, -0.2, 1.0});
  CHECK(doc.get_string_array("sim.names") == std::vector<std::string>{"a", "b"});
  CHECK(doc.require_double_array("sim.empty").empty());
  CHECK(doc.require_double_array("sim.trailing") == std::vector<double>{1.0, 2.0});
  CHECK(doc.require_double_array("sim.multi") == std::vector<double>{1.0, 2.0});
  CHECK(doc.get_string("sim.nested.deep", "") == "single # not a comment");
  CHECK(doc.get_string("sim.nested.escaped", "") == "line\nbreak");
  CHECK(doc.get_int("absent", 7) == 7);
}

TEST_CASE("toml parser rejects what it does not support") {
  CHECK_THROWS_AS(toml::parse("x = {a = 1}"), ConfigError);
  CHECK_THROWS_AS(toml::parse("[[cell]]\nx = 1"), ConfigError);
  CHECK_THROWS_AS(toml::parse("x = \"unterminated\n"), ConfigError);
  CHECK_THROWS_AS(toml::parse("just a line\n"), ConfigError);
  CHECK_THROWS_AS(toml::parse("x = \n"), ConfigError);
  CHECK_THROWS_AS(toml::parse("x = [1, , 2]\n"), ConfigError);
  CHECK_THROWS_AS(toml::parse("x = [1, 2\n"), ConfigError);
  CHECK_THROWS_AS(toml::parse("x = nonsense\n"), ConfigError);
  CHECK_THROWS_AS(toml::parse("x = 1\nx = 2\n"), ConfigError);
  CHECK_THROWS_AS(toml::parse("bad key! = 1\n"), ConfigError);
  CHECK_THROWS_AS(toml::parse("x = \"a\" b\"\n"), ConfigError);

  // Errors carry the physical line number.
  const std::string msg =
      error_text([] { (void)toml::parse("ok = 1\nbroken line\n"); });
  CHECK(msg.find("config line 2") != std::string::npos);
}

TEST_CASE("toml getters enforce types and track usage") {
  const toml::Document doc = toml::parse("x = 5\ns = \"text\"\nunused = 1\n");
  const std::string msg = error_text([&] { (void)doc.get_string("x", ""); });
  CHECK(msg.find("config key 'x'") != std::string::npos);
  CHECK(msg.find("expected string") != std::string::npos);
  CHECK(msg.find("got integer") != std::string::npos);
  CHECK_THROWS_AS((void)doc.get_int("s", 0), ConfigError);
  CHECK_THROWS_AS((void)doc.require_string("missing"), ConfigError);
  CHECK_THROWS_AS((void)doc.require_double_array("x"), ConfigError);

  (void)doc.get_int("x", 0);
  const std::vector<std::string> unused = doc.unused_keys();
  REQUIRE(unused.size() == 1);
  CHECK(unused[0] == "unused");
}

TEST_CASE("parse_file reports missing paths") {
  CHECK_THROWS_AS((void)toml::parse_file("/nonexistent/pasa.toml"), IoError);

  const auto path = std::filesystem::temp_directory_path() / "pasa_cfg.toml";
  {
    std::ofstream out(path);
    out << "[sim]\nfamily = \"gaussian\"\n";
  }
  const toml::Document doc = toml::parse_file(path.string());
  CHECK(doc.require_string("sim.family") == "gaussian");
  std::filesystem::remove(path);
}

TEST_CASE("sim spec loads from a realistic config") {
  const toml::Document doc = toml::parse(
      "[sim]\n"
      "family = \"bernoulli\"\n"
      "n = 10000\n"
      "beta0 = [0.3, -0.2, 0.1]\n"
      "rho = 0.4\n"
      "intercept = true\n"
      "seed = 9\n");
  const SimSpec spec = load_sim_spec(doc);
  CHECK(spec.family.is_bernoulli());
  CHECK(spec.n == 10000);
  CHECK(spec.beta0.size() == 3);
  CHECK(spec.beta0[1] == -0.2);
  CHECK(spec.rho == 0.4);
  CHECK(spec.seed == 9);

  ConfigOverrides over;
  over.seed = 123;
  CHECK(load_sim_spec(doc, over).seed == 123);
}

TEST_CASE("sim spec validation failures are config errors") {
  CHECK_THROWS_AS(load_sim_spec(toml::parse("[sim]\nfamily = \"gaussian\"\n")),
                  ConfigError);  // missing n / beta0
  CHECK_THROWS_AS(
      load_sim_spec(toml::parse(
          "[sim]\nfamily = \"poisson\"\nn = 10\nbeta0 = [1.0]\n")),
      ConfigError);  // unknown family
  CHECK_THROWS_AS(
      load_sim_spec(toml::parse(
          "[sim]\nfamily = \"gaussian\"\nn = 10\nbeta0 = []\n")),
      ConfigError);
}

TEST_CASE("run config defaults, overrides and validation") {
  const toml::Document doc = toml::parse(
      "[run]\n"
      "strategy = \"mapreduce\"\n"
      "k = 10\n"
      "q = 5\n"
      "threads = 2\n"
      "seed = 4\n"
      "level = 0.9\n"
      "equal_dispersion_weights = true\n"
      "[stream]\n"
      "weighting = \"normalized\"\n"
      "max_iter = 40\n"
      "[solver]\n"
      "tol = 1e-9\n");
  const RunConfig run = load_run_config(doc);
  CHECK(run.strategy == Strategy::mapreduce);
  CHECK(run.k_blocks == 10);
  CHECK(run.q_batches == 5);
  CHECK(run.threads == 2);
  CHECK(run.seed == 4);
  CHECK(run.level == 0.9);
  CHECK(run.equal_dispersion_weights);
  CHECK(run.stream.weighting == DispersionWeighting::normalized);
  CHECK(run.stream.max_iter == 40);
  CHECK(run.stream.init.tol == 1e-9);

  const RunConfig defaults = load_run_config(toml::parse(""));
  CHECK(defaults.strategy == Strategy::pasa);
  CHECK(defaults.k_blocks == 1);
  CHECK(defaults.level == 0.95);
  CHECK(defaults.stream.weighting == DispersionWeighting::paper);

  ConfigOverrides over;
  over.threads = 8;
  over.seed = 77;
  const RunConfig overridden = load_run_config(doc, over);
  CHECK(overridden.threads == 8);
  CHECK(overridden.seed == 77);

  CHECK_THROWS_AS(load_run_config(toml::parse("[run]\nlevel = 1.5\n")), ConfigError);
  CHECK_THROWS_AS(load_run_config(toml::parse("[run]\nk = 0\n")), ConfigError);
  CHECK_THROWS_AS(load_run_config(toml::parse("[run]\nstrategy = \"sgd\"\n")),
                  ConfigError);
  CHECK_THROWS_AS(load_run_config(toml::parse("[solver]\ntol = -1.0\n")), ConfigError);
  CHECK_THROWS_AS(
      load_run_config(toml::parse("[stream]\nweighting = \"bogus\"\n")), ConfigError);
}

TEST_CASE("replicate config loads on top of sim and run") {
  const toml::Document doc = toml::parse(
      "[sim]\n"
      "family = \"gaussian\"\n"
      "n = 500\n"
      "beta0 = [1.0, 2.0]\n"
      "[run]\n"
      "k = 2\n"
      "[replicate]\n"
      "reps = 25\n"
      "base_seed = 3\n"
      "keep_reps = true\n");
  const ReplicateConfig config = load_replicate_config(doc);
  CHECK(config.reps == 25);
  CHECK(config.base_seed == 3);
  CHECK(config.keep_reps);
  CHECK(config.sim.n == 500);
  CHECK(config.run.k_blocks == 2);
  CHECK_THROWS_AS(load_replicate_config(toml::parse(
                      "[sim]\nfamily = \"gaussian\"\nn = 10\nbeta0 = [1.0]\n"
                      "[replicate]\nreps = 0\n")),
                  ConfigError);
}

TEST_CASE("bench cells parse the strategy:KxQ forms") {
  BenchCell cell = parse_bench_cell("offline");
  CHECK(cell.strategy == "offline");
  CHECK(cell.k_blocks == 1);
  CHECK(cell.q_batches == 1);

  cell = parse_bench_cell("mapreduce:10");
  CHECK(cell.strategy == "mapreduce");
  CHECK(cell.k_blocks == 10);
  CHECK(cell.q_batches == 1);

  cell = parse_bench_cell("pasa:10x25");
  CHECK(cell.strategy == "pasa");
  CHECK(cell.k_blocks == 10);
  CHECK(cell.q_batches == 25);

  CHECK_THROWS_AS(parse_bench_cell("pasa:0"), ConfigError);
  CHECK_THROWS_AS(parse_bench_cell("pasa:abc"), ConfigError);
  CHECK_THROWS_AS(parse_bench_cell("pasa:10x"), ConfigError);
  CHECK_THROWS_AS(parse_bench_cell("pasa:"), ConfigError);
}

TEST_CASE("bench config defaults its cell grid") {
  const toml::Document doc = toml::parse(
      "[sim]\n"
      "family = \"gaussian\"\n"
      "n = 1000\n"
      "beta0 = [1.0, -1.0]\n"
      "[bench]\n"
      "runs = 3\n");
  const BenchConfig config = load_bench_config(doc);
  CHECK(config.runs == 3);
  REQUIRE(config.cells.size() == 3);
  CHECK(config.cells[0].strategy == "offline");
  CHECK(config.cells[1].strategy == "mapreduce");
  CHECK(config.cells[1].k_blocks == 10);
  CHECK(config.cells[2].strategy == "pasa");
  CHECK(config.cells[2].q_batches == 10);

  const toml::Document listed = toml::parse(
      "[sim]\n"
      "family = \"gaussian\"\n"
      "n = 1000\n"
      "beta0 = [1.0, -1.0]\n"
      "[bench]\n"
      "cells = [\"offline\", \"pasa:4x2\"]\n");
  const BenchConfig custom = load_bench_config(listed);
  REQUIRE(custom.cells.size() == 2);
  CHECK(custom.cells[1].k_blocks == 4);
  CHECK(custom.cells[1].q_batches == 2);
}

TEST_CASE("csv job maps schema sections onto columns") {
  const toml::Document doc = toml::parse(
      "[csv]\n"
      "path = \"data.csv\"\n"
      "outcome = \"y\"\n"
      "numeric = [\"age\", \"clicks\", \"raw\"]\n"
      "standardize = [\"age\"]\n"
      "categorical = [\"region\"]\n"
      "interactions = [\"age*clicks\"]\n"
      "batch_size = 128\n"
      "[csv.levels]\n"
      "region = [\"east\", \"west\"]\n"
      "[csv.given]\n"
      "clicks = [1.5, 2.0]\n");
  const CsvJob job = load_csv_job(doc);
  CHECK(job.path == "data.csv");
  CHECK(job.batch_size == 128);
  CHECK(job.schema.outcome == "y");
  REQUIRE(job.schema.numeric.size() == 3);
  CHECK(job.schema.numeric[0].standardize == Standardize::two_pass);
  CHECK(job.schema.numeric[1].standardize == Standardize::given);
  CHECK(job.schema.numeric[1].mean == 1.5);
  CHECK(job.schema.numeric[1].sd == 2.0);
  CHECK(job.schema.numeric[2].standardize == Standardize::none);
  REQUIRE(job.schema.categorical.size() == 1);
  CHECK(job.schema.categorical[0].levels ==
        std::vector<std::string>{"east", "west"});
  CHECK(job.schema.interactions == std::vector<std::string>{"age*clicks"});
}

TEST_CASE("csv job rejects inconsistent schemas") {
  const std::string base =
      "[csv]\n"
      "path = \"d.csv\"\n"
      "outcome = \"y\"\n";
  // standardize and given both claim the column
  CHECK_THROWS_AS(load_csv_job(toml::parse(base +
                                           "numeric = [\"a\"]\n"
                                           "standardize = [\"a\"]\n"
                                           "[csv.given]\n"
                                           "a = [0.0, 1.0]\n")),
                  ConfigError);
  // standardize names a column missing from numeric
  CHECK_THROWS_AS(load_csv_job(toml::parse(base +
                                           "numeric = [\"a\"]\n"
                                           "standardize = [\"b\"]\n")),
                  ConfigError);
  // given needs [mean, sd] with sd > 0
  CHECK_THROWS_AS(load_csv_job(toml::parse(base +
                                           "numeric = [\"a\"]\n"
                                           "[csv.given]\n"
                                           "a = [1.0]\n")),
                  ConfigError);
  CHECK_THROWS_AS(load_csv_job(toml::parse(base +
                                           "numeric = [\"a\"]\n"
                                           "[csv.given]\n"
                                           "a = [0.0, -1.0]\n")),
                  ConfigError);
  // categorical without levels
  CHECK_THROWS_AS(load_csv_job(toml::parse(base + "categorical = [\"g\"]\n")),
                  ConfigError);
  // interaction referencing an unknown column surfaces at load time
  CHECK_THROWS_AS(load_csv_job(toml::parse(base +
                                           "numeric = [\"a\"]\n"
                                           "interactions = [\"a*ghost\"]\n")),
                  ConfigError);
  // missing path
  CHECK_THROWS_AS(load_csv_job(toml::parse("[csv]\noutcome = \"y\"\n")),
                  ConfigError);
}

TEST_CASE("select job loads synthetic and csv modes") {
  const toml::Document synth = toml::parse(
      "[select]\n"
      "n = 50000\n"
      "seed = 6\n"
      "gamma = 0.7\n"
      "k = 10\n"
      "q = 4\n"
      "train_blocks = 8\n");
  const SelectJob job = load_select_job(synth);
  CHECK(job.synthetic);
  CHECK(job.synthetic_spec.n == 50000);
  CHECK(job.synthetic_spec.seed == 6);
  CHECK(job.synthetic_spec.gamma == 0.7);
  CHECK(job.config.k_blocks == 10);
  CHECK(job.config.q_batches == 4);
  CHECK(job.config.train_blocks == 8);

  const SelectJob defaults = load_select_job(toml::parse(""));
  CHECK(defaults.synthetic);
  CHECK(defaults.synthetic_spec.n == 200000);
  CHECK(defaults.config.k_blocks == 20);
  CHECK(defaults.config.train_blocks == 15);

  const toml::Document csv_mode = toml::parse(
      "[select]\n"
      "mode = \"csv\"\n"
      "base = [\"(intercept)\", \"x\"]\n"
      "candidates = [\"x*z\"]\n");
  const SelectJob csv_job = load_select_job(csv_mode);
  CHECK_FALSE(csv_job.synthetic);
  CHECK(csv_job.config.base == std::vector<std::string>{"(intercept)", "x"});
  CHECK(csv_job.config.candidates == std::vector<std::string>{"x*z"});

  CHECK_THROWS_AS(load_select_job(toml::parse("[select]\nmode = \"csv\"\n")),
                  ConfigError);
  CHECK_THROWS_AS(load_select_job(toml::parse("[select]\nmode = \"other\"\n")),
                  ConfigError);
}

TEST_CASE("reject_unknown flags typos only inside owned sections") {
  const toml::Document doc = toml::parse(
      "[run]\n"
      "k = 2\n"
      "tyop = 1\n"
      "[select]\n"
      "gamma = 0.5\n");
  (void)load_run_config(doc);
  // 'tyop' sits in the owned [run] section -> error.
  CHECK_THROWS_AS(reject_unknown(doc, {"run", "solver", "stream"}), ConfigError);
  const std::string msg =
      error_text([&] { reject_unknown(doc, {"run", "solver", "stream"}); });
  CHECK(msg.find("run.tyop") != std::string::npos);

  // A clean document with an unrelated section passes.
  const toml::Document clean = toml::parse(
      "[run]\n"
      "k = 2\n"
      "[select]\n"
      "gamma = 0.5\n");
  (void)load_run_config(clean);
  CHECK_NOTHROW(reject_unknown(clean, {"run", "solver", "stream"}));
}
