#include "pasa/config.hpp"

#include <charconv>
#include <set>
#include <string>
#include <vector>

#include "pasa/errors.hpp"

namespace pasa {
namespace {

std::int64_t positive_int(const toml::Document& doc, const std::string& key,
                          std::int64_t fallback) {
  const std::int64_t value = doc.get_int(key, fallback);
  if (value < 1) throw ConfigError("config key '" + key + "' must be >= 1");
  return value;
}

std::uint64_t seed_value(const toml::Document& doc, const std::string& key,
                         std::int64_t fallback, const ConfigOverrides& over) {
  // Read the key even when overridden so it counts as used and is type-checked.
  const std::int64_t from_doc = doc.get_int(key, fallback);
  const std::int64_t value = over.seed >= 0 ? over.seed : from_doc;
  if (value < 0) throw ConfigError("config key '" + key + "' must be >= 0");
  return static_cast<std::uint64_t>(value);
}

int thread_count(const toml::Document& doc, const std::string& key,
                 const ConfigOverrides& over) {
  const std::int64_t from_doc = doc.get_int(key, 0);
  const std::int64_t value = over.threads >= 0 ? over.threads : from_doc;
  if (value < 0) throw ConfigError("config key '" + key + "' must be >= 0");
  return static_cast<int>(value);
}

}  // namespace

GlmFamily load_family(const toml::Document& doc) {
  return GlmFamily::parse(doc.require_string("sim.family"));
}

SimSpec load_sim_spec(const toml::Document& doc, const ConfigOverrides& over) {
  SimSpec spec;
  spec.family = load_family(doc);
  spec.n = positive_int(doc, "sim.n", 0);
  const std::vector<double> beta0 = doc.require_double_array("sim.beta0");
  if (beta0.empty()) throw ConfigError("config key 'sim.beta0' must be non-empty");
  spec.beta0 = Eigen::Map<const Eigen::VectorXd>(beta0.data(),
                                                 static_cast<Eigen::Index>(beta0.size()));
  spec.rho = doc.get_double("sim.rho", spec.rho);
  spec.intercept = doc.get_bool("sim.intercept", spec.intercept);
  spec.phi0 = doc.get_double("sim.phi0", spec.phi0);
  spec.seed = seed_value(doc, "sim.seed", 1, over);
  validate_spec(spec);
  return spec;
}

StreamConfig load_stream_config(const toml::Document& doc) {
  StreamConfig stream;
  stream.init.tol = doc.get_double("solver.tol", stream.init.tol);
  stream.init.max_iter =
      static_cast<int>(positive_int(doc, "solver.max_iter", stream.init.max_iter));
  stream.init.beta_cap = doc.get_double("solver.beta_cap", stream.init.beta_cap);
  stream.tol = doc.get_double("stream.tol", stream.tol);
  stream.max_iter =
      static_cast<int>(positive_int(doc, "stream.max_iter", stream.max_iter));
  stream.weighting =
      parse_dispersion_weighting(doc.get_string("stream.weighting", "paper"));
  if (stream.init.tol <= 0 || stream.tol <= 0) {
    throw ConfigError("solver/stream tolerances must be > 0");
  }
  if (stream.init.beta_cap <= 0) {
    throw ConfigError("config key 'solver.beta_cap' must be > 0");
  }
  return stream;
}

RunConfig load_run_config(const toml::Document& doc, const ConfigOverrides& over) {
  RunConfig run;
  run.strategy = parse_strategy(doc.get_string("run.strategy", "pasa"));
  run.k_blocks = static_cast<int>(positive_int(doc, "run.k", 1));
  run.q_batches = static_cast<int>(positive_int(doc, "run.q", 1));
  run.stream = load_stream_config(doc);
  run.threads = thread_count(doc, "run.threads", over);
  run.seed = seed_value(doc, "run.seed", 1, over);
  run.level = doc.get_double("run.level", run.level);
  if (!(run.level > 0.0 && run.level < 1.0)) {
    throw ConfigError("config key 'run.level' must lie in (0, 1)");
  }
  run.equal_dispersion_weights =
      doc.get_bool("run.equal_dispersion_weights", run.equal_dispersion_weights);
  run.sequential_partition =
      doc.get_bool("run.sequential_partition", run.sequential_partition);
  return run;
}

ReplicateConfig load_replicate_config(const toml::Document& doc,
                                      const ConfigOverrides& over) {
  ReplicateConfig config;
  config.sim = load_sim_spec(doc, over);
  config.run = load_run_config(doc, over);
  config.reps = static_cast<int>(positive_int(doc, "replicate.reps", 1));
  const std::int64_t doc_base = doc.get_int("replicate.base_seed", 1);
  const std::int64_t base = over.seed >= 0 ? over.seed : doc_base;
  if (base < 0) throw ConfigError("config key 'replicate.base_seed' must be >= 0");
  config.base_seed = static_cast<std::uint64_t>(base);
  const std::int64_t rep_threads = doc.get_int("replicate.rep_threads", 0);
  if (rep_threads < 0) {
    throw ConfigError("config key 'replicate.rep_threads' must be >= 0");
  }
  config.rep_threads = static_cast<int>(rep_threads);
  config.keep_reps = doc.get_bool("replicate.keep_reps", false);
  return config;
}

BenchCell parse_bench_cell(const std::string& text) {
  BenchCell cell;
  const std::size_t colon = text.find(':');
  cell.strategy = text.substr(0, colon);
  if (colon == std::string::npos) return cell;
  const std::string layout = text.substr(colon + 1);
  const std::size_t cross = layout.find('x');
  const std::string k_text = layout.substr(0, cross);
  auto parse_count = [&](const std::string& piece) {
    int value = 0;
    const auto r = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (r.ec != std::errc() || r.ptr != piece.data() + piece.size() || value < 1) {
      throw ConfigError("bad bench cell '" + text +
                        "': expected strategy, strategy:K or strategy:KxQ");
    }
    return value;
  };
  cell.k_blocks = parse_count(k_text);
  if (cross != std::string::npos) cell.q_batches = parse_count(layout.substr(cross + 1));
  return cell;
}

BenchConfig load_bench_config(const toml::Document& doc, const ConfigOverrides& over) {
  BenchConfig config;
  config.sim = load_sim_spec(doc, over);
  config.run_base = load_run_config(doc, over);
  config.runs = static_cast<int>(positive_int(doc, "bench.runs", 10));
  const std::vector<std::string> cells = doc.get_string_array("bench.cells");
  if (cells.empty()) {
    config.cells = {{"offline", 1, 1}, {"mapreduce", 10, 1}, {"pasa", 10, 10}};
  } else {
    for (const std::string& text : cells) config.cells.push_back(parse_bench_cell(text));
  }
  return config;
}

CsvJob load_csv_job(const toml::Document& doc) {
  CsvJob job;
  job.path = doc.require_string("csv.path");
  job.schema.outcome = doc.require_string("csv.outcome");
  job.schema.intercept = doc.get_bool("csv.intercept", true);

  const std::vector<std::string> numeric = doc.get_string_array("csv.numeric");
  const std::vector<std::string> standardize_list =
      doc.get_string_array("csv.standardize");
  const std::set<std::string> standardize(standardize_list.begin(),
                                          standardize_list.end());
  std::set<std::string> given_cols;
  const std::string given_prefix = "csv.given.";
  for (const std::string& key : doc.keys_with_prefix("csv.given")) {
    if (key.size() <= given_prefix.size()) {
      throw ConfigError("csv.given must be a table of column = [mean, sd] entries");
    }
    given_cols.insert(key.substr(given_prefix.size()));
  }
  for (const std::string& name : standardize) {
    if (given_cols.count(name) != 0) {
      throw ConfigError("column '" + name +
                        "' appears in both csv.standardize and csv.given");
    }
  }
  for (const std::string& name : numeric) {
    NumericColumn column;
    column.name = name;
    if (given_cols.count(name) != 0) {
      const std::vector<double> ms = doc.require_double_array("csv.given." + name);
      if (ms.size() != 2 || ms[1] <= 0.0) {
        throw ConfigError("config key 'csv.given." + name +
                          "' must be [mean, sd] with sd > 0");
      }
      column.standardize = Standardize::given;
      column.mean = ms[0];
      column.sd = ms[1];
    } else if (standardize.count(name) != 0) {
      column.standardize = Standardize::two_pass;
    }
    job.schema.numeric.push_back(std::move(column));
  }
  for (const std::string& name : standardize) {
    bool known = false;
    for (const NumericColumn& column : job.schema.numeric) {
      known = known || column.name == name;
    }
    if (!known) {
      throw ConfigError("csv.standardize lists '" + name +
                        "' which is not in csv.numeric");
    }
  }

  for (const std::string& name : doc.get_string_array("csv.categorical")) {
    CategoricalColumn column;
    column.name = name;
    column.levels = doc.get_string_array("csv.levels." + name);
    if (column.levels.size() < 2) {
      throw ConfigError("config key 'csv.levels." + name +
                        "' must list at least two levels (first = reference)");
    }
    job.schema.categorical.push_back(std::move(column));
  }
  job.schema.interactions = doc.get_string_array("csv.interactions");
  job.batch_size = static_cast<int>(positive_int(doc, "csv.batch_size", 65536));
  // Surface schema problems (duplicate names, bad interaction parents) now.
  job.schema.expanded_names();
  return job;
}

SelectJob load_select_job(const toml::Document& doc, const ConfigOverrides& over) {
  SelectJob job;
  const std::string mode = doc.get_string("select.mode", "synthetic");
  if (mode != "synthetic" && mode != "csv") {
    throw ConfigError("config key 'select.mode' must be 'synthetic' or 'csv'");
  }
  job.synthetic = mode == "synthetic";
  job.config.k_blocks = static_cast<int>(positive_int(doc, "select.k", 20));
  job.config.q_batches = static_cast<int>(positive_int(doc, "select.q", 10));
  job.config.train_blocks =
      static_cast<int>(positive_int(doc, "select.train_blocks", 15));
  job.config.cutoff = doc.get_double("select.cutoff", 0.1);
  job.config.run = load_run_config(doc, over);
  if (job.synthetic) {
    job.synthetic_spec.n = positive_int(doc, "select.n", job.synthetic_spec.n);
    job.synthetic_spec.seed = seed_value(doc, "select.seed", 1, over);
    job.synthetic_spec.gamma =
        doc.get_double("select.gamma", job.synthetic_spec.gamma);
  } else {
    job.config.base = doc.get_string_array("select.base");
    job.config.candidates = doc.get_string_array("select.candidates");
    if (job.config.candidates.empty()) {
      throw ConfigError("config key 'select.candidates' must be non-empty in csv mode");
    }
  }
  return job;
}

void reject_unknown(const toml::Document& doc,
                    std::initializer_list<std::string> sections) {
  for (const std::string& key : doc.unused_keys()) {
    const std::size_t dot = key.find('.');
    const std::string section = dot == std::string::npos ? key : key.substr(0, dot);
    for (const std::string& owned : sections) {
      if (section == owned) {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  }
}

}  // namespace pasa
