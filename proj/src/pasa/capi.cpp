#include "pasa/pasa.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pasa/batch.hpp"
#include "pasa/config.hpp"
#include "pasa/csv.hpp"
#include "pasa/errors.hpp"
#include "pasa/metrics.hpp"
#include "pasa/renewable.hpp"
#include "pasa/report.hpp"
#include "pasa/runner.hpp"
#include "pasa/select.hpp"
#include "pasa/serialize.hpp"
#include "pasa/simulate.hpp"

struct pasa_stream {
  pasa::GlmFamily family = pasa::GlmFamily::gaussian();
  pasa::StreamConfig config;
  std::optional<pasa::StreamState> state;
  int p = 0;
};

namespace {

thread_local std::string g_last_error;

pasa_status fail(pasa_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
pasa_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const pasa::Error& e) {
    const pasa_status code = e.kind() == pasa::Error::Kind::numeric
                                 ? PASA_ERR_NUMERIC
                                 : PASA_ERR_CONFIG;
    return fail(code, e.what());
  } catch (const std::exception& e) {
    return fail(PASA_ERR_NUMERIC, std::string("internal error: ") + e.what());
  }
}

pasa_status set_out(char** out, const std::string& text) {
  if (out == nullptr) throw pasa::ConfigError("output pointer is null");
  char* copy = static_cast<char*>(std::malloc(text.size() + 1));
  if (copy == nullptr) throw std::bad_alloc();
  std::memcpy(copy, text.c_str(), text.size() + 1);
  *out = copy;
  return PASA_OK;
}

std::string require_text(const char* value, const char* what) {
  if (value == nullptr) {
    throw pasa::ConfigError(std::string(what) + " must not be null");
  }
  return value;
}

pasa::ConfigOverrides overrides(int64_t seed, int threads) {
  pasa::ConfigOverrides over;
  over.seed = seed;
  over.threads = threads;
  return over;
}

pasa::BatchData make_batch(const pasa_stream& s, const double* x, const double* y,
                           int64_t n_rows) {
  if (x == nullptr || y == nullptr) {
    throw pasa::ConfigError("x and y must not be null");
  }
  if (n_rows < 1) throw pasa::ConfigError("n_rows must be >= 1");
  pasa::BatchData batch;
  using RowMajor =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  batch.x = Eigen::Map<const RowMajor>(x, n_rows, s.p);
  batch.y = Eigen::Map<const Eigen::VectorXd>(y, n_rows);
  pasa::validate_batch(batch, s.family, s.p);
  return batch;
}

}  // namespace

extern "C" {

const char* pasa_version(void) { return "1.0.0"; }

const char* pasa_last_error(void) { return g_last_error.c_str(); }

void pasa_free_string(char* s) { std::free(s); }

pasa_status pasa_stream_new(const char* family, int p, pasa_stream** out) {
  return guarded([&] {
    if (out == nullptr) throw pasa::ConfigError("output pointer is null");
    const std::string name = require_text(family, "family");
    if (p < 1) throw pasa::ConfigError("p must be >= 1");
    auto stream = std::make_unique<pasa_stream>();
    stream->family = pasa::GlmFamily::parse(name);
    stream->p = p;
    *out = stream.release();
    return PASA_OK;
  });
}

pasa_status pasa_stream_update(pasa_stream* s, const double* x, const double* y,
                               int64_t n_rows) {
  return guarded([&] {
    if (s == nullptr) throw pasa::ConfigError("stream handle is null");
    const pasa::BatchData batch = make_batch(*s, x, y, n_rows);
    if (s->state.has_value()) {
      s->state = pasa::renew_update_auto(*s->state, batch, s->config);
    } else {
      s->state = pasa::init_block(s->family, batch, s->config);
    }
    return PASA_OK;
  });
}

pasa_status pasa_stream_beta(const pasa_stream* s, double* out) {
  return guarded([&] {
    if (s == nullptr) throw pasa::ConfigError("stream handle is null");
    if (out == nullptr) throw pasa::ConfigError("output pointer is null");
    if (!s->state.has_value()) {
      throw pasa::ConfigError("no batches consumed yet");
    }
    Eigen::Map<Eigen::VectorXd>(out, s->state->beta.size()) = s->state->beta;
    return PASA_OK;
  });
}

int64_t pasa_stream_rows_seen(const pasa_stream* s) {
  if (s == nullptr || !s->state.has_value()) return 0;
  return s->state->n_seen;
}

pasa_status pasa_stream_summary_json(const pasa_stream* s, int block_id, char** out) {
  return guarded([&] {
    if (s == nullptr) throw pasa::ConfigError("stream handle is null");
    if (!s->state.has_value()) {
      throw pasa::ConfigError("no batches consumed yet");
    }
    const pasa::BlockSummary summary = pasa::finalize_block(*s->state, block_id);
    return set_out(out, pasa::block_summary_to_json(summary).dump());
  });
}

void pasa_stream_free(pasa_stream* s) { delete s; }

pasa_status pasa_combine_json(const char* const* summaries, size_t count,
                              double level, char** out) {
  return guarded([&] {
    if (summaries == nullptr || count == 0) {
      throw pasa::ConfigError("need at least one block summary");
    }
    std::vector<pasa::BlockSummary> blocks;
    blocks.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      blocks.push_back(pasa::block_summary_from_string(
          require_text(summaries[i], "summary JSON")));
    }
    const pasa::PasaEstimate estimate = pasa::combine(std::move(blocks));
    return set_out(out, pasa::estimate_to_json(estimate, level).dump(2) + "\n");
  });
}

pasa_status pasa_combine_dir(const char* dir_path, double level, const char* format,
                             char** out) {
  return guarded([&] {
    namespace fs = std::filesystem;
    const std::string dir = require_text(dir_path, "directory path");
    const pasa::ReportFormat fmt = pasa::parse_format(require_text(format, "format"));
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      throw pasa::IoError("'" + dir + "' is not a directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
    if (files.empty()) {
      throw pasa::ConfigError("no .json block summaries in '" + dir + "'");
    }
    std::sort(files.begin(), files.end());
    std::vector<pasa::BlockSummary> blocks;
    blocks.reserve(files.size());
    for (const fs::path& file : files) {
      std::ifstream in(file);
      if (!in) throw pasa::IoError("cannot read '" + file.string() + "'");
      std::ostringstream text;
      text << in.rdbuf();
      try {
        blocks.push_back(pasa::block_summary_from_string(text.str()));
      } catch (const pasa::Error& e) {
        throw pasa::Error(e.kind(), file.string() + ": " + e.what());
      }
    }
    const pasa::PasaEstimate estimate = pasa::combine(std::move(blocks));
    return set_out(out, pasa::emit_estimate(estimate, level, fmt));
  });
}

pasa_status pasa_simulate_csv(const char* toml_text, int64_t seed_override,
                              const char* out_path) {
  return guarded([&] {
    const pasa::toml::Document doc =
        pasa::toml::parse(require_text(toml_text, "config text"));
    const pasa::SimSpec spec =
        pasa::load_sim_spec(doc, overrides(seed_override, -1));
    pasa::reject_unknown(doc, {"sim"});
    const pasa::SimSource source(spec);
    std::vector<std::string> names;
    for (Eigen::Index j = 0; j < source.cols(); ++j) {
      names.push_back("x" + std::to_string(j + 1));
    }
    pasa::write_csv(require_text(out_path, "output path"), source, names, "y");
    return PASA_OK;
  });
}

pasa_status pasa_fit(const char* toml_text, int64_t seed_override,
                     int threads_override, const char* format, char** out) {
  return guarded([&] {
    const pasa::toml::Document doc =
        pasa::toml::parse(require_text(toml_text, "config text"));
    const pasa::ReportFormat fmt = pasa::parse_format(require_text(format, "format"));
    const pasa::ConfigOverrides over = overrides(seed_override, threads_override);
    const pasa::RunConfig run = pasa::load_run_config(doc, over);
    pasa::PasaEstimate estimate;
    if (doc.has("csv.path")) {
      const pasa::GlmFamily family = pasa::load_family(doc);
      const pasa::CsvJob job = pasa::load_csv_job(doc);
      pasa::reject_unknown(doc, {"run", "stream", "solver", "csv"});
      const pasa::DesignTable table = pasa::read_csv_table(job.path, job.schema);
      const pasa::MemorySource source(table.x, table.y);
      estimate = pasa::run_strategy(family, source, run);
    } else {
      const pasa::SimSpec spec = pasa::load_sim_spec(doc, over);
      pasa::reject_unknown(doc, {"sim", "run", "stream", "solver"});
      const pasa::SimSource source(spec);
      estimate = pasa::run_strategy(spec.family, source, run);
    }
    return set_out(out, pasa::emit_estimate(estimate, run.level, fmt));
  });
}

pasa_status pasa_replicate(const char* toml_text, int64_t seed_override,
                           int threads_override, const char* format, char** out) {
  return guarded([&] {
    const pasa::toml::Document doc =
        pasa::toml::parse(require_text(toml_text, "config text"));
    const pasa::ReportFormat fmt = pasa::parse_format(require_text(format, "format"));
    const pasa::ReplicateConfig config =
        pasa::load_replicate_config(doc, overrides(seed_override, threads_override));
    pasa::reject_unknown(doc, {"sim", "run", "stream", "solver", "replicate"});
    const pasa::ReplicationReport report = pasa::run_replications(config);
    return set_out(out, pasa::emit_reports({report}, fmt));
  });
}

pasa_status pasa_bench(const char* toml_text, int64_t seed_override,
                       int threads_override, const char* format, char** out) {
  return guarded([&] {
    const pasa::toml::Document doc =
        pasa::toml::parse(require_text(toml_text, "config text"));
    const pasa::ReportFormat fmt = pasa::parse_format(require_text(format, "format"));
    const pasa::BenchConfig config =
        pasa::load_bench_config(doc, overrides(seed_override, threads_override));
    pasa::reject_unknown(doc, {"sim", "run", "stream", "solver", "bench"});
    const std::vector<pasa::BenchResult> results = pasa::run_bench(config);
    return set_out(out, pasa::emit_bench(results, fmt));
  });
}

pasa_status pasa_select(const char* toml_text, int64_t seed_override,
                        int threads_override, const char* format, char** out) {
  return guarded([&] {
    const pasa::toml::Document doc =
        pasa::toml::parse(require_text(toml_text, "config text"));
    const pasa::ReportFormat fmt = pasa::parse_format(require_text(format, "format"));
    pasa::SelectJob job =
        pasa::load_select_job(doc, overrides(seed_override, threads_override));
    pasa::SelectionTrace trace;
    if (job.synthetic) {
      pasa::reject_unknown(doc, {"run", "stream", "solver", "select"});
      const pasa::SelectProblem problem = pasa::make_select_problem(job.synthetic_spec);
      job.config.base = problem.base;
      job.config.candidates = problem.candidates;
      trace = pasa::forward_select(problem.table, job.config);
    } else {
      const pasa::CsvJob csv = pasa::load_csv_job(doc);
      pasa::reject_unknown(doc, {"run", "stream", "solver", "select", "csv"});
      const pasa::DesignTable table = pasa::read_csv_table(csv.path, csv.schema);
      trace = pasa::forward_select(table, job.config);
    }
    return set_out(out, pasa::emit_trace(trace, fmt));
  });
}

pasa_status pasa_auc(const double* scores, const double* labels, int64_t n,
                     double* out) {
  return guarded([&] {
    if (scores == nullptr || labels == nullptr || out == nullptr) {
      throw pasa::ConfigError("scores, labels and out must not be null");
    }
    if (n < 1) throw pasa::ConfigError("n must be >= 1");
    std::vector<double> s(scores, scores + n);
    std::vector<int> l(static_cast<std::size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
      if (labels[i] != 0.0 && labels[i] != 1.0) {
        throw pasa::ConfigError("labels must be 0 or 1");
      }
      l[static_cast<std::size_t>(i)] = labels[i] == 1.0 ? 1 : 0;
    }
    *out = pasa::auc(s, l);
    return PASA_OK;
  });
}

}  // extern "C"
