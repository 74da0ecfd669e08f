#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>

#include "pasa/csv.hpp"
#include "pasa/replicate.hpp"
#include "pasa/runner.hpp"
#include "pasa/select.hpp"
#include "pasa/simulate.hpp"
#include "pasa/toml.hpp"

namespace pasa {

// Command-line overrides applied on top of the config file (negative = unset).
struct ConfigOverrides {
  std::int64_t seed = -1;
  int threads = -1;
};

// Loaders for the TOML sections. Each consumes its keys from the document;
// call reject_unknown afterwards with the sections the command recognises so
// misspelled keys fail loudly while unrelated sections stay usable.
GlmFamily load_family(const toml::Document& doc);
SimSpec load_sim_spec(const toml::Document& doc, const ConfigOverrides& over = {});
StreamConfig load_stream_config(const toml::Document& doc);
RunConfig load_run_config(const toml::Document& doc, const ConfigOverrides& over = {});
ReplicateConfig load_replicate_config(const toml::Document& doc,
                                      const ConfigOverrides& over = {});
BenchConfig load_bench_config(const toml::Document& doc,
                              const ConfigOverrides& over = {});

// [csv] section: on-disk table plus its design-matrix schema.
struct CsvJob {
  std::string path;
  CsvSchema schema;
  int batch_size = 65536;
};
CsvJob load_csv_job(const toml::Document& doc);

// [select] section: synthetic planted-interaction benchmark or user CSV terms.
struct SelectJob {
  bool synthetic = true;
  SyntheticSelectSpec synthetic_spec;
  SelectConfig config;  // base/candidates empty in synthetic mode (problem fills them)
};
SelectJob load_select_job(const toml::Document& doc, const ConfigOverrides& over = {});

// "strategy", "strategy:K" or "strategy:KxQ".
BenchCell parse_bench_cell(const std::string& text);

void reject_unknown(const toml::Document& doc,
                    std::initializer_list<std::string> sections);

}  // namespace pasa
