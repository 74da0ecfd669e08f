#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pasa/pasa.h"

namespace {

int emit(pasa_status status, char* out) {
  if (out != nullptr) {
    std::fputs(out, stdout);
    pasa_free_string(out);
  }
  if (status != PASA_OK) {
    std::cerr << "pasa: " << pasa_last_error() << '\n';
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PASA: parallel-and-stream accelerated estimation for GLMs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pasa_version());

  std::string config_path;
  std::int64_t seed = -1;
  int threads = -1;
  std::string format = "table";
  app.add_option("--config", config_path, "TOML configuration file")
      ->type_name("FILE");
  app.add_option("--seed", seed, "override every seed in the config");
  app.add_option("--threads", threads, "override the worker thread count");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  CLI::App* simulate =
      app.add_subcommand("simulate", "write a simulated data set as CSV");
  std::string out_path = "-";
  simulate->add_option("--out", out_path, "output CSV path ('-' = stdout)");

  CLI::App* fit =
      app.add_subcommand("fit", "one estimation run on simulated or CSV data");

  CLI::App* combine =
      app.add_subcommand("combine", "fuse a directory of block-summary JSON files");
  std::string dir;
  double level = 0.95;
  combine->add_option("--dir", dir, "directory holding BlockSummary .json files")
      ->required();
  combine->add_option("--level", level, "confidence level for the intervals");

  CLI::App* replicate =
      app.add_subcommand("replicate", "Monte-Carlo replication metrics");
  CLI::App* bench =
      app.add_subcommand("bench", "timing comparison across strategies");
  CLI::App* select =
      app.add_subcommand("select", "forward AUC-driven term selection");

  for (CLI::App* sub : {simulate, fit, combine, replicate, bench, select}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return PASA_ERR_CONFIG;
  }

  std::string config_text;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "pasa: cannot open config file: " << config_path << '\n';
      return PASA_ERR_CONFIG;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    config_text = buffer.str();
  }

  char* out = nullptr;
  pasa_status status = PASA_OK;
  if (simulate->parsed()) {
    status = pasa_simulate_csv(config_text.c_str(), seed, out_path.c_str());
  } else if (fit->parsed()) {
    status = pasa_fit(config_text.c_str(), seed, threads, format.c_str(), &out);
  } else if (combine->parsed()) {
    status = pasa_combine_dir(dir.c_str(), level, format.c_str(), &out);
  } else if (replicate->parsed()) {
    status = pasa_replicate(config_text.c_str(), seed, threads, format.c_str(), &out);
  } else if (bench->parsed()) {
    status = pasa_bench(config_text.c_str(), seed, threads, format.c_str(), &out);
  } else {
    status = pasa_select(config_text.c_str(), seed, threads, format.c_str(), &out);
  }
  return emit(status, out);
}
