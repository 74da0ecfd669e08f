#include "pasa/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "pasa/errors.hpp"
#include "pasa/serialize.hpp"

namespace pasa {
namespace {

std::string format_value(const char* spec, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), spec, value);
  return buffer;
}

// Left-pads cells so columns line up under their headers.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> headers) : widths_(headers.size()) {
    add_row(std::move(headers));
  }

  void add_row(std::vector<std::string> cells) {
    for (std::size_t i = 0; i < cells.size() && i < widths_.size(); ++i) {
      widths_[i] = std::max(widths_[i], cells[i].size());
    }
    rows_.push_back(std::move(cells));
  }

  std::string render() const {
    std::ostringstream out;
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out << "  ";
        out << std::string(widths_[i] - row[i].size(), ' ') << row[i];
      }
      out << '\n';
    }
    return out.str();
  }

 private:
  std::vector<std::size_t> widths_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += cells[i];
  }
  out.push_back('\n');
  return out;
}

}  // namespace

ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  if (name == "table") return ReportFormat::table;
  throw ConfigError("unknown format '" + std::string(name) +
                    "' (expected json, csv or table)");
}

std::string emit_reports(const std::vector<ReplicationReport>& reports,
                         ReportFormat format) {
  if (format == ReportFormat::json) {
    Json out = Json::array();
    for (const ReplicationReport& report : reports) {
      out.push_back(report_to_json(report));
    }
    return out.dump(2) + "\n";
  }
  const std::vector<std::string> headers = {
      "family", "strategy", "K",  "Q",          "N",          "reps",
      "A.bias", "ASE",      "ESE", "CP",        "C.Time(s)",  "R.Time(s)"};
  std::vector<std::vector<std::string>> rows;
  for (const ReplicationReport& r : reports) {
    rows.push_back({r.family, r.strategy, std::to_string(r.k_blocks),
                    std::to_string(r.q_batches), std::to_string(r.n),
                    std::to_string(r.reps), format_value("%.4e", r.a_bias),
                    format_value("%.4e", r.ase), format_value("%.4e", r.ese),
                    format_value("%.4f", r.cp), format_value("%.4f", r.c_time_s),
                    format_value("%.4f", r.r_time_s)});
  }
  if (format == ReportFormat::csv) {
    std::string out = csv_line(headers);
    for (const auto& row : rows) out += csv_line(row);
    return out;
  }
  TextTable table(headers);
  for (auto& row : rows) table.add_row(std::move(row));
  return table.render();
}

std::string emit_estimate(const PasaEstimate& estimate, double level,
                          ReportFormat format) {
  if (format == ReportFormat::json) {
    return estimate_to_json(estimate, level).dump(2) + "\n";
  }
  const std::vector<WaldInterval> intervals = wald_intervals(estimate, level);
  const std::vector<std::string> headers = {"coef", "estimate", "se", "lower", "upper"};
  std::vector<std::vector<std::string>> rows;
  for (Eigen::Index j = 0; j < estimate.beta.size(); ++j) {
    const WaldInterval& w = intervals[static_cast<std::size_t>(j)];
    rows.push_back({"b" + std::to_string(j), format_value("%.8g", estimate.beta[j]),
                    format_value("%.8g", w.se), format_value("%.8g", w.lower),
                    format_value("%.8g", w.upper)});
  }
  if (format == ReportFormat::csv) {
    std::string out = csv_line(headers);
    for (const auto& row : rows) out += csv_line(row);
    return out;
  }
  TextTable table(headers);
  for (auto& row : rows) table.add_row(std::move(row));
  std::string out = table.render();
  out += "n=" + std::to_string(estimate.total_n) +
         " K=" + std::to_string(estimate.k_blocks) +
         " c_time=" + format_value("%.4f", estimate.timing.c_time_s) +
         "s r_time=" + format_value("%.4f", estimate.timing.r_time_s) + "s\n";
  return out;
}

std::string emit_bench(const std::vector<BenchResult>& results, ReportFormat format) {
  if (format == ReportFormat::json) {
    return bench_results_to_json(results).dump(2) + "\n";
  }
  const std::vector<std::string> headers = {"family", "strategy",  "K",         "Q",
                                            "N",      "runs",      "C.Time(s)", "R.Time(s)"};
  std::vector<std::vector<std::string>> rows;
  for (const BenchResult& r : results) {
    rows.push_back({r.family, r.strategy, std::to_string(r.k_blocks),
                    std::to_string(r.q_batches), std::to_string(r.n),
                    std::to_string(r.runs), format_value("%.4f", r.c_time_s),
                    format_value("%.4f", r.r_time_s)});
  }
  if (format == ReportFormat::csv) {
    std::string out = csv_line(headers);
    for (const auto& row : rows) out += csv_line(row);
    return out;
  }
  TextTable table(headers);
  for (auto& row : rows) table.add_row(std::move(row));
  return table.render();
}

std::string emit_trace(const SelectionTrace& trace, ReportFormat format) {
  if (format == ReportFormat::json) {
    return trace_to_json(trace).dump(2) + "\n";
  }
  if (format == ReportFormat::csv) {
    std::string out = csv_line({"step", "term", "auc"});
    out += csv_line({"0", "(base)", format_value("%.6f", trace.base_auc)});
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      out += csv_line({std::to_string(i + 1), trace.steps[i].term,
                       format_value("%.6f", trace.steps[i].auc)});
    }
    return out;
  }
  std::ostringstream out;
  out << "base AUC: " << format_value("%.6f", trace.base_auc) << '\n';
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    out << "step " << i + 1 << ": +" << trace.steps[i].term << "  AUC "
        << format_value("%.6f", trace.steps[i].auc) << '\n';
  }
  out << "final terms:";
  for (const std::string& term : trace.final_terms) out << ' ' << term;
  out << '\n';
  out << "final AUC: " << format_value("%.6f", trace.final_auc) << "  (evaluated "
      << trace.models_evaluated << " models";
  if (!trace.removed.empty()) {
    out << ", removed";
    for (const std::string& term : trace.removed) out << ' ' << term;
  }
  out << ")\n";
  out << "confusion at cutoff: fn=" << trace.final_fn << " fp=" << trace.final_fp
      << "  time " << format_value("%.2f", trace.total_time_s) << "s\n";
  return out.str();
}

}  // namespace pasa
