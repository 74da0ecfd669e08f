#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pasa/combiner.hpp"
#include "pasa/replicate.hpp"
#include "pasa/select.hpp"

namespace pasa {

enum class ReportFormat { json, csv, table };

ReportFormat parse_format(std::string_view name);

// Render Monte-Carlo cells with the usual column labels
// (A.bias, ASE, ESE, CP, C.Time(s), R.Time(s)).
std::string emit_reports(const std::vector<ReplicationReport>& reports,
                         ReportFormat format);
std::string emit_estimate(const PasaEstimate& estimate, double level,
                          ReportFormat format);
std::string emit_bench(const std::vector<BenchResult>& results, ReportFormat format);
std::string emit_trace(const SelectionTrace& trace, ReportFormat format);

}  // namespace pasa
