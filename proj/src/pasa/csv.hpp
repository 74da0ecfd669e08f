#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "pasa/batch.hpp"
#include "pasa/source.hpp"

namespace pasa {

enum class Standardize { none, two_pass, given };

struct NumericColumn {
  std::string name;
  Standardize standardize = Standardize::none;
  double mean = 0.0;  // used when standardize == given
  double sd = 1.0;
};

// levels[0] is the reference; the remaining levels each get a dummy column
// named "<column>_<level>".
struct CategoricalColumn {
  std::string name;
  std::vector<std::string> levels;
};

// Interactions are written "a*b" (or "a*b*c") over expanded column names.
struct CsvSchema {
  std::string outcome;
  std::vector<NumericColumn> numeric;
  std::vector<CategoricalColumn> categorical;
  std::vector<std::string> interactions;
  bool intercept = true;

  // Expanded design column names: intercept, numerics, dummies, interactions.
  std::vector<std::string> expanded_names() const;
  Eigen::Index width() const;
};

// Streaming reader: header-checked, batch at a time, never the whole file.
// A schema with two-pass standardization triggers one extra scan up front.
class CsvBatchReader {
 public:
  CsvBatchReader(std::string path, CsvSchema schema, std::int64_t batch_size);

  bool next(BatchData& batch);
  void reset();
  // Schema with two-pass standardization resolved to concrete constants.
  const CsvSchema& schema() const { return schema_; }

 private:
  void open();
  bool parse_row(const std::string& line, Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> x,
                 double& y);

  std::string path_;
  CsvSchema schema_;
  std::int64_t batch_size_;
  std::ifstream file_;
  std::int64_t line_no_ = 0;  // 1-based physical line of the last read row

  std::vector<std::size_t> field_of_numeric_;
  std::vector<std::size_t> field_of_categorical_;
  std::size_t field_of_outcome_ = 0;
  std::size_t n_fields_ = 0;
  // Each interaction as indices into the expanded base columns.
  std::vector<std::vector<Eigen::Index>> interaction_parents_;
};

// Materialized expanded design with named columns.
struct DesignTable {
  std::vector<std::string> names;
  Eigen::MatrixXd x;
  Eigen::VectorXd y;

  Eigen::Index column(const std::string& name) const;  // throws if absent
};

DesignTable read_csv_table(const std::string& path, const CsvSchema& schema);

// Writes header `names` + outcome column, rows streamed from the source in
// batch-size slices, full round-trip precision.
void write_csv(const std::string& path, const DataSource& source,
               const std::vector<std::string>& names, const std::string& outcome,
               std::int64_t batch_size = 8192);

}  // namespace pasa
