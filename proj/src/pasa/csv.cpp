#include "pasa/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "pasa/errors.hpp"

namespace pasa {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') {
    out.back().pop_back();
  }
  return out;
}

double parse_double(const std::string& cell, std::int64_t line_no,
                    const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || cell.empty()) {
    throw IoError("line " + std::to_string(line_no) + ", column '" + column +
                  "': cannot parse '" + cell + "' as a number");
  }
  return value;
}

std::vector<std::string> split_interaction(const std::string& term) {
  std::vector<std::string> parents;
  std::size_t start = 0;
  for (;;) {
    const std::size_t star = term.find('*', start);
    if (star == std::string::npos) {
      parents.push_back(term.substr(start));
      break;
    }
    parents.push_back(term.substr(start, star - start));
    start = star + 1;
  }
  if (parents.size() < 2) {
    throw ConfigError("interaction '" + term + "' needs at least two factors");
  }
  return parents;
}

}  // namespace

std::vector<std::string> CsvSchema::expanded_names() const {
  std::vector<std::string> names;
  if (intercept) names.push_back("(intercept)");
  for (const NumericColumn& col : numeric) names.push_back(col.name);
  for (const CategoricalColumn& col : categorical) {
    if (col.levels.size() < 2) {
      throw ConfigError("categorical column '" + col.name +
                        "' needs at least two levels");
    }
    for (std::size_t level = 1; level < col.levels.size(); ++level) {
      names.push_back(col.name + "_" + col.levels[level]);
    }
  }
  std::unordered_set<std::string> base_names(names.begin(), names.end());
  for (const std::string& term : interactions) {
    for (const std::string& parent : split_interaction(term)) {
      if (parent == "(intercept)") {
        throw ConfigError("interaction '" + term + "' may not use the intercept");
      }
      if (base_names.count(parent) == 0) {
        throw ConfigError("interaction '" + term + "' references unknown column '" +
                          parent + "'");
      }
    }
    names.push_back(term);
  }

  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw ConfigError("duplicate expanded column name '" + *dup + "'");
  }
  return names;
}

Eigen::Index CsvSchema::width() const {
  return static_cast<Eigen::Index>(expanded_names().size());
}

CsvBatchReader::CsvBatchReader(std::string path, CsvSchema schema,
                               std::int64_t batch_size)
    : path_(std::move(path)), schema_(std::move(schema)), batch_size_(batch_size) {
  if (batch_size_ < 1) throw ConfigError("batch size must be >= 1");
  if (schema_.outcome.empty()) throw ConfigError("schema needs an outcome column");

  // Map interaction parents onto the expanded base columns they multiply.
  std::vector<std::string> base_names;
  CsvSchema base = schema_;
  base.interactions.clear();
  base_names = base.expanded_names();
  std::unordered_map<std::string, Eigen::Index> base_index;
  for (std::size_t i = 0; i < base_names.size(); ++i) {
    base_index.emplace(base_names[i], static_cast<Eigen::Index>(i));
  }
  for (const std::string& term : schema_.interactions) {
    std::vector<Eigen::Index> parents;
    for (const std::string& parent : split_interaction(term)) {
      if (parent == "(intercept)") {
        throw ConfigError("interaction '" + term + "' may not use the intercept");
      }
      const auto it = base_index.find(parent);
      if (it == base_index.end()) {
        throw ConfigError("interaction '" + term + "' references unknown column '" +
                          parent + "'");
      }
      parents.push_back(it->second);
    }
    interaction_parents_.push_back(std::move(parents));
  }

  open();

  bool needs_first_pass = false;
  for (const NumericColumn& col : schema_.numeric) {
    if (col.standardize == Standardize::two_pass) needs_first_pass = true;
    if (col.standardize == Standardize::given && !(col.sd > 0.0)) {
      throw ConfigError("column '" + col.name + "' has non-positive sd");
    }
  }
  if (needs_first_pass) {
    // Welford pass over the standardized columns only.
    std::vector<std::int64_t> count(schema_.numeric.size(), 0);
    std::vector<double> mean(schema_.numeric.size(), 0.0);
    std::vector<double> m2(schema_.numeric.size(), 0.0);
    std::string line;
    std::int64_t line_no = 1;
    while (std::getline(file_, line)) {
      ++line_no;
      if (line.empty()) continue;
      const std::vector<std::string> fields = split_fields(line);
      if (fields.size() != n_fields_) {
        throw IoError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(n_fields_) + " fields, found " +
                      std::to_string(fields.size()));
      }
      for (std::size_t c = 0; c < schema_.numeric.size(); ++c) {
        if (schema_.numeric[c].standardize != Standardize::two_pass) continue;
        const double v =
            parse_double(fields[field_of_numeric_[c]], line_no, schema_.numeric[c].name);
        ++count[c];
        const double delta = v - mean[c];
        mean[c] += delta / static_cast<double>(count[c]);
        m2[c] += delta * (v - mean[c]);
      }
    }
    for (std::size_t c = 0; c < schema_.numeric.size(); ++c) {
      NumericColumn& col = schema_.numeric[c];
      if (col.standardize != Standardize::two_pass) continue;
      if (count[c] < 2) {
        throw IoError("column '" + col.name + "': too few rows to standardize");
      }
      const double sd = std::sqrt(m2[c] / static_cast<double>(count[c] - 1));
      if (!(sd > 0.0)) {
        throw IoError("column '" + col.name + "': zero variance, cannot standardize");
      }
      col.standardize = Standardize::given;
      col.mean = mean[c];
      col.sd = sd;
    }
    open();
  }
}

void CsvBatchReader::open() {
  file_ = std::ifstream(path_);
  if (!file_) throw IoError("cannot open '" + path_ + "'");
  std::string header;
  if (!std::getline(file_, header)) throw IoError("'" + path_ + "' is empty");
  line_no_ = 1;

  const std::vector<std::string> fields = split_fields(header);
  n_fields_ = fields.size();
  std::unordered_map<std::string, std::size_t> field_index;
  for (std::size_t i = 0; i < fields.size(); ++i) field_index.emplace(fields[i], i);

  const auto locate = [&](const std::string& name) {
    const auto it = field_index.find(name);
    if (it == field_index.end()) {
      throw IoError("'" + path_ + "' has no column '" + name + "'");
    }
    return it->second;
  };
  field_of_outcome_ = locate(schema_.outcome);
  field_of_numeric_.clear();
  for (const NumericColumn& col : schema_.numeric) {
    field_of_numeric_.push_back(locate(col.name));
  }
  field_of_categorical_.clear();
  for (const CategoricalColumn& col : schema_.categorical) {
    field_of_categorical_.push_back(locate(col.name));
  }
}

void CsvBatchReader::reset() { open(); }

bool CsvBatchReader::parse_row(const std::string& line,
                               Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> x, double& y) {
  if (line.empty()) return false;
  const std::vector<std::string> fields = split_fields(line);
  if (fields.size() != n_fields_) {
    throw IoError("line " + std::to_string(line_no_) + ": expected " +
                  std::to_string(n_fields_) + " fields, found " +
                  std::to_string(fields.size()));
  }
  y = parse_double(fields[field_of_outcome_], line_no_, schema_.outcome);

  Eigen::Index j = 0;
  if (schema_.intercept) x[j++] = 1.0;
  for (std::size_t c = 0; c < schema_.numeric.size(); ++c) {
    const NumericColumn& col = schema_.numeric[c];
    double v = parse_double(fields[field_of_numeric_[c]], line_no_, col.name);
    if (col.standardize == Standardize::given) v = (v - col.mean) / col.sd;
    x[j++] = v;
  }
  for (std::size_t c = 0; c < schema_.categorical.size(); ++c) {
    const CategoricalColumn& col = schema_.categorical[c];
    const std::string& cell = fields[field_of_categorical_[c]];
    const auto it = std::find(col.levels.begin(), col.levels.end(), cell);
    if (it == col.levels.end()) {
      throw IoError("line " + std::to_string(line_no_) + ", column '" + col.name +
                    "': unknown level '" + cell + "'");
    }
    const std::size_t level = static_cast<std::size_t>(it - col.levels.begin());
    for (std::size_t l = 1; l < col.levels.size(); ++l) {
      x[j++] = level == l ? 1.0 : 0.0;
    }
  }
  for (const std::vector<Eigen::Index>& parents : interaction_parents_) {
    double prod = 1.0;
    for (Eigen::Index parent : parents) prod *= x[parent];
    x[j++] = prod;
  }
  return true;
}

bool CsvBatchReader::next(BatchData& batch) {
  const Eigen::Index width = schema_.width();
  batch.x.resize(batch_size_, width);
  batch.y.resize(batch_size_);
  Eigen::Index filled = 0;
  std::string line;
  while (filled < batch_size_ && std::getline(file_, line)) {
    ++line_no_;
    if (line.empty()) continue;
    if (parse_row(line, batch.x.row(filled), batch.y[filled])) ++filled;
  }
  if (filled == 0) return false;
  batch.x.conservativeResize(filled, width);
  batch.y.conservativeResize(filled);
  return true;
}

Eigen::Index DesignTable::column(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ConfigError("no design column named '" + name + "'");
  return static_cast<Eigen::Index>(it - names.begin());
}

DesignTable read_csv_table(const std::string& path, const CsvSchema& schema) {
  CsvBatchReader reader(path, schema, 65536);
  std::vector<BatchData> batches;
  Eigen::Index total = 0;
  BatchData batch;
  while (reader.next(batch)) {
    total += batch.rows();
    batches.push_back(std::move(batch));
    batch = BatchData{};
  }
  DesignTable table;
  table.names = schema.expanded_names();
  table.x.resize(total, schema.width());
  table.y.resize(total);
  Eigen::Index at = 0;
  for (const BatchData& b : batches) {
    table.x.middleRows(at, b.rows()) = b.x;
    table.y.segment(at, b.rows()) = b.y;
    at += b.rows();
  }
  return table;
}

void write_csv(const std::string& path, const DataSource& source,
               const std::vector<std::string>& names, const std::string& outcome,
               std::int64_t batch_size) {
  if (static_cast<Eigen::Index>(names.size()) != source.cols()) {
    throw ConfigError("column name count does not match the source width");
  }
  const bool to_stdout = path == "-";
  std::FILE* out = to_stdout ? stdout : std::fopen(path.c_str(), "w");
  if (!out) throw IoError("cannot write '" + path + "'");

  std::string header;
  for (const std::string& name : names) {
    header += name;
    header += ',';
  }
  header += outcome;
  header += '\n';
  std::fputs(header.c_str(), out);

  char cell[64];
  std::vector<std::int64_t> ids;
  for (std::int64_t start = 0; start < source.rows(); start += batch_size) {
    const std::int64_t take = std::min(batch_size, source.rows() - start);
    ids.resize(static_cast<std::size_t>(take));
    for (std::int64_t i = 0; i < take; ++i) ids[static_cast<std::size_t>(i)] = start + i;
    const BatchData batch = source.gather(ids);
    for (Eigen::Index r = 0; r < batch.rows(); ++r) {
      for (Eigen::Index c = 0; c < batch.cols(); ++c) {
        std::snprintf(cell, sizeof(cell), "%.17g,", batch.x(r, c));
        std::fputs(cell, out);
      }
      std::snprintf(cell, sizeof(cell), "%.17g\n", batch.y[r]);
      std::fputs(cell, out);
    }
  }
  if (to_stdout) {
    if (std::fflush(out) != 0) throw IoError("failed to flush stdout");
  } else if (std::fclose(out) != 0) {
    throw IoError("failed to flush '" + path + "'");
  }
}

}  // namespace pasa
