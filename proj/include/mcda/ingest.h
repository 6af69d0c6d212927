#ifndef MCDA_INGEST_H_
#define MCDA_INGEST_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcda/hybrid.h"
#include "mcda/numeric.h"

namespace mcda {

// Raw text table: header plus rows of cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row

  // Throws SchemaError when the column is missing.
  std::size_t Column(const std::string& name) const;
};

// RFC 4180 style: quoted cells may contain the delimiter, doubled quotes and
// newlines. Throws ParseError on ragged rows or unterminated quotes.
CsvTable ParseCsv(const std::string& text, char delimiter = ',');
CsvTable ReadCsv(const std::string& path, char delimiter = ',');

enum class AttributeKind { kNumeric, kBinary, kCategorical };

// One source column as declared in a schema file.
struct ColumnSpec {
  std::string column;
  AttributeKind kind = AttributeKind::kNumeric;
  // numeric: optional text -> number map (ordinal codes) and fixed bounds.
  std::map<std::string, double> value_map;
  std::optional<std::pair<double, double>> bounds;
  // binary: text of the 1 value; every other value listed in `negative` is 0.
  std::string positive = "1";
  std::string negative = "0";
  // categorical: all levels; one indicator per level except `reference`.
  std::vector<std::string> levels;
  std::string reference;
};

struct DatasetSchema {
  char delimiter = ',';
  std::vector<ColumnSpec> columns;
  // Supervision: a binary label column, or a score column from which ranking
  // pairs are built.
  std::string label_column;
  std::string label_positive = "1";
  std::string score_column;
  // Rows whose cell in the given column equals one of the listed values are
  // skipped before encoding.
  std::map<std::string, std::vector<std::string>> drop_values;
  // Encoded attribute names fed to the linear component; empty means all.
  std::vector<std::string> linear;

  bool is_ranking() const { return !score_column.empty(); }

  static DatasetSchema FromJson(const nlohmann::json& j);
  static DatasetSchema Load(const std::string& path);
  nlohmann::json ToJson() const;
};

// One encoded attribute (a numeric column, a binary column or one indicator
// of a categorical column).
struct EncodedAttribute {
  std::string name;
  std::string source;
  AttributeKind kind = AttributeKind::kNumeric;
  double lo = 0.0;  // raw value mapped to 0
  double hi = 1.0;  // raw value mapped to 1
};

struct TabularDataset {
  Matrix values;                  // rows x attributes, each in [0, 1]
  std::vector<double> targets;    // labels in {0, 1}, or scores for ranking
  bool ranking = false;
  std::vector<EncodedAttribute> attributes;
  std::vector<std::string> warnings;
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;

  std::vector<std::string> names() const;
  std::size_t num_numeric() const;
  // FNV-1a over names, values and targets; hex.
  std::string Hash() const;
};

// Encodes a parsed table: drops rows, maps text to numbers, expands
// categoricals, min-max normalizes numerics (constant columns become zero
// with a warning). Errors name the row and column.
TabularDataset EncodeTable(const CsvTable& table, const DatasetSchema& schema);
TabularDataset LoadDataset(const std::string& path, const DatasetSchema& schema);

struct AttributePartition {
  std::vector<std::size_t> linear_attrs;
  std::vector<std::size_t> all_attrs;
};

// Throws ConfigError on an empty list and SchemaError on unknown names.
AttributePartition PartitionAttributes(const std::vector<std::string>& names,
                                       const std::vector<std::string>& linear);

// Model layout for a dataset: numeric attributes get `degree`, binary ones
// degree 1, in both components.
ModelSpec ModelSpecFor(const TabularDataset& data, const std::vector<std::string>& linear,
                       int degree);

// Raw-unit value of a normalized coordinate.
double Denormalize(double x, const EncodedAttribute& attribute);
std::vector<double> Denormalize(const std::vector<double>& xs, const EncodedAttribute& attribute);

}  // namespace mcda

#endif  // MCDA_INGEST_H_
