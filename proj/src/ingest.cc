#include "mcda/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "mcda/errors.h"

namespace mcda {

std::size_t CsvTable::Column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw SchemaError("column '" + name + "' not found in header");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable ParseCsv(const std::string& text, char delimiter) {
  CsvTable table;
  std::vector<std::string> record;
  std::string cell;
  bool in_quotes = false;
  bool cell_started = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_record = [&] {
    record.push_back(std::move(cell));
    cell.clear();
    const bool blank = record.size() == 1 && record[0].empty() && !cell_started;
    if (!blank) {
      if (table.header.empty()) {
        table.header = std::move(record);
      } else {
        if (record.size() != table.header.size()) {
          throw ParseError("line " + std::to_string(record_line) + ": expected " +
                           std::to_string(table.header.size()) + " cells, found " +
                           std::to_string(record.size()));
        }
        table.rows.push_back(std::move(record));
        table.line_numbers.push_back(record_line);
      }
    }
    record.clear();
    cell_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      cell_started = true;
    } else if (c == delimiter) {
      record.push_back(std::move(cell));
      cell.clear();
      cell_started = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
      ++line;
      record_line = line;
    } else {
      cell += c;
      cell_started = true;
    }
  }
  if (in_quotes) throw ParseError("line " + std::to_string(record_line) + ": unterminated quote");
  if (cell_started || !record.empty()) end_record();
  if (table.header.empty()) throw ParseError("file has no header row");
  return table;
}

CsvTable ReadCsv(const std::string& path, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseCsv(buffer.str(), delimiter);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace {

std::string_view KindName(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::kNumeric:
      return "numeric";
    case AttributeKind::kBinary:
      return "binary";
    case AttributeKind::kCategorical:
      return "categorical";
  }
  return "unknown";
}

AttributeKind ParseKind(const std::string& name) {
  if (name == "numeric") return AttributeKind::kNumeric;
  if (name == "binary") return AttributeKind::kBinary;
  if (name == "categorical") return AttributeKind::kCategorical;
  throw ParseError("unknown attribute kind '" + name + "'");
}

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::optional<double> ParseNumber(const std::string& text) {
  const std::string t = Trim(text);
  if (t.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string Where(const CsvTable& table, std::size_t row, const std::string& column) {
  return "line " + std::to_string(table.line_numbers[row]) + ", column '" + column + "'";
}

}  // namespace

DatasetSchema DatasetSchema::FromJson(const nlohmann::json& j) {
  try {
    DatasetSchema schema;
    const std::string delimiter = j.value("delimiter", std::string(","));
    if (delimiter.size() != 1) throw ParseError("delimiter must be a single character");
    schema.delimiter = delimiter[0];
    for (const auto& c : j.at("attributes")) {
      ColumnSpec spec;
      spec.column = c.at("column").get<std::string>();
      spec.kind = ParseKind(c.value("kind", std::string("numeric")));
      if (c.contains("value_map")) {
        spec.value_map = c.at("value_map").get<std::map<std::string, double>>();
      }
      if (c.contains("bounds")) {
        const auto b = c.at("bounds").get<std::vector<double>>();
        if (b.size() != 2 || !(b[0] <= b[1])) {
          throw ParseError("bounds of '" + spec.column + "' must be [lo, hi] with lo <= hi");
        }
        spec.bounds = std::make_pair(b[0], b[1]);
      }
      spec.positive = c.value("positive", std::string("1"));
      spec.negative = c.value("negative", std::string("0"));
      if (spec.kind == AttributeKind::kCategorical) {
        spec.levels = c.at("levels").get<std::vector<std::string>>();
        if (spec.levels.size() < 2) {
          throw ParseError("categorical '" + spec.column + "' needs at least two levels");
        }
        spec.reference = c.value("reference", spec.levels.front());
        if (std::find(spec.levels.begin(), spec.levels.end(), spec.reference) ==
            spec.levels.end()) {
          throw ParseError("reference level of '" + spec.column + "' is not a listed level");
        }
      }
      schema.columns.push_back(std::move(spec));
    }
    if (j.contains("label")) {
      schema.label_column = j.at("label").at("column").get<std::string>();
      schema.label_positive = j.at("label").value("positive", std::string("1"));
    }
    schema.score_column = j.value("score", std::string());
    if (schema.label_column.empty() == schema.score_column.empty()) {
      throw ParseError("schema must declare exactly one of 'label' or 'score'");
    }
    if (j.contains("drop_values")) {
      schema.drop_values =
          j.at("drop_values").get<std::map<std::string, std::vector<std::string>>>();
    }
    if (j.contains("linear")) schema.linear = j.at("linear").get<std::vector<std::string>>();
    return schema;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed schema: ") + e.what());
  }
}

DatasetSchema DatasetSchema::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open schema '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return FromJson(j);
}

nlohmann::json DatasetSchema::ToJson() const {
  nlohmann::json j;
  j["delimiter"] = std::string(1, delimiter);
  j["attributes"] = nlohmann::json::array();
  for (const ColumnSpec& c : columns) {
    nlohmann::json col = {{"column", c.column}, {"kind", KindName(c.kind)}};
    if (!c.value_map.empty()) col["value_map"] = c.value_map;
    if (c.bounds) col["bounds"] = {c.bounds->first, c.bounds->second};
    if (c.kind == AttributeKind::kBinary) {
      col["positive"] = c.positive;
      col["negative"] = c.negative;
    }
    if (c.kind == AttributeKind::kCategorical) {
      col["levels"] = c.levels;
      col["reference"] = c.reference;
    }
    j["attributes"].push_back(std::move(col));
  }
  if (!label_column.empty()) j["label"] = {{"column", label_column}, {"positive", label_positive}};
  if (!score_column.empty()) j["score"] = score_column;
  if (!drop_values.empty()) j["drop_values"] = drop_values;
  if (!linear.empty()) j["linear"] = linear;
  return j;
}

std::vector<std::string> TabularDataset::names() const {
  std::vector<std::string> out;
  for (const EncodedAttribute& a : attributes) out.push_back(a.name);
  return out;
}

std::size_t TabularDataset::num_numeric() const {
  return static_cast<std::size_t>(
      std::count_if(attributes.begin(), attributes.end(),
                    [](const EncodedAttribute& a) { return a.kind == AttributeKind::kNumeric; }));
}

std::string TabularDataset::Hash() const {
  std::uint64_t h = kFnvOffset;
  for (const EncodedAttribute& a : attributes) h = Fnv1a(a.name.data(), a.name.size() + 1, h);
  h = Fnv1a(values.data().data(), values.data().size() * sizeof(double), h);
  h = Fnv1a(targets.data(), targets.size() * sizeof(double), h);
  return Hex64(h);
}

TabularDataset EncodeTable(const CsvTable& table, const DatasetSchema& schema) {
  TabularDataset data;
  data.ranking = schema.is_ranking();
  data.rows_read = table.rows.size();

  std::vector<std::pair<std::size_t, std::set<std::string>>> drops;
  for (const auto& [column, values] : schema.drop_values) {
    drops.emplace_back(table.Column(column), std::set<std::string>(values.begin(), values.end()));
  }
  std::vector<std::size_t> kept;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    bool drop = false;
    for (const auto& [col, values] : drops) drop = drop || values.count(table.rows[r][col]) > 0;
    if (!drop) kept.push_back(r);
  }
  data.rows_dropped = table.rows.size() - kept.size();
  if (kept.empty()) throw SchemaError("no rows left after dropping excluded values");

  // Raw (unnormalized) encoded columns.
  std::vector<std::vector<double>> raw;
  for (const ColumnSpec& spec : schema.columns) {
    const std::size_t col = table.Column(spec.column);
    switch (spec.kind) {
      case AttributeKind::kNumeric: {
        std::vector<double> v(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) {
          const std::string& cell = table.rows[kept[i]][col];
          const auto mapped = spec.value_map.find(Trim(cell));
          if (mapped != spec.value_map.end()) {
            v[i] = mapped->second;
            continue;
          }
          const auto number = ParseNumber(cell);
          if (!number) {
            throw ParseError(Where(table, kept[i], spec.column) +
                             (Trim(cell).empty() ? ": missing numeric value"
                                                 : ": cannot parse '" + cell + "' as a number"));
          }
          v[i] = *number;
        }
        double lo = *std::min_element(v.begin(), v.end());
        double hi = *std::max_element(v.begin(), v.end());
        if (spec.bounds) {
          if (lo < spec.bounds->first || hi > spec.bounds->second) {
            throw SchemaError("column '" + spec.column + "' has values outside its declared bounds");
          }
          std::tie(lo, hi) = *spec.bounds;
        }
        if (hi == lo) {
          data.warnings.push_back("column '" + spec.column +
                                  "' is constant; its normalized values are all zero");
        }
        data.attributes.push_back({spec.column, spec.column, AttributeKind::kNumeric, lo, hi});
        raw.push_back(std::move(v));
        break;
      }
      case AttributeKind::kBinary: {
        std::vector<double> v(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) {
          const std::string cell = Trim(table.rows[kept[i]][col]);
          if (cell == spec.positive) {
            v[i] = 1.0;
          } else if (cell == spec.negative) {
            v[i] = 0.0;
          } else {
            throw ParseError(Where(table, kept[i], spec.column) + ": value '" + cell +
                             "' is neither '" + spec.positive + "' nor '" + spec.negative + "'");
          }
        }
        data.attributes.push_back({spec.column, spec.column, AttributeKind::kBinary, 0.0, 1.0});
        raw.push_back(std::move(v));
        break;
      }
      case AttributeKind::kCategorical: {
        std::vector<std::string> indicators;
        for (const std::string& level : spec.levels) {
          if (level != spec.reference) indicators.push_back(level);
        }
        std::vector<std::vector<double>> block(indicators.size(),
                                               std::vector<double>(kept.size(), 0.0));
        for (std::size_t i = 0; i < kept.size(); ++i) {
          const std::string cell = Trim(table.rows[kept[i]][col]);
          if (std::find(spec.levels.begin(), spec.levels.end(), cell) == spec.levels.end()) {
            throw ParseError(Where(table, kept[i], spec.column) + ": unseen category '" +
                             cell + "'");
          }
          for (std::size_t k = 0; k < indicators.size(); ++k) {
            if (cell == indicators[k]) block[k][i] = 1.0;
          }
        }
        for (std::size_t k = 0; k < indicators.size(); ++k) {
          data.attributes.push_back({spec.column + "=" + indicators[k], spec.column,
                                     AttributeKind::kBinary, 0.0, 1.0});
          raw.push_back(std::move(block[k]));
        }
        break;
      }
    }
  }

  data.values = Matrix(kept.size(), raw.size());
  for (std::size_t a = 0; a < raw.size(); ++a) {
    const double lo = data.attributes[a].lo;
    const double span = data.attributes[a].hi - lo;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      data.values(i, a) = span > 0.0 ? (raw[a][i] - lo) / span : 0.0;
    }
  }

  if (data.ranking) {
    const std::size_t col = table.Column(schema.score_column);
    for (std::size_t r : kept) {
      const auto number = ParseNumber(table.rows[r][col]);
      if (!number) {
        throw ParseError(Where(table, r, schema.score_column) + ": cannot parse score '" +
                         table.rows[r][col] + "'");
      }
      data.targets.push_back(*number);
    }
  } else {
    const std::size_t col = table.Column(schema.label_column);
    for (std::size_t r : kept) {
      data.targets.push_back(Trim(table.rows[r][col]) == schema.label_positive ? 1.0 : 0.0);
    }
  }
  return data;
}

TabularDataset LoadDataset(const std::string& path, const DatasetSchema& schema) {
  return EncodeTable(ReadCsv(path, schema.delimiter), schema);
}

AttributePartition PartitionAttributes(const std::vector<std::string>& names,
                                       const std::vector<std::string>& linear) {
  if (linear.empty()) {
    throw ConfigError("the linear component needs at least one attribute");
  }
  AttributePartition out;
  for (std::size_t a = 0; a < names.size(); ++a) out.all_attrs.push_back(a);
  for (const std::string& name : linear) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw SchemaError("unknown linear attribute '" + name + "'");
    const auto idx = static_cast<std::size_t>(it - names.begin());
    if (std::find(out.linear_attrs.begin(), out.linear_attrs.end(), idx) !=
        out.linear_attrs.end()) {
      throw SchemaError("linear attribute '" + name + "' listed twice");
    }
    out.linear_attrs.push_back(idx);
  }
  std::sort(out.linear_attrs.begin(), out.linear_attrs.end());
  return out;
}

ModelSpec ModelSpecFor(const TabularDataset& data, const std::vector<std::string>& linear,
                       int degree) {
  ModelSpec spec;
  spec.attribute_names = data.names();
  const AttributePartition partition =
      PartitionAttributes(spec.attribute_names, linear.empty() ? spec.attribute_names : linear);
  spec.linear_attrs = partition.linear_attrs;
  for (const EncodedAttribute& a : data.attributes) {
    spec.network_degrees.push_back(a.kind == AttributeKind::kNumeric ? degree : 1);
  }
  for (std::size_t a : spec.linear_attrs) spec.linear_degrees.push_back(spec.network_degrees[a]);
  spec.Validate();
  return spec;
}

double Denormalize(double x, const EncodedAttribute& attribute) {
  return attribute.lo + x * (attribute.hi - attribute.lo);
}

std::vector<double> Denormalize(const std::vector<double>& xs, const EncodedAttribute& attribute) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(Denormalize(x, attribute));
  return out;
}

}  // namespace mcda
