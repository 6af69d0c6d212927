#ifndef MCDA_ERRORS_H_
#define MCDA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mcda {

// Invalid user-supplied configuration (ranges, degrees, hyper-parameters).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Shape or schema mismatch between inputs and a model/basis.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A model whose weights cannot be normalized or interpreted.
class DegenerateModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Metric computation on inputs that do not define the metric.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// API misuse, e.g. a forward cache reused after the network changed.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Training produced a non-finite loss.
class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (CSV, schema, artifact).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mcda

#endif  // MCDA_ERRORS_H_
