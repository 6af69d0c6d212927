#ifndef MCDA_METRICS_H_
#define MCDA_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mcda {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocResult {
  double auc = 0.0;
  std::vector<RocPoint> curve;  // (0,0) to (1,1), one point per distinct score
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

// Mann-Whitney AUC: (concordant + tied / 2) / (n_pos n_neg), counted exactly
// in integers. Labels are 0 or 1. Throws EvaluationError when a class is
// missing or sizes differ.
RocResult Auc(std::span<const double> scores, std::span<const double> labels);

// Seeded shuffle of 0..n-1, first round(fraction * n) indices for training.
// Throws ConfigError unless 0 < fraction < 1.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
SplitIndices Split(std::size_t n, double fraction, std::uint64_t seed);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample deviation, 0 for a single value
};
MeanStd Summarize(std::span<const double> values);

// Pearson correlation; 0 when either input is constant.
double Pearson(std::span<const double> a, std::span<const double> b);

}  // namespace mcda

#endif  // MCDA_METRICS_H_
