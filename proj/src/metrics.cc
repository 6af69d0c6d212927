#include "mcda/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mcda/errors.h"
#include "mcda/numeric.h"

namespace mcda {

RocResult Auc(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size()) {
    throw EvaluationError("AUC needs one label per score (" + std::to_string(scores.size()) +
                          " scores, " + std::to_string(labels.size()) + " labels)");
  }
  RocResult result;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1.0) {
      ++result.n_pos;
    } else if (labels[i] == 0.0) {
      ++result.n_neg;
    } else {
      throw EvaluationError("label " + std::to_string(i) + " is not 0 or 1");
    }
    if (!std::isfinite(scores[i])) {
      throw EvaluationError("score " + std::to_string(i) + " is not finite");
    }
  }
  if (result.n_pos == 0 || result.n_neg == 0) {
    throw EvaluationError("AUC is undefined when only one class is present");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  // Walk groups of equal score from the top; every positive in a group beats
  // the negatives seen below it and ties with the negatives inside it.
  unsigned __int128 twice_concordant = 0;
  std::uint64_t neg_above = 0;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  const double pos_total = static_cast<double>(result.n_pos);
  const double neg_total = static_cast<double>(result.n_neg);
  result.curve.push_back({0.0, 0.0});
  for (std::size_t g = 0; g < order.size();) {
    std::size_t end = g;
    std::uint64_t group_pos = 0;
    std::uint64_t group_neg = 0;
    while (end < order.size() && scores[order[end]] == scores[order[g]]) {
      (labels[order[end]] == 1.0 ? group_pos : group_neg) += 1;
      ++end;
    }
    const std::uint64_t neg_below = result.n_neg - neg_above - group_neg;
    twice_concordant += static_cast<unsigned __int128>(group_pos) * (2 * neg_below + group_neg);
    neg_above += group_neg;
    tp += group_pos;
    fp += group_neg;
    result.curve.push_back({static_cast<double>(fp) / neg_total,
                            static_cast<double>(tp) / pos_total});
    g = end;
  }
  const unsigned __int128 denominator =
      2 * static_cast<unsigned __int128>(result.n_pos) * result.n_neg;
  result.auc = static_cast<double>(twice_concordant) / static_cast<double>(denominator);
  return result;
}

SplitIndices Split(std::size_t n, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ConfigError("split fraction must lie strictly between 0 and 1, got " +
                      std::to_string(fraction));
  }
  Rng rng(seed);
  std::vector<std::size_t> order = Permutation(n, rng);
  const auto cut = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  SplitIndices out;
  out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
  out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());
  return out;
}

MeanStd Summarize(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

double Pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw EvaluationError("correlation needs two equal-length, non-empty series");
  }
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace mcda
