#include "mcda/ranking.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "mcda/errors.h"

namespace mcda {

std::size_t NumPairs(std::size_t num_alternatives) {
  return num_alternatives < 2 ? 0 : num_alternatives * (num_alternatives - 1) / 2;
}

PairGenerator::PairGenerator(std::span<const double> scores) : scores_(scores) {}

bool PairGenerator::Next(RankingPair& pair) {
  if (scores_.size() < 2 || i_ + 1 >= scores_.size()) return false;
  pair.i = i_;
  pair.k = k_;
  pair.label = scores_[i_] - scores_[k_] >= 0.0 ? 1.0 : 0.0;
  if (++k_ == scores_.size()) {
    ++i_;
    k_ = i_ + 1;
  }
  return true;
}

void PairGenerator::Reset() {
  i_ = 0;
  k_ = 1;
}

std::vector<RankingPair> BuildPairs(std::span<const double> scores) {
  if (scores.size() < 2) {
    throw ConfigError("ranking needs at least two alternatives, got " +
                      std::to_string(scores.size()));
  }
  std::vector<RankingPair> pairs;
  pairs.reserve(NumPairs(scores.size()));
  PairGenerator gen(scores);
  RankingPair pair;
  while (gen.Next(pair)) pairs.push_back(pair);
  return pairs;
}

TrainingSet PairTrainingSet(Matrix items, std::span<const double> scores) {
  if (scores.size() != items.rows()) {
    throw SchemaError("have " + std::to_string(scores.size()) + " scores for " +
                      std::to_string(items.rows()) + " alternatives");
  }
  TrainingSet set;
  set.items = std::move(items);
  for (const RankingPair& p : BuildPairs(scores)) set.examples.push_back({p.i, p.k, p.label});
  return set;
}

std::vector<double> PairFeatures(const Matrix& items, const RankingPair& pair,
                                 const BasisSpec& spec) {
  return PairwiseDiff(items.row(pair.i), items.row(pair.k), spec);
}

void PreferenceThresholds::Validate() const {
  if (!(0.0 <= eta1 && eta1 <= eta2 && eta2 <= 1.0)) {
    throw ConfigError("thresholds must satisfy 0 <= eta1 <= eta2 <= 1, got eta1=" +
                      std::to_string(eta1) + " eta2=" + std::to_string(eta2));
  }
}

std::string_view PreferenceName(Preference preference) {
  switch (preference) {
    case Preference::kPreferred:
      return "strictly-preferred";
    case Preference::kIndifferent:
      return "indifferent";
    case Preference::kWorse:
      return "strictly-worse";
  }
  return "unknown";
}

double PairProbability(const HybridModel& model, std::span<const double> x_i,
                       std::span<const double> x_k) {
  return Sigmoid(model.GlobalScore(x_i) - model.GlobalScore(x_k));
}

Preference Classify(double probability, const PreferenceThresholds& thresholds) {
  thresholds.Validate();
  if (probability >= thresholds.eta2) return Preference::kPreferred;
  if (probability <= thresholds.eta1) return Preference::kWorse;
  return Preference::kIndifferent;
}

Preference Compare(const HybridModel& model, std::span<const double> x_i,
                   std::span<const double> x_k, const PreferenceThresholds& thresholds) {
  return Classify(PairProbability(model, x_i, x_k), thresholds);
}

HybridModel NormalizeModel(const HybridModel& model) {
  const std::vector<double>& w = model.additive().weights();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(total > 0.0)) {
    throw DegenerateModelError("cannot normalize a model whose weights sum to zero");
  }
  HybridModel out = model;
  out.mutable_additive().mutable_weights() = model.additive().NormalizedWeights();
  out.mutable_mlp().ScaleHead(1.0 / total);
  return out;
}

PreferenceThresholds TransformedThresholds(const PreferenceThresholds& thresholds,
                                           double probability,
                                           double normalized_probability) {
  thresholds.Validate();
  if (!(probability > 0.0)) {
    throw EvaluationError("threshold transform needs a positive pair probability");
  }
  const double ratio = normalized_probability / probability;
  return {thresholds.eta1 * ratio, thresholds.eta2 * ratio};
}

std::vector<RankedAlternative> Rank(const HybridModel& model, const Matrix& alternatives) {
  const std::vector<double>& w = model.additive().weights();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double scale = total > 0.0 ? 1.0 / total : 1.0;

  std::vector<RankedAlternative> ranked(alternatives.rows());
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    ranked[r].index = r;
    ranked[r].score = model.GlobalScore(alternatives.row(r));
    ranked[r].normalized_score = ranked[r].score * scale;
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedAlternative& a, const RankedAlternative& b) {
                     return a.score > b.score;
                   });
  for (std::size_t r = 0; r < ranked.size(); ++r) ranked[r].rank = r + 1;
  return ranked;
}

}  // namespace mcda
