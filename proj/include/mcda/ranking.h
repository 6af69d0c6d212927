#ifndef MCDA_RANKING_H_
#define MCDA_RANKING_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mcda/basis.h"
#include "mcda/hybrid.h"
#include "mcda/numeric.h"
#include "mcda/train.h"

namespace mcda {

// Comparison of alternatives i < k; label is 1 when U(x_i) - U(x_k) >= 0.
struct RankingPair {
  std::size_t i = 0;
  std::size_t k = 0;
  double label = 0.0;
};

// N (N - 1) / 2.
std::size_t NumPairs(std::size_t num_alternatives);

// Walks the pairs (0,1), (0,2), ..., (N-2,N-1) without materializing them.
class PairGenerator {
 public:
  explicit PairGenerator(std::span<const double> scores);

  // Writes the next pair; false once exhausted.
  bool Next(RankingPair& pair);
  void Reset();

 private:
  std::span<const double> scores_;
  std::size_t i_ = 0;
  std::size_t k_ = 1;
};

// Every pair in generator order. Throws ConfigError for fewer than two scores.
std::vector<RankingPair> BuildPairs(std::span<const double> scores);

// Pairwise examples over `items` in generator order.
TrainingSet PairTrainingSet(Matrix items, std::span<const double> scores);

// Difference features Phi(x_i) - Phi(x_k) of a pair.
std::vector<double> PairFeatures(const Matrix& items, const RankingPair& pair,
                                 const BasisSpec& spec);

struct PreferenceThresholds {
  double eta1 = 0.45;
  double eta2 = 0.55;

  // Throws ConfigError unless 0 <= eta1 <= eta2 <= 1.
  void Validate() const;
};

enum class Preference { kPreferred, kIndifferent, kWorse };

std::string_view PreferenceName(Preference preference);

// sigmoid(U(x_i) - U(x_k)).
double PairProbability(const HybridModel& model, std::span<const double> x_i,
                       std::span<const double> x_k);

// Preferred when p >= eta2, worse when p <= eta1, indifferent in between.
Preference Classify(double probability, const PreferenceThresholds& thresholds);

Preference Compare(const HybridModel& model, std::span<const double> x_i,
                   std::span<const double> x_k, const PreferenceThresholds& thresholds);

// Weights divided by their sum and the network head by the same sum, so that
// U'(a) - U'(b) = (U(a) - U(b)) / sum(w). Throws DegenerateModelError when
// the weights sum to zero.
HybridModel NormalizeModel(const HybridModel& model);

// Thresholds for comparisons made with a normalized model: each eta scaled by
// p' / p, where p and p' are the pair probabilities before and after
// normalization.
PreferenceThresholds TransformedThresholds(const PreferenceThresholds& thresholds,
                                           double probability,
                                           double normalized_probability);

struct RankedAlternative {
  std::size_t rank = 0;  // 1-based
  std::size_t index = 0;
  double score = 0.0;
  double normalized_score = 0.0;
};

// Alternatives by descending U, ties kept in input order. The normalized
// score is U / sum(w) (the score of NormalizeModel(model)), or U itself when
// all weights are zero.
std::vector<RankedAlternative> Rank(const HybridModel& model, const Matrix& alternatives);

}  // namespace mcda

#endif  // MCDA_RANKING_H_
